#include "spdml/experiment.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "spdml/dataset_io.hpp"
#include "spdml/geometry.hpp"
#include "spdml/random.hpp"

namespace spdml {

ToyRun run_toy_once(const ToyConfig& toy, const OptimizerConfig& opt, Execution exec) {
  const ToyData data = toy_generate(toy);
  KarcherOptions kopts;
  kopts.exec = exec;
  const SpdMatrix g0 = karcher_mean(data.train.samples(), kopts).mean;

  OptimizerConfig o = opt;
  o.kta.exec = exec;
  ToyRun run{{}, 0.0, 0.0, learn_metric(data.train, g0, o)};
  run.f_initial = kta_objective(g0, data.train);
  run.f_learned = run.learned.f;

  run.accuracy.le_identity = evaluate_accuracy(data.train, data.test, MetricSpec::logeuclid_identity(), exec);
  run.accuracy.le_mean = evaluate_accuracy(data.train, data.test, MetricSpec::logeuclid(g0), exec);
  run.accuracy.le_learned = evaluate_accuracy(data.train, data.test, MetricSpec::logeuclid(run.learned.g), exec);
  run.accuracy.airm = evaluate_accuracy(data.train, data.test, MetricSpec::airm(), exec);
  run.accuracy.euclid = evaluate_accuracy(data.train, data.test, MetricSpec::euclid(), exec);
  return run;
}

ToyAccuracies ToyBenchmarkRow::mean() const {
  ToyAccuracies m;
  if (runs.empty()) return m;
  for (const ToyAccuracies& a : runs) {
    m.le_identity += a.le_identity;
    m.le_mean += a.le_mean;
    m.le_learned += a.le_learned;
    m.airm += a.airm;
    m.euclid += a.euclid;
  }
  const double k = static_cast<double>(runs.size());
  m.le_identity /= k;
  m.le_mean /= k;
  m.le_learned /= k;
  m.airm /= k;
  m.euclid /= k;
  return m;
}

std::uint64_t toy_rep_seed(std::uint64_t seed, int size, int rep) {
  const std::uint64_t key = (static_cast<std::uint64_t>(size) << 32) | static_cast<std::uint32_t>(rep);
  return splitmix64(seed ^ splitmix64(key));
}

std::vector<ToyBenchmarkRow> run_toy_benchmark(const ToyBenchmarkConfig& cfg, const ToyProgress& progress) {
  if (cfg.reps < 1) throw std::invalid_argument("bench: reps must be positive");
  std::vector<ToyBenchmarkRow> rows;
  for (int size : cfg.sizes) {
    if (size < 2 || size % 2 != 0) throw std::invalid_argument("bench: sizes must be even and >= 2");
    ToyBenchmarkRow row;
    row.size = size;
    for (int rep = 0; rep < cfg.reps; ++rep) {
      ToyConfig toy = cfg.toy;
      toy.r = size / 2;
      toy.seed = toy_rep_seed(cfg.seed, size, rep);
      ToyRun run = run_toy_once(toy, cfg.opt, cfg.exec);
      if (progress) progress(size, rep, run);
      row.runs.push_back(run.accuracy);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {
std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * v);
  return buf;
}
}  // namespace

std::string format_toy_table(const std::vector<ToyBenchmarkRow>& rows, const std::string& format) {
  std::ostringstream os;
  if (format == "md") {
    os << "| size | LE-identity | LE-mean | LE-learned | AIRM | Euclid |\n";
    os << "|---|---|---|---|---|---|\n";
    for (const auto& row : rows) {
      const ToyAccuracies m = row.mean();
      os << "| " << row.size << 'x' << row.size << " | " << pct(m.le_identity) << " | " << pct(m.le_mean) << " | "
         << pct(m.le_learned) << " | " << pct(m.airm) << " | " << pct(m.euclid) << " |\n";
    }
  } else if (format == "csv") {
    os << "size,le_identity,le_mean,le_learned,airm,euclid\n";
    for (const auto& row : rows) {
      const ToyAccuracies m = row.mean();
      os << row.size << ',' << format_double(m.le_identity) << ',' << format_double(m.le_mean) << ','
         << format_double(m.le_learned) << ',' << format_double(m.airm) << ',' << format_double(m.euclid) << '\n';
    }
  } else {
    throw std::invalid_argument("unknown table format '" + format + "' (expected md or csv)");
  }
  return os.str();
}

}  // namespace spdml
