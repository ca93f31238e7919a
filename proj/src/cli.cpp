#include "spdml/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "spdml/dataset_io.hpp"
#include "spdml/diagnostics.hpp"
#include "spdml/experiment.hpp"
#include "spdml/geometry.hpp"
#include "spdml/learnkit.hpp"
#include "spdml/optimize.hpp"
#include "spdml/parallel.hpp"

namespace spdml::cli {
namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGradCheck = 3;

// Human-readable numbers: 6 significant digits.
std::string sig6(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  return f;
}

// "identity" | "mean" | "file:<path>"
MetricSpec parse_metric(const std::string& metric, const std::string& ref) {
  if (metric == "euclid") return MetricSpec::euclid();
  if (metric == "airm") return MetricSpec::airm();
  if (metric != "logeuclid") throw UsageError("unknown metric '" + metric + "'");
  if (ref == "identity") return MetricSpec::logeuclid_identity();
  if (ref == "mean") return MetricSpec::logeuclid_mean();
  if (ref.rfind("file:", 0) == 0) return MetricSpec::logeuclid(matrix_read(ref.substr(5)));
  throw UsageError("unknown reference '" + ref + "' (expected identity, mean or file:<path>)");
}

SpdMatrix initial_point(const std::string& init, const LabeledSpdDataset& ds) {
  if (init == "mean") return karcher_mean(ds.samples()).mean;
  if (init == "identity") return SpdMatrix::identity(ds.dim());
  if (init.rfind("file:", 0) == 0) return matrix_read(init.substr(5));
  throw UsageError("unknown initial point '" + init + "' (expected mean, identity or file:<path>)");
}

NoiseBasis parse_basis(const std::string& s) {
  if (s == "fixed") return NoiseBasis::Fixed;
  if (s == "per-sample") return NoiseBasis::PerSample;
  throw UsageError("unknown noise basis '" + s + "'");
}

void write_trace_csv(std::ostream& os, const OptTrace& trace) {
  os << "iter,f,grad_norm,step,dist_to_G0,backtracks\n";
  for (const auto& r : trace.records) {
    os << r.iter << ',' << format_double(r.f) << ',' << format_double(r.grad_norm) << ',' << format_double(r.step)
       << ',' << format_double(r.dist_to_g0) << ',' << r.backtracks << '\n';
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learn and evaluate parameterized LogEuclidean metrics on SPD matrices", "spdml"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "Cap on worker threads (0 keeps the runtime default)")
      ->check(CLI::NonNegativeNumber);

  // toygen
  auto* toygen = app.add_subcommand("toygen", "Generate a synthetic two-class covariance dataset");
  ToyConfig toy;
  std::string toy_train_path, toy_test_path, toy_basis = "fixed";
  toygen->add_option("--r", toy.r, "Half of the matrix size")->capture_default_str();
  toygen->add_option("--train", toy.n_train, "Training samples (even)")->capture_default_str();
  toygen->add_option("--test", toy.n_test, "Test samples (even)")->capture_default_str();
  toygen->add_option("--mu-lo", toy.mu_lo)->capture_default_str();
  toygen->add_option("--mu-hi", toy.mu_hi)->capture_default_str();
  toygen->add_option("--seed", toy.seed)->required();
  toygen->add_option("--noise-basis", toy_basis, "fixed or per-sample")->capture_default_str();
  toygen->add_flag("--spread-is-variance", toy.spread_is_variance, "Read the class spreads as variances");
  toygen->add_option("--out-train", toy_train_path)->required();
  toygen->add_option("--out-test", toy_test_path)->required();

  // mean
  auto* mean = app.add_subcommand("mean", "Riemannian (Karcher) mean of a dataset");
  std::string mean_in, mean_out;
  mean->add_option("--in", mean_in)->required()->check(CLI::ExistingFile);
  mean->add_option("--out", mean_out)->required();

  // whiten
  auto* whiten_cmd = app.add_subcommand("whiten", "Whiten a dataset by its Riemannian mean");
  std::string wh_in, wh_out, wh_mean_out;
  whiten_cmd->add_option("--in", wh_in)->required()->check(CLI::ExistingFile);
  whiten_cmd->add_option("--out", wh_out)->required();
  whiten_cmd->add_option("--mean-out", wh_mean_out, "Also write the mean used for whitening");

  // learn
  auto* learn = app.add_subcommand("learn", "Learn the LogEuclidean reference point by alignment ascent");
  OptimizerConfig opt;
  std::string learn_train, learn_init = "mean", learn_out, learn_trace;
  learn->add_option("--train", learn_train)->required()->check(CLI::ExistingFile);
  learn->add_option("--epsilon", opt.epsilon, "Radius of the geodesic ball around the start")->capture_default_str();
  learn->add_option("--init", learn_init, "mean, identity or file:<SPDM>")->capture_default_str();
  learn->add_option("--max-iters", opt.max_iter)->capture_default_str();
  learn->add_option("--out", learn_out, "Write the learned matrix here");
  learn->add_option("--trace", learn_trace, "Write the iteration trace as CSV");

  // eval
  auto* eval = app.add_subcommand("eval", "1-NN accuracy of a metric");
  std::string ev_train, ev_test, ev_metric = "logeuclid", ev_ref = "identity";
  eval->add_option("--train", ev_train)->required()->check(CLI::ExistingFile);
  eval->add_option("--test", ev_test)->required()->check(CLI::ExistingFile);
  eval->add_option("--metric", ev_metric, "euclid, airm or logeuclid")->capture_default_str();
  eval->add_option("--ref", ev_ref, "identity, mean or file:<SPDM>")->capture_default_str();

  // distmat
  auto* distmat = app.add_subcommand("distmat", "Pairwise distance matrix as CSV");
  std::string dm_data, dm_with, dm_metric = "logeuclid", dm_ref = "identity", dm_out;
  distmat->add_option("--data", dm_data, "Column samples (and the mean reference)")
      ->required()
      ->check(CLI::ExistingFile);
  distmat->add_option("--with", dm_with, "Row samples (defaults to --data)")->check(CLI::ExistingFile);
  distmat->add_option("--metric", dm_metric)->capture_default_str();
  distmat->add_option("--ref", dm_ref)->capture_default_str();
  distmat->add_option("--out", dm_out, "Output file (defaults to stdout)");

  // gradcheck
  auto* gradcheck = app.add_subcommand("gradcheck", "Compare the alignment gradient with finite differences");
  GradCheckConfig gc;
  gradcheck->add_option("--trials", gc.trials)->capture_default_str();
  gradcheck->add_option("--dim", gc.dim)->capture_default_str();
  gradcheck->add_option("--n", gc.n)->capture_default_str();
  gradcheck->add_option("--seed", gc.seed)->required();

  // bench-toy
  auto* bench = app.add_subcommand("bench-toy", "Toy benchmark: mean 1-NN accuracy per matrix size");
  ToyBenchmarkConfig bc;
  std::string bench_format = "md";
  bool bench_progress = false;
  bench->add_option("--sizes", bc.sizes, "Comma-separated even matrix sizes")->delimiter(',')->capture_default_str();
  bench->add_option("--reps", bc.reps)->capture_default_str();
  bench->add_option("--seed", bc.seed)->required();
  bench->add_option("--format", bench_format, "md or csv")->capture_default_str();
  bench->add_option("--mu-lo", bc.toy.mu_lo)->capture_default_str();
  bench->add_option("--mu-hi", bc.toy.mu_hi)->capture_default_str();
  bench->add_option("--train", bc.toy.n_train)->capture_default_str();
  bench->add_option("--test", bc.toy.n_test)->capture_default_str();
  bench->add_flag("--progress", bench_progress, "Report each repetition on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    set_num_threads(threads);

    if (*toygen) {
      toy.noise_basis = parse_basis(toy_basis);
      const ToyData data = toy_generate(toy);
      dataset_write(data.train, toy_train_path);
      dataset_write(data.test, toy_test_path);
      return 0;
    }
    if (*mean) {
      const LabeledSpdDataset ds = dataset_read(mean_in);
      const KarcherMean km = karcher_mean(ds.samples());
      matrix_write(km.mean, mean_out);
      out << "iterations " << km.iterations << "\nresidual " << sig6(km.residual) << '\n';
      return 0;
    }
    if (*whiten_cmd) {
      const Whitened w = whiten(dataset_read(wh_in));
      dataset_write(w.data, wh_out);
      if (!wh_mean_out.empty()) matrix_write(w.mean, wh_mean_out);
      return 0;
    }
    if (*learn) {
      const LabeledSpdDataset ds = dataset_read(learn_train);
      const SpdMatrix g0 = initial_point(learn_init, ds);
      const LearnResult res = learn_metric(ds, g0, opt);
      if (!learn_out.empty()) matrix_write(res.g, learn_out);
      if (!learn_trace.empty()) {
        std::ofstream f = open_out(learn_trace);
        write_trace_csv(f, res.trace);
      }
      const double f0 = kta_objective(g0, ds);
      out << "f_initial " << sig6(f0) << "\nf_learned " << sig6(res.f) << "\niterations "
          << res.trace.records.size() << "\ndist_to_G0 " << sig6(dist_airm(g0, res.g)) << "\ntermination "
          << to_string(res.trace.termination) << '\n';
      if (res.trace.line_search_failed) err << "spdml: warning: line search failed; returning the best iterate\n";
      return 0;
    }
    if (*eval) {
      const MetricSpec m = parse_metric(ev_metric, ev_ref);
      const double acc = evaluate_accuracy(dataset_read(ev_train), dataset_read(ev_test), m);
      out << sig6(acc) << '\n';
      return 0;
    }
    if (*distmat) {
      const LabeledSpdDataset data = dataset_read(dm_data);
      const MetricSpec m = parse_metric(dm_metric, dm_ref);
      const NearestNeighbor nn(data, m);
      const std::optional<LabeledSpdDataset> other =
          dm_with.empty() ? std::nullopt : std::optional<LabeledSpdDataset>(dataset_read(dm_with));
      const LabeledSpdDataset& rows = other ? *other : data;
      std::ofstream file;
      if (!dm_out.empty()) file = open_out(dm_out);
      std::ostream& os = dm_out.empty() ? out : file;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < data.size(); ++j) {
          if (j) os << ',';
          os << format_double(nn.distance(j, rows.sample(i)));
        }
        os << '\n';
      }
      return 0;
    }
    if (*gradcheck) {
      const GradCheckReport rep = gradient_check(gc);
      for (std::size_t t = 0; t < rep.trials.size(); ++t) {
        const auto& tr = rep.trials[t];
        out << "trial " << t << " analytic " << sig6(tr.analytic) << " numeric " << sig6(tr.numeric) << " rel_error "
            << sig6(tr.rel_error) << '\n';
      }
      out << "max_rel_error " << sig6(rep.max_rel_error) << ' ' << (rep.passed ? "PASS" : "FAIL") << '\n';
      if (!rep.passed) {
        err << "spdml: gradcheck: relative error " << sig6(rep.max_rel_error) << " exceeds " << sig6(gc.tol) << '\n';
        return kExitGradCheck;
      }
      return 0;
    }
    if (*bench) {
      if (bench_format != "md" && bench_format != "csv") throw UsageError("unknown format '" + bench_format + "'");
      ToyProgress progress;
      if (bench_progress) {
        progress = [&err](int size, int rep, const ToyRun& run) {
          err << "size " << size << " rep " << rep << " learned " << sig6(run.accuracy.le_learned) << " euclid "
              << sig6(run.accuracy.euclid) << '\n';
        };
      }
      out << format_toy_table(run_toy_benchmark(bc, progress), bench_format);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "spdml: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "spdml: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "spdml: error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  for (const auto& a : args) argv.push_back(a.c_str());
  argv.push_back(nullptr);
  return run(static_cast<int>(args.size()), argv.data(), out, err);
}

}  // namespace spdml::cli
