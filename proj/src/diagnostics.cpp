#include "spdml/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spdml/random.hpp"

namespace spdml {

GradCheckReport gradient_check(const GradCheckConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("gradcheck: trials must be positive");
  if (cfg.dim < 1) throw std::invalid_argument("gradcheck: dim must be positive");
  if (cfg.n < 2) throw std::invalid_argument("gradcheck: n must be at least 2");
  if (!(cfg.step > 0.0)) throw std::invalid_argument("gradcheck: step must be positive");

  GradCheckReport report;
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(t));
    const SpdMatrix g = random_spd(rng, cfg.dim, 0.5);
    std::vector<SpdMatrix> samples;
    std::vector<int> labels;
    for (std::size_t i = 0; i < cfg.n; ++i) {
      samples.push_back(random_spd(rng, cfg.dim, 0.5));
      labels.push_back(i % 2 == 0 ? 1 : -1);
    }
    const LabeledSpdDataset ds(std::move(samples), std::move(labels));
    SymMatrix h = random_sym(rng, cfg.dim);
    h *= 1.0 / frob_norm(h);

    const KtaProblem problem(ds, cfg.kta);
    const KtaGradient grad = problem.gradient(g);
    GradCheckTrial trial;
    trial.analytic = frob_inner(grad.euclid_grad, h);
    const SpdMatrix plus = assert_spd(g.sym() + cfg.step * h, 0.0);
    const SpdMatrix minus = assert_spd(g.sym() - cfg.step * h, 0.0);
    trial.numeric = (problem.value(plus) - problem.value(minus)) / (2.0 * cfg.step);
    const double scale = std::max({std::abs(trial.analytic), std::abs(trial.numeric), 1e-300});
    trial.rel_error = std::abs(trial.analytic - trial.numeric) / scale;
    report.max_rel_error = std::max(report.max_rel_error, trial.rel_error);
    report.trials.push_back(trial);
  }
  report.passed = report.max_rel_error < cfg.tol;
  return report;
}

}  // namespace spdml
