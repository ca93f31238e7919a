#include "spdml/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spdml/geometry.hpp"

namespace spdml {

void OptimizerConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("optimizer: epsilon must be positive");
  if (max_iter < 0) throw std::invalid_argument("optimizer: max_iter must be non-negative");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("optimizer: grad_tol must be positive");
  if (!(f_rel_tol > 0.0)) throw std::invalid_argument("optimizer: f_rel_tol must be positive");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw std::invalid_argument("optimizer: armijo_c must be in (0, 1)");
  if (!(backtrack_beta > 0.0 && backtrack_beta < 1.0)) {
    throw std::invalid_argument("optimizer: backtrack_beta must be in (0, 1)");
  }
  if (max_backtracks < 1) throw std::invalid_argument("optimizer: max_backtracks must be positive");
  if (!(init_displacement > 0.0)) throw std::invalid_argument("optimizer: init_displacement must be positive");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ZeroIterations:
      return "zero-iterations";
    case Termination::GradientTolerance:
      return "gradient-tolerance";
    case Termination::RelativeTolerance:
      return "relative-tolerance";
    case Termination::MaxIterations:
      return "max-iterations";
    case Termination::LineSearchFailed:
      return "line-search-failed";
  }
  return "unknown";
}

SpdMatrix geodesic_step(const SpdMatrix& g, const SymMatrix& grad, double eta) {
  if (!(eta >= 0.0)) throw DomainError("geodesic_step: step size must be non-negative");
  return exp_map(g, eta * grad);
}

SpdMatrix retract_to_ball(const SpdMatrix& g0, const SpdMatrix& g, double eps) {
  if (!(eps > 0.0)) throw DomainError("retract_to_ball: radius must be positive");
  const double dist = dist_airm(g0, g);
  if (dist <= eps) return g;
  return exp_map(g0, (eps / dist) * log_map(g0, g));
}

LearnResult learn_metric(const LabeledSpdDataset& ds, const SpdMatrix& g0, const OptimizerConfig& cfg) {
  cfg.validate();
  require_same_dim(ds.dim(), g0.dim(), "learn_metric");
  const KtaProblem problem(ds, cfg.kta);

  LearnResult res{g0, 0.0, {}};
  OptTrace& trace = res.trace;
  res.f = problem.value(g0);
  ++trace.objective_evaluations;
  if (cfg.max_iter == 0) {
    trace.termination = Termination::ZeroIterations;
    return res;
  }

  KtaGradient grad = problem.gradient(res.g);
  ++trace.gradient_evaluations;
  trace.dlog_evaluations += grad.dlog_evaluations;

  double prev_eta = 0.0;
  int slow_iters = 0;
  trace.termination = Termination::MaxIterations;
  for (int it = 0; it < cfg.max_iter; ++it) {
    const double gnorm = tangent_norm(res.g, grad.riem_grad);
    if (gnorm < cfg.grad_tol * (1.0 + std::abs(res.f))) {
      trace.termination = Termination::GradientTolerance;
      break;
    }
    const double gnorm2 = gnorm * gnorm;
    double eta = prev_eta > 0.0 ? 2.0 * prev_eta : cfg.init_displacement / gnorm;
    // Cap the trial move at one ball radius: longer moves are retracted anyway
    // and would push the trial point towards numerically singular matrices.
    eta = std::min(eta, cfg.epsilon / gnorm);

    bool accepted = false;
    int backtracks = 0;
    SpdMatrix candidate = res.g;
    double f_candidate = res.f;
    for (; backtracks <= cfg.max_backtracks; ++backtracks) {
      // A trial point that cannot be represented or evaluated counts as a
      // rejected step.
      try {
        candidate = retract_to_ball(g0, geodesic_step(res.g, grad.riem_grad, eta), cfg.epsilon);
        f_candidate = problem.value(candidate);
        ++trace.objective_evaluations;
      } catch (const NotPositiveDefinite&) {
        f_candidate = -std::numeric_limits<double>::infinity();
      } catch (const MatrixOverflow&) {
        f_candidate = -std::numeric_limits<double>::infinity();
      } catch (const DegenerateGram&) {
        f_candidate = -std::numeric_limits<double>::infinity();
      }
      if (f_candidate >= res.f + cfg.armijo_c * eta * gnorm2) {
        accepted = true;
        break;
      }
      if (backtracks < cfg.max_backtracks) eta *= cfg.backtrack_beta;
    }
    if (!accepted) {
      trace.line_search_failed = true;
      trace.termination = Termination::LineSearchFailed;
      break;
    }

    const double gain = (f_candidate - res.f) / std::max(std::abs(res.f), std::numeric_limits<double>::min());
    const double dist = dist_airm(g0, candidate);
    if (!(dist <= cfg.epsilon + 1e-8)) {
      throw std::logic_error("learn_metric: iterate left the feasible ball");
    }
    res.g = std::move(candidate);
    res.f = f_candidate;
    trace.records.push_back({it, res.f, gnorm, eta, dist, backtracks});
    prev_eta = eta;

    grad = problem.gradient(res.g);
    ++trace.gradient_evaluations;
    trace.dlog_evaluations += grad.dlog_evaluations;

    slow_iters = gain < cfg.f_rel_tol ? slow_iters + 1 : 0;
    if (slow_iters >= 3) {
      trace.termination = Termination::RelativeTolerance;
      break;
    }
  }
  return res;
}

}  // namespace spdml
