#pragma once

// Geodesic gradient ascent on the SPD cone for max f(G) subject to
// dist_airm(G0, G) <= epsilon.

#include <string_view>
#include <vector>

#include "spdml/alignment.hpp"
#include "spdml/symmat.hpp"

namespace spdml {

struct OptimizerConfig {
  double epsilon = 10.0;          // radius of the geodesic ball around G0
  int max_iter = 200;
  double grad_tol = 1e-6;         // stop when ||grad||_G < grad_tol * (1 + |f|)
  double f_rel_tol = 1e-9;        // ... or relative gain below this 3 times running
  double armijo_c = 1e-4;
  double backtrack_beta = 0.5;
  int max_backtracks = 30;
  double init_displacement = 0.1; // geodesic length of the very first trial step
  KtaOptions kta{};

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct TraceRecord {
  int iter = 0;
  double f = 0.0;
  double grad_norm = 0.0;   // ||grad f(G_t)||_{G_t}
  double step = 0.0;        // accepted eta
  double dist_to_g0 = 0.0;  // dist_airm(G0, G_{t+1})
  int backtracks = 0;
};

enum class Termination { ZeroIterations, GradientTolerance, RelativeTolerance, MaxIterations, LineSearchFailed };

std::string_view to_string(Termination t);

struct OptTrace {
  std::vector<TraceRecord> records;
  Termination termination = Termination::ZeroIterations;
  bool line_search_failed = false;  // warning flag; the best iterate is still returned
  std::size_t gradient_evaluations = 0;
  std::size_t objective_evaluations = 0;
  std::size_t dlog_evaluations = 0;
};

struct LearnResult {
  SpdMatrix g;
  double f = 0.0;
  OptTrace trace;
};

/// G^{1/2} expm(eta G^{-1/2} grad G^{-1/2}) G^{1/2}
SpdMatrix geodesic_step(const SpdMatrix& g, const SymMatrix& grad, double eta);

/// Returns G when dist_airm(G0, G) <= eps, otherwise the point at distance
/// eps on the geodesic ray from G0 towards G.
SpdMatrix retract_to_ball(const SpdMatrix& g0, const SpdMatrix& g, double eps);

/// Maximizes the centered alignment starting at G0 with Armijo backtracking
/// along geodesics; every iterate is retracted into the eps-ball around G0.
LearnResult learn_metric(const LabeledSpdDataset& ds, const SpdMatrix& g0, const OptimizerConfig& cfg = {});

}  // namespace spdml
