#pragma once

// Finite-difference check of the alignment gradient on random problems.

#include <cstdint>
#include <vector>

#include "spdml/alignment.hpp"

namespace spdml {

struct GradCheckConfig {
  int trials = 20;
  Index dim = 3;
  std::size_t n = 6;
  std::uint64_t seed = 0;
  double step = 1e-5;
  double tol = 1e-5;
  KtaOptions kta{};
};

struct GradCheckTrial {
  double analytic = 0.0;   // <nabla f(G), H>_F
  double numeric = 0.0;    // (f(G + hH) - f(G - hH)) / 2h
  double rel_error = 0.0;  // |analytic - numeric| / max(|analytic|, |numeric|)
};

struct GradCheckReport {
  std::vector<GradCheckTrial> trials;
  double max_rel_error = 0.0;
  bool passed = false;
};

/// Each trial draws a random SPD G, a balanced random dataset and a
/// symmetric direction H with unit Frobenius norm from stream `trial` of
/// the seed, and compares the directional derivative with central
/// differences.
GradCheckReport gradient_check(const GradCheckConfig& cfg);

}  // namespace spdml
