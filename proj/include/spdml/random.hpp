#pragma once

// Portable seeded random numbers.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are implementation-defined, so the
// uniform and normal transforms are implemented here:
//   uniform01: top 53 bits of one engine draw, scaled to [0, 1);
//   normal:    Marsaglia polar method, spare value cached.
//
// Stream splitting: stream k of seed s is an independent engine seeded with
// splitmix64(s ^ splitmix64(k + 1)). Consumers name their streams with fixed
// ids so adding draws to one stream never shifts another.

#include <cstdint>
#include <optional>
#include <random>

#include "spdml/symmat.hpp"

namespace spdml {

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream derived from (seed, stream_id).
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64() { return engine_(); }
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// d x d matrix of i.i.d. standard normals, row-major draw order.
Matrix gaussian_matrix(Rng& rng, Index d);

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// columns of Q sign-corrected by sign(diag R).
Matrix random_orthogonal(Rng& rng, Index d);

/// Q diag(exp(log_spread * z)) Q^T with Q Haar-orthogonal and z standard
/// normal, so log-eigenvalues have standard deviation log_spread.
SpdMatrix random_spd(Rng& rng, Index d, double log_spread = 1.0);

/// Symmetric matrix with i.i.d. N(0, 1) upper-triangle entries.
SymMatrix random_sym(Rng& rng, Index d);

}  // namespace spdml
