#pragma once

// Directional (Frechet) derivative of the matrix logarithm at an SPD point.

#include "spdml/symmat.hpp"

namespace spdml {

/// D log(X)[H] through the Daleckii-Krein formula
///   V (L o (V^T H V)) V^T,   L_kl = (log l_k - log l_l) / (l_k - l_l),
/// with L_kk = 1 / l_k and L_kl = 2 / (l_k + l_l) when the two eigenvalues
/// agree to within 1e-12 * max(l).
SymMatrix dlog(const SpdMatrix& x, const SymMatrix& h);

/// Same derivative, reusing an eigendecomposition of X.
SymMatrix dlog(const SpectralDecomposition& x_eig, const SymMatrix& h);

/// The divided-difference (Loewner) matrix of log for the given spectrum.
Matrix log_loewner(const Vector& eigenvalues);

namespace detail {
// Raw kernel: V (L o (V^T H V)) V^T for a precomputed V and Loewner matrix.
Matrix dlog_apply(const Matrix& v, const Matrix& loewner, const Matrix& h);
}  // namespace detail

/// Central difference (logm(X + hH) - logm(X - hH)) / 2h. The step is halved
/// until both X +- hH are SPD; throws StepUnderflow if it never becomes so.
SymMatrix dlog_fd_oracle(const SpdMatrix& x, const SymMatrix& h, double step);

/// Default oracle step 1e-5 * ||X||_F / max(1, ||H||_F).
double dlog_fd_default_step(const SpdMatrix& x, const SymMatrix& h);

}  // namespace spdml
