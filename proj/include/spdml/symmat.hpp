#pragma once

// Symmetric and symmetric positive definite matrix types, plus the
// spectral matrix functions (log, exp, square root, inverse square root)
// everything else is built on.

#include <Eigen/Dense>

#include <cmath>
#include <utility>

#include "spdml/errors.hpp"

namespace spdml {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Default relative tolerance used by assert_spd.
inline constexpr double kDefaultSpdTol = 1e-12;

/// A real symmetric d x d matrix. Entries are stored exactly symmetric.
class SymMatrix {
 public:
  SymMatrix() = default;

  /// Validates |m(i,j) - m(j,i)| <= 1e-12 * max(1, max|m|), then stores the
  /// symmetrized matrix. Throws NotSymmetric / DimensionMismatch.
  explicit SymMatrix(const Matrix& entries);

  static SymMatrix zero(Index dim);
  static SymMatrix identity(Index dim);
  static SymMatrix diagonal(const Vector& diag);

  Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  double operator()(Index i, Index j) const { return m_(i, j); }

  SymMatrix operator-() const { return SymMatrix(-m_, Trusted{}); }
  SymMatrix& operator*=(double s) {
    m_ *= s;
    return *this;
  }

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator*(double s, const SymMatrix& a) { return SymMatrix(s * a.m_, Trusted{}); }
  friend SymMatrix operator*(const SymMatrix& a, double s) { return s * a; }
  friend SymMatrix sym(const Matrix& m);

 private:
  struct Trusted {};
  SymMatrix(Matrix m, Trusted) : m_(std::move(m)) {}

  Matrix m_;
};

class SpdMatrix;

namespace detail {
// Wraps a matrix whose positivity is known by construction (e.g. from a
// spectral reconstruction with positive eigenvalues).
SpdMatrix spd_unchecked(SymMatrix x, double lambda_min);
}  // namespace detail

/// A symmetric positive definite matrix. Only obtainable through
/// assert_spd or operations whose output is SPD by construction.
class SpdMatrix {
 public:
  static SpdMatrix identity(Index dim);

  Index dim() const noexcept { return x_.dim(); }
  const SymMatrix& sym() const noexcept { return x_; }
  const Matrix& matrix() const noexcept { return x_.matrix(); }
  double operator()(Index i, Index j) const { return x_(i, j); }
  double min_eigenvalue() const noexcept { return lambda_min_; }

  /// Positive scaling keeps the matrix in the cone.
  friend SpdMatrix operator*(double s, const SpdMatrix& a);

 private:
  SpdMatrix(SymMatrix x, double lambda_min) : x_(std::move(x)), lambda_min_(lambda_min) {}
  friend SpdMatrix detail::spd_unchecked(SymMatrix, double);

  SymMatrix x_;
  double lambda_min_ = 0.0;
};

struct SpectralDecomposition {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // orthonormal columns
};

/// sym(M) = (M + M^T) / 2 for any square matrix.
SymMatrix sym(const Matrix& m);

SpectralDecomposition eigh(const SymMatrix& x);

/// V diag(values) V^T, re-symmetrized.
SymMatrix reconstruct(const SpectralDecomposition& eig, const Vector& values);

/// Applies a scalar function to the spectrum. Throws DomainError when phi
/// produces a non-finite value at some eigenvalue.
template <class F>
SymMatrix spectral_map(const SymMatrix& x, F&& phi) {
  SpectralDecomposition eig = eigh(x);
  Vector mapped = eig.eigenvalues.unaryExpr(phi);
  if (!mapped.allFinite()) {
    throw DomainError("spectral_map: function undefined at some eigenvalue");
  }
  return reconstruct(eig, mapped);
}

template <class F>
SymMatrix spectral_map(const SpdMatrix& x, F&& phi) {
  return spectral_map(x.sym(), std::forward<F>(phi));
}

SymMatrix logm(const SpdMatrix& x);
SpdMatrix expm(const SymMatrix& s);
SpdMatrix sqrtm(const SpdMatrix& x);
SpdMatrix invsqrtm(const SpdMatrix& x);

/// Square root and inverse square root from a single eigendecomposition.
std::pair<SpdMatrix, SpdMatrix> sqrtm_and_invsqrtm(const SpdMatrix& x);

double frob_inner(const SymMatrix& a, const SymMatrix& b);
double frob_norm(const SymMatrix& a);

/// Succeeds iff lambda_min(x) > tol * max(1, lambda_max(x)); otherwise throws
/// NotPositiveDefinite carrying lambda_min. No eigenvalue clipping.
SpdMatrix assert_spd(const SymMatrix& x, double tol = kDefaultSpdTol);

void require_same_dim(Index a, Index b, const char* where);

namespace detail {

// Raw-matrix kernels for hot loops where the caller already guarantees the
// symmetric / SPD preconditions. Output is exactly symmetric.
template <class F>
Matrix apply_spectral(const Matrix& x, F&& phi) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(x);
  if (es.info() != Eigen::Success) {
    throw EigenSolverFailure("symmetric eigensolver did not converge");
  }
  const Matrix& v = es.eigenvectors();
  Vector mapped = es.eigenvalues().unaryExpr(phi);
  if (!mapped.allFinite()) {
    throw DomainError("spectral function undefined at some eigenvalue");
  }
  Matrix out = v * mapped.asDiagonal() * v.transpose();
  return 0.5 * (out + out.transpose());
}

inline Matrix log_spd(const Matrix& x) {
  return apply_spectral(x, [](double l) { return l > 0.0 ? std::log(l) : std::nan(""); });
}

inline Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace detail

}  // namespace spdml
