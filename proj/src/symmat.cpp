#include "spdml/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace spdml {

NotPositiveDefinite::NotPositiveDefinite(double lambda_min, std::optional<std::size_t> index)
    : Error([&] {
        std::ostringstream os;
        os << "matrix is not positive definite (lambda_min = " << lambda_min << ")";
        if (index) os << " at sample " << *index;
        return os.str();
      }()),
      lambda_min_(lambda_min),
      index_(index) {}

void require_same_dim(Index a, Index b, const char* where) {
  if (a != b) {
    std::ostringstream os;
    os << where << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionMismatch(os.str());
  }
}

SymMatrix::SymMatrix(const Matrix& entries) {
  if (entries.rows() != entries.cols()) {
    throw DimensionMismatch("SymMatrix: matrix is not square");
  }
  const double scale = std::max(1.0, entries.size() ? entries.cwiseAbs().maxCoeff() : 0.0);
  const double asym = entries.size() ? (entries - entries.transpose()).cwiseAbs().maxCoeff() : 0.0;
  if (!(asym <= 1e-12 * scale)) {
    std::ostringstream os;
    os << "SymMatrix: asymmetry " << asym << " exceeds tolerance";
    throw NotSymmetric(os.str());
  }
  m_ = detail::symmetrize(entries);
}

SymMatrix SymMatrix::zero(Index dim) { return SymMatrix(Matrix::Zero(dim, dim), Trusted{}); }

SymMatrix SymMatrix::identity(Index dim) { return SymMatrix(Matrix::Identity(dim, dim), Trusted{}); }

SymMatrix SymMatrix::diagonal(const Vector& diag) {
  return SymMatrix(Matrix(diag.asDiagonal()), Trusted{});
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "SymMatrix +");
  return SymMatrix(a.m_ + b.m_, SymMatrix::Trusted{});
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "SymMatrix -");
  return SymMatrix(a.m_ - b.m_, SymMatrix::Trusted{});
}

SymMatrix sym(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("sym: matrix is not square");
  }
  return SymMatrix(detail::symmetrize(m), SymMatrix::Trusted{});
}

namespace detail {
SpdMatrix spd_unchecked(SymMatrix x, double lambda_min) { return SpdMatrix(std::move(x), lambda_min); }
}  // namespace detail

SpdMatrix SpdMatrix::identity(Index dim) { return SpdMatrix(SymMatrix::identity(dim), 1.0); }

SpdMatrix operator*(double s, const SpdMatrix& a) {
  if (!(s > 0.0)) {
    throw DomainError("SpdMatrix scaling factor must be positive");
  }
  return SpdMatrix(s * a.x_, s * a.lambda_min_);
}

SpectralDecomposition eigh(const SymMatrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(x.matrix());
  if (es.info() != Eigen::Success) {
    throw EigenSolverFailure("eigh: symmetric eigensolver did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

SymMatrix reconstruct(const SpectralDecomposition& eig, const Vector& values) {
  const Matrix& v = eig.eigenvectors;
  return sym(v * values.asDiagonal() * v.transpose());
}

SymMatrix logm(const SpdMatrix& x) {
  return spectral_map(x, [](double l) { return l > 0.0 ? std::log(l) : std::nan(""); });
}

SpdMatrix expm(const SymMatrix& s) {
  SpectralDecomposition eig = eigh(s);
  const Index d = eig.eigenvalues.size();
  if (d == 0) return detail::spd_unchecked(SymMatrix::zero(0), 0.0);
  // exp overflows above log(DBL_MAX) and flushes below log(DBL_MIN).
  const double hi = std::log(std::numeric_limits<double>::max());
  const double lo = std::log(std::numeric_limits<double>::min());
  if (eig.eigenvalues(d - 1) > hi || eig.eigenvalues(0) < lo) {
    std::ostringstream os;
    os << "expm: eigenvalue range [" << eig.eigenvalues(0) << ", " << eig.eigenvalues(d - 1)
       << "] leaves the representable range";
    throw MatrixOverflow(os.str());
  }
  Vector e = eig.eigenvalues.array().exp();
  return detail::spd_unchecked(reconstruct(eig, e), e(0));
}

std::pair<SpdMatrix, SpdMatrix> sqrtm_and_invsqrtm(const SpdMatrix& x) {
  SpectralDecomposition eig = eigh(x.sym());
  if (eig.eigenvalues.size() && !(eig.eigenvalues(0) > 0.0)) {
    throw NotPositiveDefinite(eig.eigenvalues(0));
  }
  Vector r = eig.eigenvalues.array().sqrt();
  Vector ri = r.array().inverse();
  const Index d = r.size();
  double rmin = d ? r(0) : 0.0;
  double rimin = d ? ri(d - 1) : 0.0;
  return {detail::spd_unchecked(reconstruct(eig, r), rmin),
          detail::spd_unchecked(reconstruct(eig, ri), rimin)};
}

SpdMatrix sqrtm(const SpdMatrix& x) { return sqrtm_and_invsqrtm(x).first; }

SpdMatrix invsqrtm(const SpdMatrix& x) { return sqrtm_and_invsqrtm(x).second; }

double frob_inner(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "frob_inner");
  return a.matrix().cwiseProduct(b.matrix()).sum();
}

double frob_norm(const SymMatrix& a) { return a.matrix().norm(); }

SpdMatrix assert_spd(const SymMatrix& x, double tol) {
  if (x.dim() == 0) {
    throw InvalidDataset("assert_spd: empty matrix");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(x.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw EigenSolverFailure("assert_spd: symmetric eigensolver did not converge");
  }
  const Vector& ev = es.eigenvalues();
  const double lmin = ev(0);
  const double lmax = ev(ev.size() - 1);
  if (!(lmin > tol * std::max(1.0, lmax))) {
    throw NotPositiveDefinite(lmin);
  }
  return detail::spd_unchecked(x, lmin);
}

}  // namespace spdml
