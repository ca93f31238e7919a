#include "spdml/logderiv.hpp"

#include <algorithm>
#include <cmath>

namespace spdml {

Matrix log_loewner(const Vector& lambda) {
  const Index d = lambda.size();
  Matrix l(d, d);
  const double scale = d ? lambda.cwiseAbs().maxCoeff() : 0.0;
  for (Index k = 0; k < d; ++k) {
    l(k, k) = 1.0 / lambda(k);
    for (Index m = k + 1; m < d; ++m) {
      const double diff = lambda(k) - lambda(m);
      double v;
      if (std::abs(diff) <= 1e-12 * scale) {
        v = 2.0 / (lambda(k) + lambda(m));
      } else {
        // log1p keeps the log difference accurate for close eigenvalues.
        v = std::log1p(diff / lambda(m)) / diff;
      }
      l(k, m) = v;
      l(m, k) = v;
    }
  }
  return l;
}

namespace detail {
Matrix dlog_apply(const Matrix& v, const Matrix& loewner, const Matrix& h) {
  Matrix inner = v.transpose() * h * v;
  Matrix out = v * loewner.cwiseProduct(inner) * v.transpose();
  return symmetrize(out);
}
}  // namespace detail

SymMatrix dlog(const SpectralDecomposition& x_eig, const SymMatrix& h) {
  require_same_dim(x_eig.eigenvalues.size(), h.dim(), "dlog");
  if (x_eig.eigenvalues.size() && !(x_eig.eigenvalues.minCoeff() > 0.0)) {
    throw NotPositiveDefinite(x_eig.eigenvalues.minCoeff());
  }
  Matrix l = log_loewner(x_eig.eigenvalues);
  return sym(detail::dlog_apply(x_eig.eigenvectors, l, h.matrix()));
}

SymMatrix dlog(const SpdMatrix& x, const SymMatrix& h) { return dlog(eigh(x.sym()), h); }

double dlog_fd_default_step(const SpdMatrix& x, const SymMatrix& h) {
  return 1e-5 * x.matrix().norm() / std::max(1.0, h.matrix().norm());
}

SymMatrix dlog_fd_oracle(const SpdMatrix& x, const SymMatrix& h, double step) {
  require_same_dim(x.dim(), h.dim(), "dlog_fd_oracle");
  if (!(step > 0.0)) throw DomainError("dlog_fd_oracle: step must be positive");
  for (int halvings = 0; halvings < 200; ++halvings, step *= 0.5) {
    try {
      SpdMatrix plus = assert_spd(x.sym() + step * h, 0.0);
      SpdMatrix minus = assert_spd(x.sym() - step * h, 0.0);
      return (1.0 / (2.0 * step)) * (logm(plus) - logm(minus));
    } catch (const NotPositiveDefinite&) {
    }
  }
  throw StepUnderflow("dlog_fd_oracle: no step keeps X +- hH positive definite");
}

}  // namespace spdml
