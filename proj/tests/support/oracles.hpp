#pragma once

// Independent reference computations for tests. Nothing here calls the
// library's spectral routines: 2x2 cases use the closed-form roots of the
// characteristic polynomial, larger cases use plain products or finite
// differences.

#include <cmath>
#include <functional>
#include <vector>

#include "spdml/random.hpp"
#include "spdml/symmat.hpp"

namespace oracle {

using spdml::Matrix;
using spdml::Vector;

inline double rel_err(const Matrix& a, const Matrix& b) {
  const double scale = std::max(1.0, b.norm());
  return (a - b).norm() / scale;
}

inline double rel_err(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

// [[a, b], [b, c]] -> ascending eigenvalues and unit eigenvectors.
struct Eig2 {
  double l1, l2;
  Matrix v;  // columns
};

inline Eig2 eig2(double a, double b, double c) {
  const double mid = 0.5 * (a + c);
  const double rad = std::hypot(0.5 * (a - c), b);
  Eig2 e{mid - rad, mid + rad, Matrix(2, 2)};
  if (b == 0.0) {
    if (a <= c) e.v << 1, 0, 0, 1;
    else e.v << 0, 1, 1, 0;
    return e;
  }
  // (A - l I) v = 0  =>  v = (b, l - a)
  for (int k = 0; k < 2; ++k) {
    const double l = k == 0 ? e.l1 : e.l2;
    const double x = b, y = l - a;
    const double n = std::hypot(x, y);
    e.v(0, k) = x / n;
    e.v(1, k) = y / n;
  }
  return e;
}

inline Matrix fn2(const Matrix& m, const std::function<double(double)>& phi) {
  const Eig2 e = eig2(m(0, 0), m(0, 1), m(1, 1));
  Vector d(2);
  d << phi(e.l1), phi(e.l2);
  return e.v * d.asDiagonal() * e.v.transpose();
}

// Eigenvalues of A^{-1} B for 2x2 SPD A, B via trace and determinant.
inline std::pair<double, double> pencil2(const Matrix& a, const Matrix& b) {
  const Matrix m = a.inverse() * b;
  const double t = m.trace(), d = m.determinant();
  const double r = std::sqrt(std::max(0.0, 0.25 * t * t - d));
  return {0.5 * t - r, 0.5 * t + r};
}

inline double airm2(const Matrix& a, const Matrix& b) {
  const auto [l1, l2] = pencil2(a, b);
  return std::hypot(std::log(l1), std::log(l2));
}

inline double logeuclid2(const Matrix& a, const Matrix& b) {
  auto lg = [](double x) { return std::log(x); };
  return (fn2(a, lg) - fn2(b, lg)).norm();
}

inline double euclid_elementwise(const Matrix& a, const Matrix& b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) s += (a(i, j) - b(i, j)) * (a(i, j) - b(i, j));
  }
  return std::sqrt(s);
}

// SPD matrix whose eigenvalues lie in [center, center * (1 + spread)].
inline spdml::SpdMatrix clustered_spd(spdml::Rng& rng, Eigen::Index d, double center, double spread) {
  const Matrix q = spdml::random_orthogonal(rng, d);
  Vector lam(d);
  for (Eigen::Index i = 0; i < d; ++i) lam(i) = center * (1.0 + spread * rng.uniform01());
  return spdml::assert_spd(spdml::sym(q * lam.asDiagonal() * q.transpose()), 0.0);
}

// Tangent vector at G with ||S||_G = ||S0||_F, S0 = scale * random_sym.
inline spdml::SymMatrix tangent_at(spdml::Rng& rng, const spdml::SpdMatrix& g, double scale) {
  const Matrix r = spdml::sqrtm(g).matrix();
  return spdml::sym(r * (scale * spdml::random_sym(rng, g.dim())).matrix() * r);
}

inline spdml::SpdMatrix spd(const Matrix& m) { return spdml::assert_spd(spdml::SymMatrix(m)); }

inline spdml::SpdMatrix spd2(double a, double b, double c) {
  Matrix m(2, 2);
  m << a, b, b, c;
  return spd(m);
}

}  // namespace oracle

#include "spdml/alignment.hpp"

namespace oracle {

// n random samples with alternating labels +1, -1.
inline spdml::LabeledSpdDataset random_dataset(spdml::Rng& rng, Eigen::Index d, std::size_t n,
                                               double log_spread = 0.5) {
  std::vector<spdml::SpdMatrix> xs;
  std::vector<int> ys;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(spdml::random_spd(rng, d, log_spread));
    ys.push_back(i % 2 == 0 ? 1 : -1);
  }
  return {std::move(xs), std::move(ys)};
}

// f(G) straight from its definition with dense products and no caching.
inline double kta_direct(const spdml::SpdMatrix& g, const spdml::LabeledSpdDataset& ds) {
  const std::size_t n = ds.size();
  const Matrix w = spdml::invsqrtm(g).matrix();
  std::vector<Matrix> logs;
  for (const auto& x : ds.samples()) logs.push_back(spdml::logm(spdml::assert_spd(spdml::sym(w * x.matrix() * w), 0.0)).matrix());
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) h(i, j) = (logs[i].array() * logs[j].array()).sum();
  }
  const Matrix u = Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / n);
  const Matrix c = u * h * u;
  const Vector y = ds.label_vector();
  return y.dot(c * y) / c.norm();
}

}  // namespace oracle
