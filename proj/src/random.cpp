#include "spdml/random.hpp"

#include <cmath>

namespace spdml {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t stream_id) {
  return Rng(splitmix64(seed ^ splitmix64(stream_id + 1)));
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (spare_) {
    double v = *spare_;
    spare_.reset();
    return v;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  return u * factor;
}

Matrix gaussian_matrix(Rng& rng, Index d) {
  Matrix a(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) a(i, j) = rng.normal();
  }
  return a;
}

Matrix random_orthogonal(Rng& rng, Index d) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(rng, d));
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix& r = qr.matrixQR();
  for (Index j = 0; j < d; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

SpdMatrix random_spd(Rng& rng, Index d, double log_spread) {
  const Matrix q = random_orthogonal(rng, d);
  Vector lam(d);
  for (Index i = 0; i < d; ++i) lam(i) = std::exp(log_spread * rng.normal());
  return assert_spd(sym(q * lam.asDiagonal() * q.transpose()), 0.0);
}

SymMatrix random_sym(Rng& rng, Index d) {
  Matrix a(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = i; j < d; ++j) {
      a(i, j) = rng.normal();
      a(j, i) = a(i, j);
    }
  }
  return sym(a);
}

}  // namespace spdml
