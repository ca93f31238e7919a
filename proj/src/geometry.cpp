#include "spdml/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "parallel_for.hpp"

namespace spdml {

namespace {

void check_same(Index a, Index b, const char* where) { require_same_dim(a, b, where); }

SpdMatrix congruent_raw(const Matrix& m, const Matrix& a) {
  return assert_spd(sym(m * a * m), 0.0);
}

// Sum of logm(W X_i W) over the samples, where W = X^{-1/2}.
Matrix whitened_log_sum(const Matrix& w, std::span<const SpdMatrix> xs, Execution exec) {
  const Index d = w.rows();
  return detail::reduce_sum(xs.size(), exec, Reduction::Ordered, Matrix(Matrix::Zero(d, d)),
                            [&](std::size_t i) -> Matrix {
                              return detail::log_spd(detail::symmetrize(w * xs[i].matrix() * w));
                            });
}

}  // namespace

double dist_euclid(const SpdMatrix& a, const SpdMatrix& b) {
  check_same(a.dim(), b.dim(), "dist_euclid");
  return (a.matrix() - b.matrix()).norm();
}

double dist_logeuclid(const SpdMatrix& a, const SpdMatrix& b) {
  check_same(a.dim(), b.dim(), "dist_logeuclid");
  return (logm(a).matrix() - logm(b).matrix()).norm();
}

SpdMatrix congruent(const SpdMatrix& m, const SpdMatrix& a) {
  check_same(m.dim(), a.dim(), "congruent");
  return congruent_raw(m.matrix(), a.matrix());
}

double dist_logeuclid_g(const SpdMatrix& g, const SpdMatrix& a, const SpdMatrix& b) {
  check_same(g.dim(), a.dim(), "dist_logeuclid_g");
  check_same(g.dim(), b.dim(), "dist_logeuclid_g");
  const Matrix w = invsqrtm(g).matrix();
  Matrix la = detail::log_spd(detail::symmetrize(w * a.matrix() * w));
  Matrix lb = detail::log_spd(detail::symmetrize(w * b.matrix() * w));
  return (la - lb).norm();
}

double dist_airm(const SpdMatrix& a, const SpdMatrix& b) {
  check_same(a.dim(), b.dim(), "dist_airm");
  const Matrix w = invsqrtm(a).matrix();
  return detail::log_spd(detail::symmetrize(w * b.matrix() * w)).norm();
}

double dist_airm_pencil(const SpdMatrix& a, const SpdMatrix& b) {
  check_same(a.dim(), b.dim(), "dist_airm_pencil");
  // Solves B x = lambda A x.
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(b.matrix(), a.matrix(), Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success) {
    throw EigenSolverFailure("dist_airm_pencil: generalized eigensolver failed");
  }
  const Vector& ev = ges.eigenvalues();
  if (!(ev.minCoeff() > 0.0)) {
    throw DomainError("dist_airm_pencil: non-positive pencil eigenvalue");
  }
  return std::sqrt(ev.array().log().square().sum());
}

SpdMatrix exp_map(const SpdMatrix& g, const SymMatrix& s) {
  check_same(g.dim(), s.dim(), "exp_map");
  auto [root, inv_root] = sqrtm_and_invsqrtm(g);
  const Matrix& w = inv_root.matrix();
  SpdMatrix e = expm(sym(w * s.matrix() * w));
  return congruent_raw(root.matrix(), e.matrix());
}

SymMatrix log_map(const SpdMatrix& g, const SpdMatrix& a) {
  check_same(g.dim(), a.dim(), "log_map");
  auto [root, inv_root] = sqrtm_and_invsqrtm(g);
  const Matrix& w = inv_root.matrix();
  Matrix l = detail::log_spd(detail::symmetrize(w * a.matrix() * w));
  return sym(root.matrix() * l * root.matrix());
}

double tangent_inner(const SpdMatrix& g, const SymMatrix& sa, const SymMatrix& sb) {
  check_same(g.dim(), sa.dim(), "tangent_inner");
  check_same(g.dim(), sb.dim(), "tangent_inner");
  Eigen::LLT<Matrix> llt(g.matrix());
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite(g.min_eigenvalue());
  }
  const Matrix ga = llt.solve(sa.matrix());
  const Matrix gb = llt.solve(sb.matrix());
  // tr(G^{-1} S_A G^{-1} S_B) = sum_ij (G^{-1}S_A)_ij (G^{-1}S_B)_ji
  return ga.cwiseProduct(gb.transpose()).sum();
}

double tangent_norm(const SpdMatrix& g, const SymMatrix& s) {
  return std::sqrt(std::max(0.0, tangent_inner(g, s, s)));
}

double karcher_residual(const SpdMatrix& x, std::span<const SpdMatrix> xs) {
  if (xs.empty()) throw InvalidDataset("karcher_residual: empty sample list");
  for (const SpdMatrix& s : xs) check_same(x.dim(), s.dim(), "karcher_residual");
  const Matrix w = invsqrtm(x).matrix();
  // ||X^{1/2} W X^{1/2}||_X = ||W||_F for the whitened average W.
  return whitened_log_sum(w, xs, Execution::Serial).norm() / static_cast<double>(xs.size());
}

KarcherMean karcher_mean(std::span<const SpdMatrix> xs, const KarcherOptions& opts) {
  if (xs.empty()) throw InvalidDataset("riemannian_mean: empty sample list");
  const Index d = xs.front().dim();
  Matrix arith = Matrix::Zero(d, d);
  for (const SpdMatrix& s : xs) {
    check_same(d, s.dim(), "riemannian_mean");
    arith += s.matrix();
  }
  arith /= static_cast<double>(xs.size());
  SpdMatrix x = assert_spd(sym(arith), 0.0);

  double residual = 0.0;
  for (int it = 0; it <= opts.max_iter; ++it) {
    auto [root, inv_root] = sqrtm_and_invsqrtm(x);
    Matrix avg = whitened_log_sum(inv_root.matrix(), xs, opts.exec) / static_cast<double>(xs.size());
    residual = avg.norm();
    if (residual < opts.tol) {
      return {std::move(x), it, residual};
    }
    if (it == opts.max_iter) break;
    SpdMatrix step = expm(sym(avg));
    x = congruent_raw(root.matrix(), step.matrix());
  }
  std::ostringstream os;
  os << "riemannian_mean: no convergence after " << opts.max_iter << " iterations (residual "
     << residual << ")";
  throw MaxIterExceeded(os.str(), residual);
}

SpdMatrix riemannian_mean(std::span<const SpdMatrix> xs, double tol, int max_iter) {
  KarcherOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  return karcher_mean(xs, opts).mean;
}

}  // namespace spdml
