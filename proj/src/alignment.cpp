#include "spdml/alignment.hpp"

#include <cmath>
#include <sstream>

#include "parallel_for.hpp"
#include "spdml/logderiv.hpp"

namespace spdml {

LabeledSpdDataset::LabeledSpdDataset(std::vector<SpdMatrix> samples, std::vector<int> labels)
    : samples_(std::move(samples)), labels_(std::move(labels)) {
  if (samples_.size() != labels_.size()) {
    throw InvalidDataset("dataset: sample and label counts differ");
  }
  if (samples_.size() < 2) {
    throw InvalidDataset("dataset: at least two samples are required");
  }
  const Index d = samples_.front().dim();
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (samples_[i].dim() != d) {
      std::ostringstream os;
      os << "dataset: sample " << i << " has dimension " << samples_[i].dim() << ", expected " << d;
      throw DimensionMismatch(os.str());
    }
    if (labels_[i] != 1 && labels_[i] != -1) {
      std::ostringstream os;
      os << "dataset: label " << labels_[i] << " of sample " << i << " is not +1 or -1";
      throw InvalidDataset(os.str());
    }
  }
}

Vector LabeledSpdDataset::label_vector() const {
  Vector y(static_cast<Index>(labels_.size()));
  for (std::size_t i = 0; i < labels_.size(); ++i) y(static_cast<Index>(i)) = labels_[i];
  return y;
}

std::size_t dlog_budget(std::size_t n, GradientAssembly assembly) {
  switch (assembly) {
    case GradientAssembly::Pairwise:
      return 2 * n * n;
    case GradientAssembly::PairwiseSymmetric:
      return n * (n + 1);
    case GradientAssembly::Contracted:
      return n;
  }
  return 0;
}

double kernel_le(const SpdMatrix& g, const SpdMatrix& x, const SpdMatrix& xp) {
  require_same_dim(g.dim(), x.dim(), "kernel_le");
  require_same_dim(g.dim(), xp.dim(), "kernel_le");
  const Matrix w = invsqrtm(g).matrix();
  Matrix lx = detail::log_spd(detail::symmetrize(w * x.matrix() * w));
  Matrix lxp = detail::log_spd(detail::symmetrize(w * xp.matrix() * w));
  return lx.cwiseProduct(lxp).sum();
}

Matrix centering_matrix(std::size_t n) {
  const auto m = static_cast<Index>(n);
  return Matrix::Identity(m, m) - Matrix::Constant(m, m, 1.0 / static_cast<double>(n));
}

KtaProblem::KtaProblem(const LabeledSpdDataset& ds, KtaOptions opts)
    : y_(ds.label_vector()), dim_(ds.dim()), opts_(opts) {
  const std::size_t n = ds.size();
  samples_.resize(n);
  roots_.resize(n);
  inv_roots_.resize(n);
  detail::parallel_for(n, opts_.exec, [&](std::size_t i) {
    auto [root, inv_root] = sqrtm_and_invsqrtm(ds.sample(i));
    samples_[i] = ds.sample(i).matrix();
    roots_[i] = root.matrix();
    inv_roots_[i] = inv_root.matrix();
  });
}

Matrix KtaProblem::gram(const SpdMatrix& g) const {
  require_same_dim(dim_, g.dim(), "gram");
  const std::size_t n = samples_.size();
  const Matrix w = invsqrtm(g).matrix();
  std::vector<Matrix> logs(n);
  detail::parallel_for(n, opts_.exec, [&](std::size_t i) {
    logs[i] = detail::log_spd(detail::symmetrize(w * samples_[i] * w));
  });
  Matrix h(static_cast<Index>(n), static_cast<Index>(n));
  detail::parallel_for(n, opts_.exec, [&](std::size_t i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = logs[i].cwiseProduct(logs[j]).sum();
      h(static_cast<Index>(i), static_cast<Index>(j)) = v;
      h(static_cast<Index>(j), static_cast<Index>(i)) = v;
    }
  });
  return h;
}

KtaProblem::Centered KtaProblem::centered(const SpdMatrix& g) const {
  const Matrix u = centering_matrix(samples_.size());
  Matrix c = u * gram(g) * u;
  c = detail::symmetrize(c);
  const double norm = c.norm();
  if (!(norm > 1e-14)) {
    throw DegenerateGram("kta: centered Gram matrix vanishes (all samples coincide after mapping)");
  }
  const double f = (c.cwiseProduct(y_ * y_.transpose())).sum() / norm;
  return {std::move(c), norm, f};
}

double KtaProblem::value(const SpdMatrix& g) const { return centered(g).f; }

namespace {

// G-dependent spectral data of M_i = X_i^{-1/2} G X_i^{-1/2}.
struct SampleAtG {
  Matrix v;        // eigenvectors of M_i
  Matrix loewner;  // divided differences of log on the spectrum of M_i
  Matrix q;        // Q_i = log(M_i)
};

}  // namespace

KtaGradient KtaProblem::gradient(const SpdMatrix& g) const {
  const Centered cen = centered(g);
  const std::size_t n = samples_.size();
  const Index d = dim_;
  const Matrix u = centering_matrix(n);
  const Matrix yy = y_ * y_.transpose();
  Matrix z = u * (yy / cen.norm - cen.f * cen.c / (cen.norm * cen.norm)) * u;
  z = detail::symmetrize(z);

  std::vector<SampleAtG> at(n);
  detail::parallel_for(n, opts_.exec, [&](std::size_t i) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(detail::symmetrize(inv_roots_[i] * g.matrix() * inv_roots_[i]));
    if (es.info() != Eigen::Success) {
      throw EigenSolverFailure("kta_gradient: symmetric eigensolver did not converge");
    }
    const Vector& lam = es.eigenvalues();
    if (!(lam.minCoeff() > 0.0)) throw NotPositiveDefinite(lam.minCoeff(), i);
    at[i].v = es.eigenvectors();
    at[i].loewner = log_loewner(lam);
    at[i].q = detail::symmetrize(at[i].v * lam.array().log().matrix().asDiagonal() * at[i].v.transpose());
  });

  // T_i(B) = X_i^{-1/2} Dlog(M_i)[sym(B)] X_i^{-1/2}
  auto transport = [&](std::size_t i, const Matrix& b) -> Matrix {
    return inv_roots_[i] * detail::dlog_apply(at[i].v, at[i].loewner, detail::symmetrize(b)) * inv_roots_[i];
  };
  // A_ij = X_i^{1/2} X_j^{-1/2} Q_j X_j^{1/2} X_i^{-1/2}
  auto a_pair = [&](std::size_t i, std::size_t j) -> Matrix {
    return roots_[i] * inv_roots_[j] * at[j].q * roots_[j] * inv_roots_[i];
  };
  auto grad_h = [&](std::size_t i, std::size_t j) -> Matrix {
    return transport(i, a_pair(i, j)) + transport(j, a_pair(j, i));
  };

  const Matrix zero = Matrix::Zero(d, d);
  Matrix euclid;
  switch (opts_.assembly) {
    case GradientAssembly::Pairwise:
      euclid = detail::reduce_sum(n, opts_.exec, opts_.reduction, zero, [&](std::size_t i) -> Matrix {
        Matrix row = Matrix::Zero(d, d);
        for (std::size_t j = 0; j < n; ++j) {
          row += z(static_cast<Index>(i), static_cast<Index>(j)) * grad_h(i, j);
        }
        return row;
      });
      break;
    case GradientAssembly::PairwiseSymmetric:
      euclid = detail::reduce_sum(n, opts_.exec, opts_.reduction, zero, [&](std::size_t i) -> Matrix {
        Matrix row = z(static_cast<Index>(i), static_cast<Index>(i)) * grad_h(i, i);
        for (std::size_t j = i + 1; j < n; ++j) {
          row += 2.0 * z(static_cast<Index>(i), static_cast<Index>(j)) * grad_h(i, j);
        }
        return row;
      });
      break;
    case GradientAssembly::Contracted: {
      // P_j = X_j^{-1/2} Q_j X_j^{1/2}, so sum_j Z_ij A_ij = X_i^{1/2} (sum_j Z_ij P_j) X_i^{-1/2}.
      std::vector<Matrix> p(n);
      detail::parallel_for(n, opts_.exec, [&](std::size_t j) { p[j] = inv_roots_[j] * at[j].q * roots_[j]; });
      euclid = detail::reduce_sum(n, opts_.exec, opts_.reduction, zero, [&](std::size_t i) -> Matrix {
        Matrix s = Matrix::Zero(d, d);
        for (std::size_t j = 0; j < n; ++j) s += z(static_cast<Index>(i), static_cast<Index>(j)) * p[j];
        return 2.0 * transport(i, roots_[i] * s * inv_roots_[i]);
      });
      break;
    }
  }

  KtaGradient out;
  out.value = cen.f;
  out.euclid_grad = sym(euclid);
  out.riem_grad = sym(g.matrix() * out.euclid_grad.matrix() * g.matrix());
  out.dlog_evaluations = dlog_budget(n, opts_.assembly);
  return out;
}

Matrix gram(const SpdMatrix& g, const LabeledSpdDataset& ds, Execution exec) {
  KtaOptions opts;
  opts.exec = exec;
  return KtaProblem(ds, opts).gram(g);
}

double kta_objective(const SpdMatrix& g, const LabeledSpdDataset& ds) { return KtaProblem(ds).value(g); }

KtaGradient kta_gradient(const SpdMatrix& g, const LabeledSpdDataset& ds, const KtaOptions& opts) {
  return KtaProblem(ds, opts).gradient(g);
}

}  // namespace spdml
