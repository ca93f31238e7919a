#pragma once

// LogEuclidean kernel, its Gram matrix, the centered kernel-target alignment
// objective f(G) and its Euclidean / Riemannian gradients.

#include <cstddef>
#include <span>
#include <vector>

#include "spdml/parallel.hpp"
#include "spdml/symmat.hpp"

namespace spdml {

/// Samples X_i (common dimension) with labels y_i in {-1, +1}; n >= 2.
class LabeledSpdDataset {
 public:
  LabeledSpdDataset(std::vector<SpdMatrix> samples, std::vector<int> labels);

  std::size_t size() const noexcept { return samples_.size(); }
  Index dim() const noexcept { return samples_.front().dim(); }
  const std::vector<SpdMatrix>& samples() const noexcept { return samples_; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  const SpdMatrix& sample(std::size_t i) const { return samples_.at(i); }
  int label(std::size_t i) const { return labels_.at(i); }
  Vector label_vector() const;

 private:
  std::vector<SpdMatrix> samples_;
  std::vector<int> labels_;
};

struct KtaGradient {
  double value = 0.0;       // f(G)
  SymMatrix euclid_grad;    // nabla f(G)
  SymMatrix riem_grad;      // G sym(nabla f) G
  std::size_t dlog_evaluations = 0;
};

/// How sum_ij Z_ij nabla h_ij is assembled.
///  - Pairwise: every ordered pair, two dlog calls each (2 n^2 total).
///  - PairwiseSymmetric: pairs i <= j with doubled off-diagonal weight,
///    using nabla h_ij = nabla h_ji (n (n + 1) dlog calls).
///  - Contracted: linearity of dlog collapses the j-sum first,
///    2 sum_i X_i^{-1/2} Dlog(M_i)[sym(sum_j Z_ij A_ij)] X_i^{-1/2} (n calls).
enum class GradientAssembly { Pairwise, PairwiseSymmetric, Contracted };

struct KtaOptions {
  Execution exec = Execution::Parallel;
  Reduction reduction = Reduction::Ordered;
  GradientAssembly assembly = GradientAssembly::Contracted;
};

/// Number of dlog evaluations one gradient costs for n samples.
std::size_t dlog_budget(std::size_t n, GradientAssembly assembly);

/// k_G(X, X') = tr(log(G^{-1/2} X G^{-1/2}) log(G^{-1/2} X' G^{-1/2}))
double kernel_le(const SpdMatrix& g, const SpdMatrix& x, const SpdMatrix& xp);

/// U = I - 1 1^T / n
Matrix centering_matrix(std::size_t n);

/// Evaluates f and its gradient for one dataset. Per-sample X_i^{+-1/2} are
/// computed once at construction; everything G-dependent per call.
class KtaProblem {
 public:
  explicit KtaProblem(const LabeledSpdDataset& ds, KtaOptions opts = {});

  std::size_t size() const noexcept { return samples_.size(); }
  Index dim() const noexcept { return dim_; }
  const KtaOptions& options() const noexcept { return opts_; }

  /// h_ij(G) = k_G(X_i, X_j)
  Matrix gram(const SpdMatrix& g) const;
  /// f(G) = <U h U, y y^T> / ||U h U||. Throws DegenerateGram when
  /// ||U h U|| <= 1e-14.
  double value(const SpdMatrix& g) const;
  KtaGradient gradient(const SpdMatrix& g) const;

 private:
  struct Centered {
    Matrix c;     // U h U
    double norm;  // ||U h U||_F
    double f;
  };
  Centered centered(const SpdMatrix& g) const;

  std::vector<Matrix> samples_;
  std::vector<Matrix> roots_;      // X_i^{1/2}
  std::vector<Matrix> inv_roots_;  // X_i^{-1/2}
  Vector y_;
  Index dim_;
  KtaOptions opts_;
};

Matrix gram(const SpdMatrix& g, const LabeledSpdDataset& ds, Execution exec = Execution::Parallel);
double kta_objective(const SpdMatrix& g, const LabeledSpdDataset& ds);
KtaGradient kta_gradient(const SpdMatrix& g, const LabeledSpdDataset& ds, const KtaOptions& opts = {});

}  // namespace spdml
