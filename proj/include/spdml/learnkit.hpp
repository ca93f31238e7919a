#pragma once

// 1-NN classification with pluggable SPD metrics, the synthetic covariance
// generator, and whitening by the Riemannian mean.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spdml/alignment.hpp"
#include "spdml/parallel.hpp"
#include "spdml/symmat.hpp"

namespace spdml {

enum class MetricKind { Euclid, Airm, LogEuclid };
enum class ReferenceKind { Identity, RiemannianMean, Explicit };

/// Distance used by the classifier. The reference only matters for
/// LogEuclid: the identity, the Riemannian mean of the training set, or an
/// explicit SPD matrix G.
struct MetricSpec {
  MetricKind kind = MetricKind::LogEuclid;
  ReferenceKind reference = ReferenceKind::Identity;
  std::optional<SpdMatrix> explicit_reference;

  static MetricSpec euclid() { return {MetricKind::Euclid, ReferenceKind::Identity, std::nullopt}; }
  static MetricSpec airm() { return {MetricKind::Airm, ReferenceKind::Identity, std::nullopt}; }
  static MetricSpec logeuclid_identity() { return {}; }
  static MetricSpec logeuclid_mean() {
    return {MetricKind::LogEuclid, ReferenceKind::RiemannianMean, std::nullopt};
  }
  static MetricSpec logeuclid(SpdMatrix g) { return {MetricKind::LogEuclid, ReferenceKind::Explicit, std::move(g)}; }
};

std::string describe(const MetricSpec& m);

/// A 1-NN classifier with per-metric training features precomputed:
/// raw matrices (Euclid), logs of the whitened samples (LogEuclid) or the
/// samples' inverse square roots (AIRM). Ties go to the lowest index.
class NearestNeighbor {
 public:
  /// Accepts a single training sample (the dataset type requires two).
  NearestNeighbor(std::span<const SpdMatrix> samples, std::span<const int> labels, const MetricSpec& m);
  NearestNeighbor(const LabeledSpdDataset& train, const MetricSpec& m);

  std::size_t size() const noexcept { return labels_.size(); }
  /// Distance between training sample j and x under the resolved metric.
  double distance(std::size_t j, const SpdMatrix& x) const;
  std::size_t nearest_index(const SpdMatrix& x) const;
  int classify(const SpdMatrix& x) const { return labels_[nearest_index(x)]; }
  std::vector<int> classify_all(std::span<const SpdMatrix> xs, Execution exec = Execution::Parallel) const;

  /// The resolved LogEuclid reference (identity for other metrics).
  const SpdMatrix& reference() const noexcept { return reference_; }

 private:
  Matrix features_of(const SpdMatrix& x) const;

  MetricKind kind_;
  Index dim_;
  SpdMatrix reference_;
  Matrix whitener_;               // G^{-1/2} for LogEuclid
  std::vector<Matrix> features_;  // per training sample
  std::vector<int> labels_;
};

int nn1_classify(const LabeledSpdDataset& train, const SpdMatrix& x, const MetricSpec& m);

/// Fraction of test samples whose 1-NN label matches.
double evaluate_accuracy(const LabeledSpdDataset& train, const LabeledSpdDataset& test, const MetricSpec& m,
                         Execution exec = Execution::Parallel);

/// Basis used for the additive noise term V diag(|eps|) V^T.
enum class NoiseBasis { Fixed, PerSample };

/// Synthetic two-class covariances of size 2r:
///   X = Q diag(l_1..l_r, m_1..m_r) Q^T + V diag(|e_1|..|e_2r|) V^T
/// with l ~ N(pos_mean, pos_spread) for +1 and N(neg_mean, neg_spread) for
/// -1, m ~ U[mu_lo, mu_hi], e ~ N(0, 1). Q is drawn once per dataset and
/// shared by both splits.
struct ToyConfig {
  int r = 3;
  int n_train = 50;
  int n_test = 500;
  double mu_lo = 1.0;
  double mu_hi = 6.0;
  std::uint64_t seed = 0;
  double pos_mean = 5.0;
  double pos_spread = 0.2;
  double neg_mean = 4.0;
  double neg_spread = 0.1;
  bool spread_is_variance = false;  // false: spread is the standard deviation
  NoiseBasis noise_basis = NoiseBasis::Fixed;

  void validate() const;
};

struct ToyData {
  LabeledSpdDataset train;
  LabeledSpdDataset test;
};

/// Deterministic in cfg. Streams of cfg.seed: 0 bases, 1 training samples,
/// 2 test samples. Labels alternate +1, -1 within each split.
ToyData toy_generate(const ToyConfig& cfg);

struct Whitened {
  LabeledSpdDataset data;
  SpdMatrix mean;
};

/// Maps every sample through X -> Xbar^{-1/2} X Xbar^{-1/2}, where Xbar is
/// the Riemannian mean of the dataset.
Whitened whiten(const LabeledSpdDataset& ds);

}  // namespace spdml
