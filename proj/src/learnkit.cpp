#include "spdml/learnkit.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "parallel_for.hpp"
#include "spdml/geometry.hpp"
#include "spdml/random.hpp"

namespace spdml {

std::string describe(const MetricSpec& m) {
  switch (m.kind) {
    case MetricKind::Euclid:
      return "euclid";
    case MetricKind::Airm:
      return "airm";
    case MetricKind::LogEuclid:
      switch (m.reference) {
        case ReferenceKind::Identity:
          return "logeuclid(identity)";
        case ReferenceKind::RiemannianMean:
          return "logeuclid(mean)";
        case ReferenceKind::Explicit:
          return "logeuclid(explicit)";
      }
  }
  return "unknown";
}

NearestNeighbor::NearestNeighbor(std::span<const SpdMatrix> samples, std::span<const int> labels,
                                 const MetricSpec& m)
    : kind_(m.kind),
      dim_(samples.empty() ? 0 : samples.front().dim()),
      reference_(SpdMatrix::identity(dim_)),
      labels_(labels.begin(), labels.end()) {
  if (samples.empty()) throw InvalidDataset("nn1: empty training set");
  if (samples.size() != labels.size()) throw InvalidDataset("nn1: sample and label counts differ");
  for (const SpdMatrix& s : samples) require_same_dim(dim_, s.dim(), "nn1");

  if (kind_ == MetricKind::LogEuclid) {
    switch (m.reference) {
      case ReferenceKind::Identity:
        break;
      case ReferenceKind::RiemannianMean:
        reference_ = riemannian_mean(samples);
        break;
      case ReferenceKind::Explicit:
        if (!m.explicit_reference) throw InvalidDataset("nn1: explicit reference missing");
        require_same_dim(dim_, m.explicit_reference->dim(), "nn1 reference");
        reference_ = *m.explicit_reference;
        break;
    }
    whitener_ = invsqrtm(reference_).matrix();
  }

  features_.resize(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    switch (kind_) {
      case MetricKind::Euclid:
      case MetricKind::LogEuclid:
        features_[j] = features_of(samples[j]);
        break;
      case MetricKind::Airm:
        features_[j] = invsqrtm(samples[j]).matrix();
        break;
    }
  }
}

NearestNeighbor::NearestNeighbor(const LabeledSpdDataset& train, const MetricSpec& m)
    : NearestNeighbor(std::span<const SpdMatrix>(train.samples()), std::span<const int>(train.labels()), m) {}

Matrix NearestNeighbor::features_of(const SpdMatrix& x) const {
  switch (kind_) {
    case MetricKind::Euclid:
      return x.matrix();
    case MetricKind::LogEuclid:
      return detail::log_spd(detail::symmetrize(whitener_ * x.matrix() * whitener_));
    case MetricKind::Airm:
      break;
  }
  return x.matrix();
}

double NearestNeighbor::distance(std::size_t j, const SpdMatrix& x) const {
  require_same_dim(dim_, x.dim(), "nn1 query");
  if (kind_ == MetricKind::Airm) {
    const Matrix& w = features_.at(j);
    return detail::log_spd(detail::symmetrize(w * x.matrix() * w)).norm();
  }
  return (features_.at(j) - features_of(x)).norm();
}

std::size_t NearestNeighbor::nearest_index(const SpdMatrix& x) const {
  require_same_dim(dim_, x.dim(), "nn1 query");
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  if (kind_ == MetricKind::Airm) {
    for (std::size_t j = 0; j < features_.size(); ++j) {
      const Matrix& w = features_[j];
      const double dist = detail::log_spd(detail::symmetrize(w * x.matrix() * w)).norm();
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    return best;
  }
  const Matrix fx = features_of(x);
  for (std::size_t j = 0; j < features_.size(); ++j) {
    const double dist = (features_[j] - fx).norm();
    if (dist < best_dist) {
      best_dist = dist;
      best = j;
    }
  }
  return best;
}

std::vector<int> NearestNeighbor::classify_all(std::span<const SpdMatrix> xs, Execution exec) const {
  std::vector<int> out(xs.size());
  detail::parallel_for(xs.size(), exec, [&](std::size_t i) { out[i] = classify(xs[i]); });
  return out;
}

int nn1_classify(const LabeledSpdDataset& train, const SpdMatrix& x, const MetricSpec& m) {
  return NearestNeighbor(train, m).classify(x);
}

double evaluate_accuracy(const LabeledSpdDataset& train, const LabeledSpdDataset& test, const MetricSpec& m,
                         Execution exec) {
  require_same_dim(train.dim(), test.dim(), "evaluate_accuracy");
  const NearestNeighbor nn(train, m);
  const std::vector<int> predicted = nn.classify_all(test.samples(), exec);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == test.label(i)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

void ToyConfig::validate() const {
  if (r < 1) throw std::invalid_argument("toy: r must be at least 1");
  if (!(mu_lo < mu_hi)) throw std::invalid_argument("toy: mu_lo must be below mu_hi");
  if (!(mu_lo >= 0.0)) throw std::invalid_argument("toy: mu_lo must be non-negative");
  if (n_train < 2 || n_train % 2 != 0) throw std::invalid_argument("toy: n_train must be even and >= 2");
  if (n_test < 2 || n_test % 2 != 0) throw std::invalid_argument("toy: n_test must be even and >= 2");
  if (!(pos_spread >= 0.0 && neg_spread >= 0.0)) throw std::invalid_argument("toy: spreads must be non-negative");
}

namespace {

struct ToyBases {
  Matrix q;
  Matrix v;  // used when the noise basis is fixed
};

LabeledSpdDataset toy_split(const ToyConfig& cfg, const ToyBases& bases, Rng& rng, int count) {
  const Index r = cfg.r;
  const Index d = 2 * r;
  const double pos_sd = cfg.spread_is_variance ? std::sqrt(cfg.pos_spread) : cfg.pos_spread;
  const double neg_sd = cfg.spread_is_variance ? std::sqrt(cfg.neg_spread) : cfg.neg_spread;
  std::vector<SpdMatrix> samples;
  std::vector<int> labels;
  samples.reserve(static_cast<std::size_t>(count));
  labels.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const int label = k % 2 == 0 ? 1 : -1;
    for (int attempt = 0;; ++attempt) {
      if (attempt == 1000) throw std::runtime_error("toy: could not draw a positive definite sample");
      Vector spectrum(d);
      for (Index i = 0; i < r; ++i) {
        spectrum(i) = label > 0 ? rng.normal(cfg.pos_mean, pos_sd) : rng.normal(cfg.neg_mean, neg_sd);
      }
      for (Index i = 0; i < r; ++i) spectrum(r + i) = rng.uniform(cfg.mu_lo, cfg.mu_hi);
      Vector noise(d);
      for (Index i = 0; i < d; ++i) noise(i) = std::abs(rng.normal());
      const Matrix v = cfg.noise_basis == NoiseBasis::Fixed ? bases.v : random_orthogonal(rng, d);
      const Matrix x = bases.q * spectrum.asDiagonal() * bases.q.transpose() + v * noise.asDiagonal() * v.transpose();
      try {
        samples.push_back(assert_spd(sym(x)));
        labels.push_back(label);
        break;
      } catch (const NotPositiveDefinite&) {
      }
    }
  }
  return LabeledSpdDataset(std::move(samples), std::move(labels));
}

}  // namespace

ToyData toy_generate(const ToyConfig& cfg) {
  cfg.validate();
  const Index d = 2 * cfg.r;
  Rng basis_rng = Rng::stream(cfg.seed, 0);
  ToyBases bases;
  bases.q = random_orthogonal(basis_rng, d);
  bases.v = random_orthogonal(basis_rng, d);
  Rng train_rng = Rng::stream(cfg.seed, 1);
  Rng test_rng = Rng::stream(cfg.seed, 2);
  LabeledSpdDataset train = toy_split(cfg, bases, train_rng, cfg.n_train);
  LabeledSpdDataset test = toy_split(cfg, bases, test_rng, cfg.n_test);
  return {std::move(train), std::move(test)};
}

Whitened whiten(const LabeledSpdDataset& ds) {
  SpdMatrix mean = riemannian_mean(ds.samples());
  const SpdMatrix w = invsqrtm(mean);
  std::vector<SpdMatrix> out;
  out.reserve(ds.size());
  for (const SpdMatrix& x : ds.samples()) out.push_back(congruent(w, x));
  return {LabeledSpdDataset(std::move(out), ds.labels()), std::move(mean)};
}

}  // namespace spdml
