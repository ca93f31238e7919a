#include <doctest.h>

#include <cmath>
#include <functional>

#include "oracles.hpp"
#include "spdml/geometry.hpp"
#include "spdml/learnkit.hpp"

using namespace spdml;

namespace {

// Label of the smallest entry, first index on ties.
int brute_force_label(const std::vector<double>& dist, const std::vector<int>& labels) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < dist.size(); ++j) {
    if (dist[j] < dist[best]) best = j;
  }
  return labels[best];
}

Matrix whiten2(const Matrix& g, const Matrix& x) {
  const Matrix w = oracle::fn2(g, [](double v) { return 1.0 / std::sqrt(v); });
  return w * x * w;
}

}  // namespace

TEST_CASE("1-NN trivial cases") {
  Rng rng(1);
  const LabeledSpdDataset train = oracle::random_dataset(rng, 3, 6);
  for (const MetricSpec& m : {MetricSpec::euclid(), MetricSpec::airm(), MetricSpec::logeuclid_identity(),
                              MetricSpec::logeuclid_mean(), MetricSpec::logeuclid(random_spd(rng, 3))}) {
    for (std::size_t i = 0; i < train.size(); ++i) CHECK(nn1_classify(train, train.sample(i), m) == train.label(i));
    const std::vector<SpdMatrix> one{train.sample(0)};
    const std::vector<int> lab{-1};
    const NearestNeighbor nn(one, lab, m);
    for (int t = 0; t < 5; ++t) CHECK(nn.classify(random_spd(rng, 3)) == -1);
  }
}

TEST_CASE("1-NN against an exhaustive distance table") {
  const std::vector<SpdMatrix> xs{oracle::spd2(2, 0.5, 1), oracle::spd2(1, -0.3, 3), oracle::spd2(0.5, 0.1, 0.7),
                                  oracle::spd2(4, 1.5, 2)};
  const std::vector<int> ys{1, -1, -1, 1};
  const LabeledSpdDataset train(xs, ys);
  const SpdMatrix g = oracle::spd2(1.5, 0.4, 0.8);
  const SpdMatrix mean = riemannian_mean(xs);

  using Dist = std::function<double(const Matrix&, const Matrix&)>;
  struct Case {
    MetricSpec m;
    Dist d;
  };
  const std::vector<Case> cases{
      {MetricSpec::euclid(), oracle::euclid_elementwise},
      {MetricSpec::airm(), oracle::airm2},
      {MetricSpec::logeuclid_identity(), oracle::logeuclid2},
      {MetricSpec::logeuclid(g),
       [&](const Matrix& a, const Matrix& b) {
         return oracle::logeuclid2(whiten2(g.matrix(), a), whiten2(g.matrix(), b));
       }},
      {MetricSpec::logeuclid_mean(),
       [&](const Matrix& a, const Matrix& b) {
         return oracle::logeuclid2(whiten2(mean.matrix(), a), whiten2(mean.matrix(), b));
       }},
  };
  const std::vector<SpdMatrix> queries{oracle::spd2(1, 0, 1),      oracle::spd2(3, 1, 2),   oracle::spd2(0.6, 0, 0.6),
                                       oracle::spd2(1.2, -0.5, 2.5), oracle::spd2(5, 2, 3), oracle::spd2(0.9, 0.3, 0.4)};
  for (const Case& c : cases) {
    const NearestNeighbor nn(train, c.m);
    for (const SpdMatrix& q : queries) {
      std::vector<double> table;
      for (std::size_t j = 0; j < xs.size(); ++j) {
        table.push_back(c.d(xs[j].matrix(), q.matrix()));
        CHECK(nn.distance(j, q) == doctest::Approx(table.back()).epsilon(1e-10));
      }
      CHECK(nn.classify(q) == brute_force_label(table, ys));
    }
  }
}

TEST_CASE("1-NN ties go to the lowest index") {
  const SpdMatrix a = oracle::spd2(2, 0, 1);
  const LabeledSpdDataset train({a, a}, {-1, 1});
  CHECK(nn1_classify(train, a, MetricSpec::euclid()) == -1);
  CHECK(NearestNeighbor(train, MetricSpec::airm()).nearest_index(oracle::spd2(3, 0, 3)) == 0);
}

TEST_CASE("evaluate_accuracy") {
  Rng rng(2);
  const LabeledSpdDataset train = oracle::random_dataset(rng, 3, 10);
  std::vector<int> flipped = train.labels();
  for (int& y : flipped) y = -y;
  const LabeledSpdDataset anti(train.samples(), flipped);
  for (const MetricSpec& m : {MetricSpec::euclid(), MetricSpec::airm(), MetricSpec::logeuclid_identity()}) {
    CHECK(evaluate_accuracy(train, train, m) == 1.0);
    CHECK(evaluate_accuracy(train, anti, m) == 0.0);
  }
  CHECK_THROWS_AS(evaluate_accuracy(train, oracle::random_dataset(rng, 2, 4), MetricSpec::euclid()),
                  DimensionMismatch);
  CHECK_THROWS_AS(evaluate_accuracy(train, train, MetricSpec::logeuclid(SpdMatrix::identity(2))),
                  DimensionMismatch);
}

TEST_CASE("toy generator") {
  ToyConfig cfg;
  cfg.n_test = 40;
  cfg.seed = 7;
  const ToyData a = toy_generate(cfg), b = toy_generate(cfg);
  CHECK(a.train.size() == 50);
  CHECK(a.test.size() == 40);
  CHECK(a.train.dim() == 6);
  for (std::size_t i = 0; i < a.train.size(); ++i) {
    CHECK(a.train.sample(i).matrix() == b.train.sample(i).matrix());
    CHECK(a.train.label(i) == (i % 2 == 0 ? 1 : -1));
  }
  for (std::size_t i = 0; i < a.test.size(); ++i) CHECK(a.test.sample(i).matrix() == b.test.sample(i).matrix());

  ToyConfig other = cfg;
  other.seed = 8;
  CHECK(toy_generate(other).train.sample(0).matrix() != a.train.sample(0).matrix());
  // Streams are independent: changing the test size leaves training data alone.
  other = cfg;
  other.n_test = 10;
  CHECK(toy_generate(other).train.sample(3).matrix() == a.train.sample(3).matrix());

  ToyConfig bad = cfg;
  bad.n_train = 7;
  CHECK_THROWS_AS(toy_generate(bad), std::invalid_argument);
  bad = cfg;
  bad.mu_lo = 6;
  CHECK_THROWS_AS(toy_generate(bad), std::invalid_argument);
  bad = cfg;
  bad.r = 0;
  CHECK_THROWS_AS(toy_generate(bad), std::invalid_argument);

  ToyConfig per = cfg;
  per.noise_basis = NoiseBasis::PerSample;
  CHECK(toy_generate(per).train.sample(0).matrix() != a.train.sample(0).matrix());
}

TEST_CASE("whitening") {
  Rng rng(3);
  SUBCASE("two equal samples map to the identity") {
    const SpdMatrix x = random_spd(rng, 3);
    const Whitened w = whiten(LabeledSpdDataset({x, x}, {1, -1}));
    for (const auto& s : w.data.samples()) CHECK(oracle::rel_err(s.matrix(), Matrix::Identity(3, 3)) < 1e-12);
  }
  SUBCASE("a dataset centred at the identity is unchanged") {
    const SpdMatrix x = random_spd(rng, 3);
    const SpdMatrix xi = oracle::spd(sym(x.matrix().inverse()).matrix());
    const LabeledSpdDataset ds({x, xi}, {1, -1});
    const Whitened w = whiten(ds);
    CHECK(oracle::rel_err(w.mean.matrix(), Matrix::Identity(3, 3)) < 1e-9);
    CHECK(oracle::rel_err(w.data.sample(0).matrix(), x.matrix()) < 1e-9);
    CHECK(oracle::rel_err(w.data.sample(1).matrix(), xi.matrix()) < 1e-9);
  }
  SUBCASE("random dataset") {
    const LabeledSpdDataset ds = oracle::random_dataset(rng, 4, 10, 1.0);
    const Whitened w = whiten(ds);
    CHECK(oracle::rel_err(riemannian_mean(w.data.samples()).matrix(), Matrix::Identity(4, 4)) < 1e-6);
    CHECK(w.data.labels() == ds.labels());
    for (std::size_t i = 0; i < ds.size(); ++i) {
      for (std::size_t j = i + 1; j < ds.size(); ++j) {
        CHECK(std::abs(dist_airm(w.data.sample(i), w.data.sample(j)) - dist_airm(ds.sample(i), ds.sample(j))) <
              1e-9);
      }
    }
  }
}

TEST_CASE("metric descriptions") {
  CHECK(describe(MetricSpec::euclid()) == "euclid");
  CHECK(describe(MetricSpec::airm()) == "airm");
  CHECK_FALSE(describe(MetricSpec::logeuclid_mean()).empty());
}
