#include <doctest.h>

#include "oracles.hpp"
#include "spdml/geometry.hpp"
#include "spdml/learnkit.hpp"
#include "spdml/parallel.hpp"

using namespace spdml;

// The parallel kernels must reproduce the serial reference: bit for bit with
// ordered reductions, within 1e-10 with the unordered one.

TEST_CASE("Gram matrix: parallel equals serial") {
  set_num_threads(4);
  Rng rng(1);
  const LabeledSpdDataset ds = oracle::random_dataset(rng, 5, 23);
  const SpdMatrix g = random_spd(rng, 5);
  CHECK(gram(g, ds, Execution::Serial) == gram(g, ds, Execution::Parallel));
}

TEST_CASE("gradient: parallel equals serial") {
  set_num_threads(4);
  Rng rng(2);
  const LabeledSpdDataset ds = oracle::random_dataset(rng, 4, 17);
  const SpdMatrix g = random_spd(rng, 4);
  for (GradientAssembly asm_kind :
       {GradientAssembly::Pairwise, GradientAssembly::PairwiseSymmetric, GradientAssembly::Contracted}) {
    KtaOptions serial{Execution::Serial, Reduction::Ordered, asm_kind};
    KtaOptions ordered{Execution::Parallel, Reduction::Ordered, asm_kind};
    KtaOptions unordered{Execution::Parallel, Reduction::Unordered, asm_kind};
    const KtaGradient a = kta_gradient(g, ds, serial);
    const KtaGradient b = kta_gradient(g, ds, ordered);
    const KtaGradient c = kta_gradient(g, ds, unordered);
    CHECK(a.value == b.value);
    CHECK(a.euclid_grad.matrix() == b.euclid_grad.matrix());
    CHECK((a.euclid_grad.matrix() - c.euclid_grad.matrix()).norm() <= 1e-10 * a.euclid_grad.matrix().norm());
  }
}

TEST_CASE("Karcher mean: parallel equals serial") {
  set_num_threads(4);
  Rng rng(3);
  std::vector<SpdMatrix> xs;
  for (int i = 0; i < 15; ++i) xs.push_back(random_spd(rng, 4));
  KarcherOptions s, p;
  s.exec = Execution::Serial;
  p.exec = Execution::Parallel;
  const KarcherMean a = karcher_mean(xs, s), b = karcher_mean(xs, p);
  CHECK(a.mean.matrix() == b.mean.matrix());
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("1-NN batch: parallel equals serial") {
  set_num_threads(4);
  ToyConfig toy;
  toy.n_test = 60;
  toy.seed = 4;
  const ToyData data = toy_generate(toy);
  for (const MetricSpec& m : {MetricSpec::euclid(), MetricSpec::airm(), MetricSpec::logeuclid_mean()}) {
    const NearestNeighbor nn(data.train, m);
    CHECK(nn.classify_all(data.test.samples(), Execution::Serial) ==
          nn.classify_all(data.test.samples(), Execution::Parallel));
  }
}

TEST_CASE("exceptions inside parallel regions reach the caller") {
  set_num_threads(4);
  Rng rng(5);
  std::vector<SpdMatrix> xs;
  for (int i = 0; i < 6; ++i) xs.push_back(random_spd(rng, 3));
  const LabeledSpdDataset ds(xs, {1, -1, 1, -1, 1, -1});
  // The wrong-sized query throws inside the worker loop.
  const NearestNeighbor nn(ds, MetricSpec::airm());
  const std::vector<SpdMatrix> bad{random_spd(rng, 3), random_spd(rng, 4)};
  CHECK_THROWS_AS(nn.classify_all(bad, Execution::Parallel), DimensionMismatch);
}

TEST_CASE("thread count control") {
  set_num_threads(2);
  CHECK(max_threads() == 2);
  set_num_threads(0);  // no-op
  CHECK(max_threads() == 2);
  set_num_threads(1);
  CHECK(max_threads() == 1);
}
