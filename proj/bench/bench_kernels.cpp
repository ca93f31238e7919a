// Serial reference vs OpenMP kernels. parallel:0 is the serial path;
// assembly:0 is the pairwise gradient, assembly:2 the contracted one.

#include <benchmark/benchmark.h>

#include "oracles.hpp"
#include "spdml/alignment.hpp"
#include "spdml/geometry.hpp"
#include "spdml/learnkit.hpp"

using namespace spdml;

namespace {

Execution exec_of(const benchmark::State& st) { return st.range(0) ? Execution::Parallel : Execution::Serial; }

const ToyData& toy() {
  static const ToyData data = [] {
    ToyConfig cfg;
    cfg.r = 5;
    cfg.n_test = 200;
    cfg.seed = 1;
    return toy_generate(cfg);
  }();
  return data;
}

void BM_Gram(benchmark::State& st) {
  const SpdMatrix g = riemannian_mean(toy().train.samples());
  for (auto _ : st) benchmark::DoNotOptimize(gram(g, toy().train, exec_of(st)));
}

void BM_Gradient(benchmark::State& st) {
  const SpdMatrix g = riemannian_mean(toy().train.samples());
  KtaOptions opts;
  opts.exec = exec_of(st);
  opts.assembly = static_cast<GradientAssembly>(st.range(1));
  const KtaProblem problem(toy().train, opts);
  for (auto _ : st) benchmark::DoNotOptimize(problem.gradient(g));
}

void BM_KarcherMean(benchmark::State& st) {
  KarcherOptions opts;
  opts.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(karcher_mean(toy().train.samples(), opts));
}

void BM_ClassifyAll(benchmark::State& st) {
  const NearestNeighbor nn(toy().train, MetricSpec::airm());
  for (auto _ : st) benchmark::DoNotOptimize(nn.classify_all(toy().test.samples(), exec_of(st)));
}

}  // namespace

BENCHMARK(BM_Gram)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gradient)
    ->ArgNames({"parallel", "assembly"})
    ->ArgsProduct({{0, 1}, {static_cast<int>(GradientAssembly::Pairwise), static_cast<int>(GradientAssembly::Contracted)}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KarcherMean)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifyAll)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
