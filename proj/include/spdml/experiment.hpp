#pragma once

// End-to-end toy benchmark: generate, learn G from the Riemannian mean,
// and score 1-NN under the five distances.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spdml/learnkit.hpp"
#include "spdml/optimize.hpp"

namespace spdml {

struct ToyAccuracies {
  double le_identity = 0.0;
  double le_mean = 0.0;
  double le_learned = 0.0;
  double airm = 0.0;
  double euclid = 0.0;
};

struct ToyRun {
  ToyAccuracies accuracy;
  double f_initial = 0.0;  // alignment at the Riemannian mean
  double f_learned = 0.0;
  LearnResult learned;
};

/// One repetition on a given toy configuration.
ToyRun run_toy_once(const ToyConfig& toy, const OptimizerConfig& opt, Execution exec = Execution::Parallel);

struct ToyBenchmarkConfig {
  std::vector<int> sizes{6, 8, 16, 20};  // matrix sizes, each even
  int reps = 10;
  std::uint64_t seed = 1;
  ToyConfig toy{};  // r and seed are overwritten per size / repetition
  OptimizerConfig opt{};
  Execution exec = Execution::Parallel;
};

struct ToyBenchmarkRow {
  int size = 0;
  std::vector<ToyAccuracies> runs;
  ToyAccuracies mean() const;
};

/// Seed of repetition `rep` at matrix size `size`:
/// splitmix64(seed ^ splitmix64((size << 32) | rep)).
std::uint64_t toy_rep_seed(std::uint64_t seed, int size, int rep);

using ToyProgress = std::function<void(int size, int rep, const ToyRun&)>;

std::vector<ToyBenchmarkRow> run_toy_benchmark(const ToyBenchmarkConfig& cfg, const ToyProgress& progress = {});

/// Table with columns size, LE-identity, LE-mean, LE-learned, AIRM, Euclid
/// (accuracies in percent). format is "md" or "csv".
std::string format_toy_table(const std::vector<ToyBenchmarkRow>& rows, const std::string& format);

}  // namespace spdml
