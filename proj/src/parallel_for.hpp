#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

#include "spdml/parallel.hpp"

namespace spdml::detail {

// Runs body(i) for i in [0, n). Exceptions thrown inside the OpenMP region
// are captured and the first one is rethrown after the loop.
template <class Body>
void parallel_for(std::size_t n, Execution exec, Body&& body) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

// Sums term(i) over i in [0, n). Serial and Ordered reduce in index order and
// give bit-identical results; Unordered accumulates per thread.
template <class Acc, class Term>
Acc reduce_sum(std::size_t n, Execution exec, Reduction reduction, Acc zero, Term&& term) {
  if (exec == Execution::Serial) {
    Acc sum = zero;
    for (std::size_t i = 0; i < n; ++i) sum += term(i);
    return sum;
  }
  if (reduction == Reduction::Ordered) {
    std::vector<Acc> parts(n);
    parallel_for(n, exec, [&](std::size_t i) { parts[i] = term(i); });
    Acc sum = zero;
    for (const Acc& p : parts) sum += p;
    return sum;
  }
  Acc sum = zero;
  std::exception_ptr error;
  std::mutex mutex;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    Acc local = zero;
#pragma omp for schedule(dynamic) nowait
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      try {
        local += term(static_cast<std::size_t>(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!error) error = std::current_exception();
      }
    }
    std::lock_guard<std::mutex> lock(mutex);
    sum += local;
  }
  if (error) std::rethrow_exception(error);
  return sum;
}

}  // namespace spdml::detail
