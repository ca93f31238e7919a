#pragma once

namespace spdml {

/// Which implementation of a data-parallel kernel to run. Serial is the
/// reference implementation; Parallel fans the outer loop out with OpenMP.
enum class Execution { Serial, Parallel };

/// How per-index partial results are combined. Ordered reduces in index
/// order and is bit-identical to the serial reference regardless of thread
/// count. Unordered accumulates per thread and may drift by roundoff.
enum class Reduction { Ordered, Unordered };

/// Caps the number of OpenMP threads used by Parallel kernels (n <= 0 keeps
/// the runtime default).
void set_num_threads(int n);
int max_threads();

}  // namespace spdml
