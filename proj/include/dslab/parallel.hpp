#pragma once

#include <optional>

namespace dslab {

/// Selects the OpenMP kernel or its serial reference. Both produce identical
/// results; the serial path exists for testing and benchmarking.
enum class Exec { serial, parallel };

/// Thread count from an explicit request, else DSLAB_THREADS, else the
/// OpenMP default. Values < 1 are rejected with std::invalid_argument.
int resolve_thread_count(std::optional<int> requested);

/// Applies the count to subsequent OpenMP parallel regions.
void set_thread_count(int n);

int max_threads();

}  // namespace dslab
