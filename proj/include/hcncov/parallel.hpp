#pragma once

#include <cstddef>
#include <cstdint>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace hcncov {

enum class Exec { serial, parallel };

// Runs fn(i) for i in [0, n). The parallel path uses OpenMP with dynamic
// scheduling; every fn(i) must write only to its own slots so that both
// paths produce bit-identical results.
template <typename Fn>
void parallel_for(std::size_t n, Exec exec, Fn&& fn) {
#if defined(_OPENMP)
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
      fn(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

inline int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace hcncov
