#pragma once

#include <cstddef>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace brp::par {

// Global worker-count override used by the OpenMP kernels; 0 keeps the
// OpenMP default.  Set once at startup (CLI --threads), read by kernels.
int thread_count();
void set_thread_count(int n);

#ifdef _OPENMP
inline int resolved_threads() {
  int n = thread_count();
  return n > 0 ? n : omp_get_max_threads();
}
#endif

// Deterministic argmax of f(i) over [0, n): the result never depends on
// the thread count because max is order-independent and ties resolve to
// the smallest index.  With parallel=false this is the serial reference
// implementation.
template <class F>
std::pair<double, std::size_t> argmax(std::size_t n, F f,
                                      bool parallel = true) {
  double best = -1.0;
  std::size_t best_i = n;
#ifdef _OPENMP
  if (parallel) {
    const long ln = static_cast<long>(n);
#pragma omp parallel num_threads(resolved_threads())
    {
      double local = -1.0;
      std::size_t local_i = n;
#pragma omp for nowait
      for (long i = 0; i < ln; ++i) {
        double v = f(static_cast<std::size_t>(i));
        if (v > local || (v == local && static_cast<std::size_t>(i) < local_i)) {
          local = v;
          local_i = static_cast<std::size_t>(i);
        }
      }
#pragma omp critical
      {
        if (local > best || (local == best && local_i < best_i)) {
          best = local;
          best_i = local_i;
        }
      }
    }
    return {best, best_i};
  }
#endif
  (void)parallel;
  for (std::size_t i = 0; i < n; ++i) {
    double v = f(i);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  return {best, best_i};
}

// Independent-slot parallel loop: f(i) must only write state owned by
// index i, so the result is identical to the serial loop.
template <class F>
void for_each(std::size_t n, F f, bool parallel = true) {
#ifdef _OPENMP
  if (parallel) {
    const long ln = static_cast<long>(n);
#pragma omp parallel for num_threads(resolved_threads()) schedule(dynamic)
    for (long i = 0; i < ln; ++i) f(static_cast<std::size_t>(i));
    return;
  }
#endif
  (void)parallel;
  for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace brp::par
