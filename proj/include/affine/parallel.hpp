#ifndef AFFINE_PARALLEL_HPP
#define AFFINE_PARALLEL_HPP

#include <cstddef>

#ifdef AFFINE_HAVE_OPENMP
#include <omp.h>
#endif

namespace affine {

// Work scheduling for the data-parallel kernels (direction sweeps, grid
// scans). Serial is the reference path; Parallel uses OpenMP when the
// library was built with it and falls back to the serial loop otherwise.
// Results are written by index, so both policies produce identical output.
enum class ExecPolicy { Serial, Parallel };

template <typename Body>
void parallel_for(ExecPolicy policy, std::ptrdiff_t n, const Body &body) {
  if (policy == ExecPolicy::Parallel) {
#ifdef AFFINE_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      body(i);
    return;
#endif
  }
  for (std::ptrdiff_t i = 0; i < n; ++i)
    body(i);
}

inline int hardware_threads() {
#ifdef AFFINE_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

} // namespace affine

#endif
