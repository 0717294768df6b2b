#pragma once

#include <cstdlib>

#include <omp.h>

namespace nis {

/// Effective worker count: `requested` when positive, otherwise the
/// NIS_WORKERS environment variable, otherwise the OpenMP default. All
/// parallel loops write to preallocated index-addressed slots, so results are
/// bitwise identical for any worker count.
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NIS_WORKERS")) {
    const int k = std::atoi(env);
    if (k > 0) return k;
  }
  return omp_get_max_threads();
}

}  // namespace nis
