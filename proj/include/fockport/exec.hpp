// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic parallel execution: work is split into fixed chunks whose
// partial results are folded in ascending chunk order, so the outcome is
// bit-identical for any thread count (and for the serial reference path).

#pragma once

#include <utility>
#include <vector>

namespace fockport::exec {

// Number of worker threads: FOCKPORT_THREADS when set (>= 1), otherwise the
// OpenMP default; 1 when built without OpenMP. Re-reads the environment on
// every call so tests can toggle it.
int thread_count();

// threads_override > 0 forces that many threads; 1 is the serial reference.
template <class Acc, class Map, class Fold>
Acc chunked_reduce(int nchunks, Map map, Fold fold, Acc init,
                   int threads_override = -1) {
  int nthreads = threads_override > 0 ? threads_override : thread_count();
  std::vector<Acc> parts;
  parts.resize(nchunks, init);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads) \
    if (nthreads > 1 && nchunks > 1)
  for (int c = 0; c < nchunks; ++c) parts[c] = map(c);
#else
  (void)nthreads;
  for (int c = 0; c < nchunks; ++c) parts[c] = map(c);
#endif
  Acc acc = std::move(init);
  for (int c = 0; c < nchunks; ++c) fold(acc, std::move(parts[c]));
  return acc;
}

}  // namespace fockport::exec
