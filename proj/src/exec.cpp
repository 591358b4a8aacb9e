// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0

#include "fockport/exec.hpp"

#include <cstdlib>
#include <string>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace fockport::exec {

int thread_count() {
  if (const char* env = std::getenv("FOCKPORT_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
      // fall through to the default
    }
  }
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace fockport::exec
