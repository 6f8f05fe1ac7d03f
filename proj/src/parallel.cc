// Copyright 2026 The shapreg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shapreg/parallel.h"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace shapreg {

int MaxThreads() {
#ifdef SHAPREG_OPENMP
  int threads = omp_get_max_threads();
#else
  int threads = 1;
#endif
  if (const char* env = std::getenv("SHAPREG_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) threads = std::min(threads, cap);
    } catch (const std::exception&) {
      // Ignore malformed values.
    }
  }
  return std::max(threads, 1);
}

void SetMaxThreads(int threads) {
#ifdef SHAPREG_OPENMP
  omp_set_num_threads(std::max(threads, 1));
#else
  (void)threads;
#endif
}

}  // namespace shapreg
