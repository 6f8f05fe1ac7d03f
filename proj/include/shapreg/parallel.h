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

#ifndef SHAPREG_PARALLEL_H_
#define SHAPREG_PARALLEL_H_

// OpenMP is optional. Every parallel kernel writes each output slot from a
// single iteration and folds partial results serially, so results do not
// depend on the thread count.

#ifdef SHAPREG_OPENMP
#include <omp.h>
#define SHAPREG_OMP_PRAGMA(content) _Pragma(content)
#else
#define SHAPREG_OMP_PRAGMA(content)
#endif

namespace shapreg {

// Thread count for parallel kernels: OpenMP's default, capped by the
// SHAPREG_THREADS environment variable when it holds a positive integer.
int MaxThreads();

// Sets OpenMP's default thread count; a no-op in serial builds.
void SetMaxThreads(int threads);

}  // namespace shapreg

#endif  // SHAPREG_PARALLEL_H_
