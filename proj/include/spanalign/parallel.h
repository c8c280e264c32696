// Copyright 2026 The spanalign Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPANALIGN_PARALLEL_H_
#define SPANALIGN_PARALLEL_H_

#include <exception>

namespace spanalign {

// Kernels with an OpenMP loop also keep a plain serial loop. The serial path
// is the reference the parallel path is tested against; both produce
// identical results because per-item values are reduced in index order.
enum class Execution { kSerial, kParallel };

// Sets the OpenMP thread count for subsequent parallel kernels. jobs <= 0
// leaves the runtime default.
void SetJobs(int jobs);
int Jobs();

// Runs body(i) for i in [0, n). When several iterations throw, the exception
// of the lowest index is rethrown after the loop.
template <typename Fn>
void ParallelFor(long n, Execution execution, Fn&& body) {
  if (execution == Execution::kSerial) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  long error_index = n;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(spanalign_parallel_for)
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace spanalign

#endif  // SPANALIGN_PARALLEL_H_
