// Copyright 2026 The aide-cpp Authors
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

#ifndef AIDE_PARALLEL_HPP
#define AIDE_PARALLEL_HPP

#include <exception>
#include <mutex>
#include <utility>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace aide {

/// Runs body(i) for i in [0, n). With threads > 1 the iterations run under
/// OpenMP; each iteration must derive its own random stream from its index,
/// which is what makes the serial and parallel paths produce identical
/// results slot for slot.
///
/// The serial path is kept as the reference implementation; tests compare
/// the two and the benchmark binary times them against each other.
template <typename Body>
void run_indexed(int n, int threads, Body&& body) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
#if defined(_OPENMP)
  std::exception_ptr error;
  std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
#else
  for (int i = 0; i < n; ++i) body(i);
#endif
}

/// Number of hardware threads OpenMP would use, 1 without OpenMP.
int max_threads();

}  // namespace aide

#endif  // AIDE_PARALLEL_HPP
