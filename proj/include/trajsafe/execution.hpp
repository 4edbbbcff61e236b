// Copyright 2026 The trajsafe Authors
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

#ifndef TRAJSAFE__EXECUTION_HPP_
#define TRAJSAFE__EXECUTION_HPP_

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

namespace trajsafe
{

/// How data-parallel loops run. `threads <= 1` is the serial reference path;
/// larger values use OpenMP when available. Every kernel writes results into
/// per-index slots and reduces in a fixed order, so outputs are bitwise equal
/// for any thread count.
struct Execution
{
  int threads{1};

  static constexpr Execution serial() { return {1}; }
  static constexpr Execution parallel(int n) { return {n}; }
  bool is_serial() const noexcept { return threads <= 1; }
};

/// Runs `fn(i)` for i in [0, n). Exceptions thrown inside workers are
/// rethrown on the calling thread (the one from the lowest index wins).
template <typename Fn>
void parallel_for(std::size_t n, Execution exec, Fn && fn)
{
  if (exec.is_serial() || n < 2) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
#if defined(_OPENMP)
#pragma omp parallel for num_threads(exec.threads) schedule(dynamic)
#endif
  for (long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto & e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

/// Pairwise (cascade) summation over a fixed index order.
inline double pairwise_sum(std::span<const double> values)
{
  if (values.empty()) {
    return 0.0;
  }
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) {
      s += v;
    }
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace trajsafe

#endif  // TRAJSAFE__EXECUTION_HPP_
