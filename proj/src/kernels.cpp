// Copyright 2026 The esgames Authors
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

#include "esg/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>
#include <string>

#include "esg/errors.hpp"

namespace esg::kernels {

void check_sweep_budget(int n, std::uint64_t max_subsets) {
  if (n >= 63 || (std::uint64_t{1} << n) > max_subsets) {
    throw ResourceError("subset sweep over " + std::to_string(n) +
                        " events exceeds budget of " +
                        std::to_string(max_subsets) + " subsets");
  }
}

void sort_canonical(std::vector<Mask>& v) {
  std::sort(v.begin(), v.end(), canonical_less);
}

std::vector<Mask> filter_subsets_serial(int n, const SubsetPredicate& pred) {
  std::vector<Mask> out;
  const Mask limit = Mask{1} << n;
  for (Mask m = 0; m < limit; ++m) {
    if (pred(m)) out.push_back(m);
  }
  sort_canonical(out);
  return out;
}

std::vector<Mask> filter_subsets(int n, const SubsetPredicate& pred) {
  const std::int64_t limit = std::int64_t{1} << n;
  if (limit < 4096) return filter_subsets_serial(n, pred);
  const int threads = omp_get_max_threads();
  std::vector<std::vector<Mask>> parts(threads);
#pragma omp parallel num_threads(threads)
  {
    auto& local = parts[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (std::int64_t m = 0; m < limit; ++m) {
      if (pred(static_cast<Mask>(m))) local.push_back(static_cast<Mask>(m));
    }
  }
  std::vector<Mask> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  sort_canonical(out);
  return out;
}

std::optional<Mask> first_failure_serial(int n, const SubsetPredicate& pred) {
  const Mask limit = Mask{1} << n;
  for (Mask m = 0; m < limit; ++m) {
    if (!pred(m)) return m;
  }
  return std::nullopt;
}

std::optional<Mask> first_failure(int n, const SubsetPredicate& pred) {
  auto idx = first_failing_index(std::size_t{1} << n,
                                 [&](std::size_t i) { return pred(Mask{i}); });
  if (!idx) return std::nullopt;
  return Mask{*idx};
}

std::optional<std::size_t> first_failing_index_serial(
    std::size_t count, const std::function<bool(std::size_t)>& pred) {
  for (std::size_t i = 0; i < count; ++i) {
    if (!pred(i)) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> first_failing_index(
    std::size_t count, const std::function<bool(std::size_t)>& pred) {
  if (count < 1024) return first_failing_index_serial(count, pred);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 256) reduction(min : best)
  for (std::int64_t i = 0; i < n; ++i) {
    auto u = static_cast<std::size_t>(i);
    if (u < best && !pred(u)) best = u;
  }
  if (best == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return best;
}

}  // namespace esg::kernels
