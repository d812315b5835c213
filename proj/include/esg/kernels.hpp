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

#ifndef ESG_KERNELS_HPP_
#define ESG_KERNELS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "esg/mask.hpp"

namespace esg::kernels {

// Exhaustive sweeps over all 2^n subsets of an n-element set. Each comes as
// an OpenMP kernel and a serial reference with identical results; the
// parallel form reduces deterministically so outputs stay canonical.

using SubsetPredicate = std::function<bool(Mask)>;

// Throws ResourceError when 2^n exceeds max_subsets.
void check_sweep_budget(int n, std::uint64_t max_subsets);

// All subsets satisfying pred, in canonical (size, lex) order.
std::vector<Mask> filter_subsets(int n, const SubsetPredicate& pred);
std::vector<Mask> filter_subsets_serial(int n, const SubsetPredicate& pred);

// Numerically smallest subset failing pred, if any.
std::optional<Mask> first_failure(int n, const SubsetPredicate& pred);
std::optional<Mask> first_failure_serial(int n, const SubsetPredicate& pred);

// Applies pred to indices [0, count) and returns the smallest failing index.
std::optional<std::size_t> first_failing_index(
    std::size_t count, const std::function<bool(std::size_t)>& pred);
std::optional<std::size_t> first_failing_index_serial(
    std::size_t count, const std::function<bool(std::size_t)>& pred);

void sort_canonical(std::vector<Mask>& v);

}  // namespace esg::kernels

#endif  // ESG_KERNELS_HPP_
