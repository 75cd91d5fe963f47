// Copyright 2026 The scalesort Authors.
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

#ifndef SCALESORT_COMBINATORICS_HPP_
#define SCALESORT_COMBINATORICS_HPP_

#include <cstdint>
#include <vector>

#include "scalesort/scale.hpp"

namespace scalesort {

// C(n, r) exactly; 0 when r < 0 or r > n. Throws std::overflow_error when
// the value does not fit in 64 bits.
std::uint64_t binomial(std::int64_t n, std::int64_t r);

// a * b and a + b, throwing std::overflow_error on wrap-around.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

// Smallest d >= 1 with base^d >= value (base >= 2, value >= 1).
int ceil_log(std::int64_t base, std::int64_t value);

// All r-subsets of `items` in lexicographic index order; each subset keeps
// the relative order of `items`.
std::vector<std::vector<ElementId>> combinations(
    const std::vector<ElementId>& items, int r);

// Calls visit(subset) for each r-subset, same order as combinations().
template <typename Visit>
void for_each_combination(const std::vector<ElementId>& items, int r,
                          Visit&& visit) {
  const int m = static_cast<int>(items.size());
  if (r < 0 || r > m) return;
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[i] = i;
  std::vector<ElementId> subset(static_cast<std::size_t>(r));
  while (true) {
    for (int i = 0; i < r; ++i) subset[i] = items[idx[i]];
    visit(subset);
    int i = r - 1;
    while (i >= 0 && idx[i] == m - r + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Bit set over element ids; offline algorithms require n <= 64.
using ElementMask = std::uint64_t;
constexpr int kMaxMaskElements = 64;

ElementMask mask_of(const ElementSet& set);
ElementSet set_of(ElementMask mask);

// Sorted-set helpers.
ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_difference(const ElementSet& a, const ElementSet& b);
ElementSet set_intersection(const ElementSet& a, const ElementSet& b);
bool set_contains(const ElementSet& set, ElementId id);
ElementSet sorted_set(std::vector<ElementId> ids);
ElementSet all_elements(int n);

}  // namespace scalesort

#endif  // SCALESORT_COMBINATORICS_HPP_
