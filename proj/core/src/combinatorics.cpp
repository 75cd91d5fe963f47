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

#include "scalesort/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "scalesort/errors.hpp"

namespace scalesort {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("64-bit overflow in multiplication");
  }
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("64-bit overflow in addition");
  }
  return out;
}

std::uint64_t binomial(std::int64_t n, std::int64_t r) {
  if (n < 0 || r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t value = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    // value * (n - r + i) / i is exact; divide out the gcd first so the
    // intermediate product only overflows when the result itself might.
    std::uint64_t num = static_cast<std::uint64_t>(n - r + i);
    std::uint64_t den = static_cast<std::uint64_t>(i);
    const std::uint64_t g = std::gcd(value, den);
    value /= g;
    den /= g;
    num /= den;  // den now divides num because C(n-r+i, i) is integral
    value = checked_mul(value, num);
  }
  return value;
}

int ceil_log(std::int64_t base, std::int64_t value) {
  if (base < 2 || value < 1) throw PreconditionError("ceil_log domain");
  int d = 1;
  std::int64_t power = base;
  while (power < value) {
    power *= base;
    ++d;
  }
  return d;
}

std::vector<std::vector<ElementId>> combinations(
    const std::vector<ElementId>& items, int r) {
  std::vector<std::vector<ElementId>> out;
  for_each_combination(items, r,
                       [&](const std::vector<ElementId>& s) { out.push_back(s); });
  return out;
}

ElementMask mask_of(const ElementSet& set) {
  ElementMask mask = 0;
  for (ElementId id : set) {
    if (id < 0 || id >= kMaxMaskElements) {
      throw PreconditionError("element id does not fit a 64-bit mask");
    }
    mask |= ElementMask{1} << id;
  }
  return mask;
}

ElementSet set_of(ElementMask mask) {
  ElementSet out;
  out.reserve(static_cast<std::size_t>(std::popcount(mask)));
  while (mask != 0) {
    out.push_back(static_cast<ElementId>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

bool set_contains(const ElementSet& set, ElementId id) {
  return std::binary_search(set.begin(), set.end(), id);
}

ElementSet sorted_set(std::vector<ElementId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

ElementSet all_elements(int n) {
  ElementSet out(static_cast<std::size_t>(n));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

}  // namespace scalesort
