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

#ifndef SCALESORT_ORDER_HPP_
#define SCALESORT_ORDER_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "scalesort/scale.hpp"

namespace scalesort {

// Deterministic generator used for every seeded experiment: mt19937_64 (its
// output sequence is fixed by the C++ standard) with rejection-sampled bounded
// draws, so a seed means the same permutation on every platform.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform value in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// The fixed but unknown total order. rank(id) is 1-based, 1 = smallest.
class HiddenOrder {
 public:
  static HiddenOrder identity(int n);
  static HiddenOrder reversed(int n);
  // Fisher-Yates shuffle driven by SeededRng.
  static HiddenOrder random(int n, std::uint64_t seed);
  // Throws PreconditionError unless ranks is a permutation of 1..n.
  static HiddenOrder from_ranks(std::vector<int> ranks);
  // ascending[i] is the element of rank i + 1.
  static HiddenOrder from_ascending(const std::vector<ElementId>& ascending);

  int n() const { return static_cast<int>(ranks_.size()); }
  int rank(ElementId id) const { return ranks_[static_cast<std::size_t>(id)]; }
  const std::vector<int>& ranks() const { return ranks_; }
  std::vector<ElementId> ascending() const;
  HiddenOrder reverse() const;

  friend bool operator==(const HiddenOrder&, const HiddenOrder&) = default;

 private:
  explicit HiddenOrder(std::vector<int> ranks) : ranks_(std::move(ranks)) {}
  std::vector<int> ranks_;
};

}  // namespace scalesort

#endif  // SCALESORT_ORDER_HPP_
