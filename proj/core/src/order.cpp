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

#include "scalesort/order.hpp"

#include <limits>
#include <numeric>
#include <utility>

#include "scalesort/errors.hpp"

namespace scalesort {

std::uint64_t SeededRng::below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("SeededRng::below needs bound > 0");
  // Values below `threshold` would bias the modulo; reject them.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

HiddenOrder HiddenOrder::identity(int n) {
  if (n < 0) throw PreconditionError("negative element count");
  std::vector<int> ranks(static_cast<std::size_t>(n));
  std::iota(ranks.begin(), ranks.end(), 1);
  return HiddenOrder(std::move(ranks));
}

HiddenOrder HiddenOrder::reversed(int n) { return identity(n).reverse(); }

HiddenOrder HiddenOrder::random(int n, std::uint64_t seed) {
  std::vector<int> ranks = identity(n).ranks_;
  SeededRng rng(seed);
  for (std::size_t i = ranks.size(); i > 1; --i) {
    std::swap(ranks[i - 1], ranks[rng.below(i)]);
  }
  return HiddenOrder(std::move(ranks));
}

HiddenOrder HiddenOrder::from_ranks(std::vector<int> ranks) {
  std::vector<bool> seen(ranks.size() + 1, false);
  for (int r : ranks) {
    if (r < 1 || r > static_cast<int>(ranks.size()) || seen[r]) {
      throw PreconditionError("rank array is not a permutation of 1..n");
    }
    seen[r] = true;
  }
  return HiddenOrder(std::move(ranks));
}

HiddenOrder HiddenOrder::from_ascending(
    const std::vector<ElementId>& ascending) {
  std::vector<int> ranks(ascending.size(), 0);
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    const ElementId id = ascending[i];
    if (id < 0 || id >= static_cast<ElementId>(ascending.size()) ||
        ranks[id] != 0) {
      throw PreconditionError("sequence is not a permutation of 0..n-1");
    }
    ranks[id] = static_cast<int>(i) + 1;
  }
  return HiddenOrder(std::move(ranks));
}

std::vector<ElementId> HiddenOrder::ascending() const {
  std::vector<ElementId> out(ranks_.size());
  for (std::size_t id = 0; id < ranks_.size(); ++id) {
    out[ranks_[id] - 1] = static_cast<ElementId>(id);
  }
  return out;
}

HiddenOrder HiddenOrder::reverse() const {
  std::vector<int> ranks = ranks_;
  const int n = this->n();
  for (int& r : ranks) r = n + 1 - r;
  return HiddenOrder(std::move(ranks));
}

}  // namespace scalesort
