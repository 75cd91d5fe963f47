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

#include "scalesort/sort_result.hpp"

#include <algorithm>

#include "scalesort/combinatorics.hpp"
#include "scalesort/errors.hpp"

namespace scalesort {

std::string to_string(Orientation orientation) {
  return orientation == Orientation::kResolved ? "resolved"
                                               : "reflection_ambiguous";
}

SortResult reflect(SortResult result) {
  std::reverse(result.middle.begin(), result.middle.end());
  std::swap(result.s_set, result.l_set);
  return result;
}

std::vector<int> ranks_of(const SortResult& result, int n) {
  std::vector<int> ranks(static_cast<std::size_t>(n), 0);
  int next = 1;
  for (ElementId id : result.s_set) ranks[id] = next++;
  for (ElementId id : result.middle) ranks[id] = next++;
  for (ElementId id : result.l_set) ranks[id] = next++;
  return ranks;
}

bool equivalent_up_to_ambiguity(const SortResult& result,
                                const HiddenOrder& truth,
                                const ScaleSpec& spec) {
  const int n = truth.n();
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  auto mark = [&](ElementId id) {
    if (id < 0 || id >= n || seen[id]++ != 0) {
      throw PreconditionError("result does not partition the element universe");
    }
  };
  for (ElementId id : result.middle) mark(id);
  for (ElementId id : result.s_set) mark(id);
  for (ElementId id : result.l_set) mark(id);
  if (std::count(seen.begin(), seen.end(), 1) != n) {
    throw PreconditionError("result does not partition the element universe");
  }

  const std::vector<ElementId> asc = truth.ascending();
  const int s_size = spec.s_size();
  const int l_size = spec.l_size();
  if (s_size + l_size > n) return false;
  const ElementSet true_s = sorted_set({asc.begin(), asc.begin() + s_size});
  const ElementSet true_l = sorted_set({asc.end() - l_size, asc.end()});
  const std::vector<ElementId> true_middle(asc.begin() + s_size,
                                           asc.end() - l_size);

  const ElementSet s = sorted_set(result.s_set);
  const ElementSet l = sorted_set(result.l_set);
  if (s == true_s && l == true_l && result.middle == true_middle) return true;

  if (result.orientation == Orientation::kReflectionAmbiguous &&
      spec.is_symmetric()) {
    const std::vector<ElementId> reversed(true_middle.rbegin(),
                                          true_middle.rend());
    return s == true_l && l == true_s && result.middle == reversed;
  }
  return false;
}

nlohmann::json to_json(const SortResult& result) {
  nlohmann::json stages = nlohmann::json::object();
  for (const auto& [name, count] : result.stage_queries) stages[name] = count;
  return {{"middle", result.middle},
          {"s_set", result.s_set},
          {"l_set", result.l_set},
          {"orientation", to_string(result.orientation)},
          {"queries_used", result.queries_used},
          {"stage_queries", std::move(stages)}};
}

}  // namespace scalesort
