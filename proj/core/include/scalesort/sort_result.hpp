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

#ifndef SCALESORT_SORT_RESULT_HPP_
#define SCALESORT_SORT_RESULT_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scalesort/order.hpp"
#include "scalesort/scale.hpp"

namespace scalesort {

enum class Orientation { kResolved, kReflectionAmbiguous };

std::string to_string(Orientation orientation);

struct SortResult {
  std::vector<ElementId> middle;  // ascending, as far as it is determinable
  ElementSet s_set;               // the t1 - 1 smallest, unordered
  ElementSet l_set;               // the k - ts largest, unordered
  Orientation orientation = Orientation::kResolved;
  std::int64_t queries_used = 0;
  std::map<std::string, std::int64_t> stage_queries;
};

// Reverses `middle` and swaps s_set with l_set. Used to undo a mirrored run.
SortResult reflect(SortResult result);

// Ranks a hypothetical order would give: s_set lowest (label order), then
// middle, then l_set (label order). Indexed by element id.
std::vector<int> ranks_of(const SortResult& result, int n);

// True iff s_set/l_set are the true extreme sets and middle is the true order
// of the rest. A reflection_ambiguous result for a symmetric spec may instead
// match the reversed middle with s_set and l_set swapped. Throws
// PreconditionError when the three parts do not partition the universe.
bool equivalent_up_to_ambiguity(const SortResult& result,
                                const HiddenOrder& truth,
                                const ScaleSpec& spec);

nlohmann::json to_json(const SortResult& result);

}  // namespace scalesort

#endif  // SCALESORT_SORT_RESULT_HPP_
