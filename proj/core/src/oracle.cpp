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

#include "scalesort/oracle.hpp"

#include <algorithm>

#include "scalesort/errors.hpp"

namespace scalesort {

ElementSet predict_outcome(const ScaleSpec& spec,
                           const std::vector<int>& rank_of,
                           const ElementSet& query) {
  ElementSet by_rank = query;
  std::sort(by_rank.begin(), by_rank.end(), [&](ElementId a, ElementId b) {
    return rank_of[a] < rank_of[b];
  });
  ElementSet out;
  out.reserve(spec.outputs().size());
  for (int t : spec.outputs()) out.push_back(by_rank[t - 1]);
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json transcript_to_json(const Transcript& transcript) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : transcript.entries) {
    entries.push_back({{"query", e.query}, {"outcome", e.outcome}});
  }
  return {{"spec", transcript.spec.to_string()},
          {"n", transcript.n},
          {"entries", std::move(entries)}};
}

Transcript transcript_from_json(const nlohmann::json& doc) {
  try {
    Transcript t;
    t.spec = ScaleSpec::parse(doc.at("spec").get<std::string>());
    t.n = doc.at("n").get<int>();
    for (const auto& e : doc.at("entries")) {
      TranscriptEntry entry;
      entry.query = sorted_set(e.at("query").get<ElementSet>());
      if (e.contains("outcome")) {
        entry.outcome = sorted_set(e.at("outcome").get<ElementSet>());
      }
      t.entries.push_back(std::move(entry));
    }
    return t;
  } catch (const nlohmann::json::exception& err) {
    throw PreconditionError(std::string("malformed transcript: ") + err.what());
  }
}

Oracle::Oracle(ScaleSpec spec, HiddenOrder order)
    : spec_(std::move(spec)), order_(std::move(order)) {
  if (order_.n() < spec_.k()) {
    throw PreconditionError("oracle needs at least k elements");
  }
  transcript_.spec = spec_;
  transcript_.n = order_.n();
}

ElementSet Oracle::evaluate(const ElementSet& query) {
  if (static_cast<int>(query.size()) != spec_.k()) {
    throw QueryError(QueryErrorKind::kWrongSize,
                     "query has " + std::to_string(query.size()) +
                         " elements, scale takes " +
                         std::to_string(spec_.k()));
  }
  for (ElementId id : query) {
    if (id < 0 || id >= order_.n()) {
      throw QueryError(QueryErrorKind::kUnknownId,
                       "unknown element id " + std::to_string(id));
    }
  }
  ElementSet sorted = query;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw QueryError(QueryErrorKind::kDuplicateId, "duplicate element id");
  }
  ElementSet outcome = predict_outcome(spec_, order_.ranks(), sorted);
  transcript_.entries.push_back({std::move(sorted), outcome});
  return outcome;
}

ElementSet TallyingSource::ask(const ElementSet& query) {
  ++tally_[stage_];
  ++total_;
  return inner_.ask(query);
}

void ResultTable::add(const ElementSet& query, const ElementSet& outcome) {
  const ElementMask key = mask_of(query);
  auto [it, inserted] = table_.emplace(key, outcome);
  if (!inserted && it->second != outcome) {
    throw InconsistentAnswers("same query answered two different ways");
  }
}

const ElementSet* ResultTable::find(ElementMask query) const {
  auto it = table_.find(query);
  return it == table_.end() ? nullptr : &it->second;
}

ResultTable ResultTable::from_transcript(const Transcript& transcript) {
  ResultTable table;
  for (const auto& e : transcript.entries) {
    if (static_cast<int>(e.outcome.size()) != transcript.spec.s()) {
      throw PreconditionError("transcript entry lacks a complete outcome");
    }
    if (!std::includes(e.query.begin(), e.query.end(), e.outcome.begin(),
                       e.outcome.end())) {
      throw InconsistentAnswers("outcome is not a subset of its query");
    }
    table.add(e.query, e.outcome);
  }
  return table;
}

ElementSet TableSource::ask(const ElementSet& query) {
  ElementSet sorted = sorted_set(query);
  if (static_cast<int>(sorted.size()) != spec_.k()) {
    throw QueryError(QueryErrorKind::kWrongSize, "query of wrong size");
  }
  const ElementSet* hit = table_.find(sorted);
  if (hit == nullptr) {
    throw PreconditionError("query not present in the answered batch");
  }
  return *hit;
}

}  // namespace scalesort
