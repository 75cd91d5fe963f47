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

#ifndef SCALESORT_ORACLE_HPP_
#define SCALESORT_ORACLE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "scalesort/combinatorics.hpp"
#include "scalesort/order.hpp"
#include "scalesort/scale.hpp"

namespace scalesort {

// Outcome the scale gives on `query` when element id has rank rank_of[id].
// Only the relative order of the ranks of the queried ids matters. The query
// may be unsorted; the result is sorted.
ElementSet predict_outcome(const ScaleSpec& spec,
                           const std::vector<int>& rank_of,
                           const ElementSet& query);

// Anything that answers scale queries. Algorithms talk only to this.
class QuerySource {
 public:
  virtual ~QuerySource() = default;
  virtual const ScaleSpec& spec() const = 0;
  virtual int n() const = 0;
  // `query` must hold spec().k() distinct ids; returns the sorted outcome.
  virtual ElementSet ask(const ElementSet& query) = 0;
};

struct TranscriptEntry {
  ElementSet query;
  ElementSet outcome;
  friend bool operator==(const TranscriptEntry&,
                         const TranscriptEntry&) = default;
};

struct Transcript {
  ScaleSpec spec{2, {1}};
  int n = 0;
  std::vector<TranscriptEntry> entries;
};

nlohmann::json transcript_to_json(const Transcript& transcript);
// Entries without an "outcome" key (an unanswered plan) get an empty outcome.
Transcript transcript_from_json(const nlohmann::json& doc);

// Simulated instrument over a hidden order. Validates every query, counts it
// and records it. Single-writer; not safe for concurrent use.
class Oracle : public QuerySource {
 public:
  Oracle(ScaleSpec spec, HiddenOrder order);

  const ScaleSpec& spec() const override { return spec_; }
  int n() const override { return order_.n(); }
  ElementSet ask(const ElementSet& query) override { return evaluate(query); }

  // Throws QueryError (kWrongSize, kDuplicateId, kUnknownId) with no state
  // change on malformed input.
  ElementSet evaluate(const ElementSet& query);

  std::int64_t query_count() const {
    return static_cast<std::int64_t>(transcript_.entries.size());
  }
  const Transcript& transcript() const { return transcript_; }
  const HiddenOrder& order() const { return order_; }

 private:
  ScaleSpec spec_;
  HiddenOrder order_;
  Transcript transcript_;
};

// Presents the mirrored scale over the reversed order. Every answer is
// identical to the wrapped source's; only spec() changes.
class MirroredSource : public QuerySource {
 public:
  explicit MirroredSource(QuerySource& inner)
      : inner_(inner), spec_(inner.spec().mirrored()) {}
  const ScaleSpec& spec() const override { return spec_; }
  int n() const override { return inner_.n(); }
  ElementSet ask(const ElementSet& query) override { return inner_.ask(query); }

 private:
  QuerySource& inner_;
  ScaleSpec spec_;
};

// Forwards queries and tallies them under the current stage name.
class TallyingSource : public QuerySource {
 public:
  explicit TallyingSource(QuerySource& inner) : inner_(inner) {}
  const ScaleSpec& spec() const override { return inner_.spec(); }
  int n() const override { return inner_.n(); }
  ElementSet ask(const ElementSet& query) override;

  // Ignored while the stage is locked, so a caller can book a whole nested
  // computation under one name.
  void set_stage(std::string stage) {
    if (!locked_) stage_ = std::move(stage);
  }
  void lock_stage(std::string stage) {
    stage_ = std::move(stage);
    locked_ = true;
  }
  void unlock_stage() { locked_ = false; }
  const std::string& stage() const { return stage_; }
  std::int64_t total() const { return total_; }
  const std::map<std::string, std::int64_t>& tally() const { return tally_; }

 private:
  QuerySource& inner_;
  std::string stage_ = "other";
  bool locked_ = false;
  std::int64_t total_ = 0;
  std::map<std::string, std::int64_t> tally_;
};

// Answers gathered for a batch of queries, keyed by element mask (n <= 64).
class ResultTable {
 public:
  // Throws InconsistentAnswers if the same query was answered differently.
  void add(const ElementSet& query, const ElementSet& outcome);
  const ElementSet* find(ElementMask query) const;
  const ElementSet* find(const ElementSet& query) const {
    return find(mask_of(query));
  }
  std::size_t size() const { return table_.size(); }

  static ResultTable from_transcript(const Transcript& transcript);

 private:
  std::unordered_map<ElementMask, ElementSet> table_;
};

// Answers from a ResultTable; a query outside the table is a
// PreconditionError (the batch did not contain it).
class TableSource : public QuerySource {
 public:
  TableSource(ScaleSpec spec, int n, const ResultTable& table)
      : spec_(std::move(spec)), n_(n), table_(table) {}
  const ScaleSpec& spec() const override { return spec_; }
  int n() const override { return n_; }
  ElementSet ask(const ElementSet& query) override;

 private:
  ScaleSpec spec_;
  int n_;
  const ResultTable& table_;
};

}  // namespace scalesort

#endif  // SCALESORT_ORACLE_HPP_
