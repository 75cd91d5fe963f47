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

// Non-adaptive sorting by deduction: answer one batch (the closure of a small
// superset plus every fan of its (t-1)-subsets), infer the outcome of any
// other query from response multiplicities, and replay the online algorithm
// against the inferred answers.

#ifndef SCALESORT_RECURSIVE_HPP_
#define SCALESORT_RECURSIVE_HPP_

#include <array>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scalesort/oracle.hpp"
#include "scalesort/sort_result.hpp"

namespace scalesort::offline {

// ceil(C(n, k - t + 1) / C(k, k - t + 1)) with t replaced by
// min(t, k + 1 - t). Throws PreconditionError unless 1 <= t <= k <= n and
// std::overflow_error if C(n, .) exceeds 64 bits.
std::uint64_t offline_lower_bound(std::int64_t n, std::int64_t k,
                                  std::int64_t t);

// Given the answers on all k-subsets of a (k + 1)-set, returns (z_t, z_{t+1}),
// the two elements that ever come back (z_t has multiplicity k + 1 - t).
// Throws PreconditionError for t = (k + 1) / 2 (equal multiplicities) and
// InconsistentAnswers for any other shape.
std::pair<ElementId, ElementId> find_ordered_pair(
    const ScaleSpec& spec, const std::vector<TranscriptEntry>& results);

struct RecursivePlan {
  ScaleSpec spec{2, {1}};
  ScaleSpec effective{2, {1}};  // t <= (k + 1) / 2 after mirroring
  bool mirrored = false;
  bool t2_shortcut = false;
  int n = 0;
  int t = 1;  // output position of `effective`
  ElementSet superset;
  std::vector<ElementSet> closure_queries;
  std::vector<ElementSet> fan_queries;  // not deduplicated

  std::vector<ElementSet> all_queries() const;
  std::size_t size() const {
    return closure_queries.size() + fan_queries.size();
  }
};

// Superset = lowest k + t - 2 labels; closure = its k-subsets; fans = every
// query containing a (t-1)-subset of it. t = 1 degenerates to all C(n, k)
// queries. With t2_shortcut (t = 2 only) the plan is the fan of element 0.
// Requires a singleton scale, 2k < n <= 64.
RecursivePlan build_recursive_plan(int n, const ScaleSpec& spec,
                                   bool t2_shortcut = false);
RecursivePlan build_recursive_plan(int n, int k, int t);

// C(k+t-2, k) + C(k+t-2, t-1) * C(n-t+1, k-t+1) for the normalized t.
std::uint64_t recursive_plan_size(int n, const ScaleSpec& spec);

// Answers unqueried queries from queries containing a chain
// x_1 < ... < x_r. A query holding x_1..x_j but not y = x_{j+1} is resolved
// from the probes q - a + y (a outside the prefix), one level deeper.
class KnowledgeBase {
 public:
  // `anchors_above` are elements known to exceed every chain element; they
  // are only needed to break multiplicity ties.
  KnowledgeBase(ScaleSpec spec, const ResultTable& known,
                std::vector<ElementId> chain, ElementSet anchors_above);

  const ScaleSpec& spec() const { return spec_; }
  const std::vector<ElementId>& chain() const { return chain_; }
  const ElementSet& anchors_above() const { return anchors_; }

  ElementSet deduce(const ElementSet& query);

  // (a, response) for every probe of `query` at its chain level.
  std::vector<std::pair<ElementId, ElementId>> probe(const ElementSet& query);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  ElementId resolve(ElementMask query);
  int chain_index(ElementId id) const { return index_[id]; }
  int level(ElementMask query) const;

  ScaleSpec spec_;
  const ResultTable& known_;
  std::vector<ElementId> chain_;
  ElementSet anchors_;
  std::array<int, kMaxMaskElements> index_{};
  std::unordered_map<ElementMask, ElementId> memo_;
};

ElementSet deduce_query(KnowledgeBase& kb, const ElementSet& query);

// Answers queries through deduction.
class DeducingSource : public QuerySource {
 public:
  DeducingSource(KnowledgeBase& kb, int n) : kb_(kb), n_(n) {}
  const ScaleSpec& spec() const override { return kb_.spec(); }
  int n() const override { return n_; }
  ElementSet ask(const ElementSet& query) override { return kb_.deduce(query); }

 private:
  KnowledgeBase& kb_;
  int n_;
};

struct SupersetOrder {
  std::vector<ElementId> chain;  // t - 1 elements, ascending
  ElementSet anchors_above;
};

// Orders part of the superset using closure answers only: for t >= 3 the
// online algorithm on the superset yields its t - 1 middle elements; for
// t = 2 it runs on the superset plus one extra element (all of whose
// k-subsets lie in the batch) and keeps a middle element of the superset.
SupersetOrder order_superset(const RecursivePlan& plan,
                             const ResultTable& results);

SortResult recursive_solve(const RecursivePlan& plan,
                           const ResultTable& results);

// Builds the plan, submits it as one batch, and reconstructs.
SortResult recursive_sort(QuerySource& source, bool t2_shortcut = false);

}  // namespace scalesort::offline

#endif  // SCALESORT_RECURSIVE_HPP_
