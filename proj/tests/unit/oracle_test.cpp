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

#include <gtest/gtest.h>

#include <algorithm>

#include "scalesort/combinatorics.hpp"
#include "scalesort/errors.hpp"
#include "scalesort/order.hpp"
#include "scalesort/sort_result.hpp"

namespace scalesort {
namespace {

// Ids are 0-based: under the identity order id i has rank i + 1.

TEST(OracleTest, ReturnsRequestedRankPositions) {
  Oracle oracle(ScaleSpec(7, {2, 6}), HiddenOrder::identity(8));
  EXPECT_EQ(oracle.evaluate({0, 1, 2, 3, 4, 5, 6}), (ElementSet{1, 5}));
  EXPECT_EQ(oracle.query_count(), 1);
}

TEST(OracleTest, MinimumScaleReturnsSmallest) {
  const HiddenOrder order = HiddenOrder::random(9, 5);
  Oracle oracle(ScaleSpec(3, {1}), order);
  const ElementSet q{2, 4, 8};
  const ElementId expected = *std::min_element(
      q.begin(), q.end(),
      [&](ElementId a, ElementId b) { return order.rank(a) < order.rank(b); });
  EXPECT_EQ(oracle.evaluate(q), ElementSet{expected});
}

TEST(OracleTest, ExtremesNeverReturned) {
  Oracle oracle(ScaleSpec(7, {2, 6}), HiddenOrder::identity(8));
  ElementSet seen;
  for (const auto& q : combinations(all_elements(8), 7)) {
    seen = set_union(seen, oracle.evaluate(q));
  }
  EXPECT_EQ(set_difference(all_elements(8), seen), (ElementSet{0, 3, 4, 7}));
}

TEST(OracleTest, MalformedQueriesLeaveNoTrace) {
  Oracle oracle(ScaleSpec(3, {2}), HiddenOrder::identity(5));
  auto kind_of = [&](const ElementSet& q) {
    try {
      oracle.evaluate(q);
    } catch (const QueryError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error";
    return QueryErrorKind::kWrongSize;
  };
  EXPECT_EQ(kind_of({0, 1}), QueryErrorKind::kWrongSize);
  EXPECT_EQ(kind_of({0, 1, 1}), QueryErrorKind::kDuplicateId);
  EXPECT_EQ(kind_of({0, 1, 9}), QueryErrorKind::kUnknownId);
  EXPECT_EQ(oracle.query_count(), 0);
  EXPECT_TRUE(oracle.transcript().entries.empty());
}

TEST(OracleTest, TranscriptMatchesEvaluationRule) {
  const ScaleSpec spec(4, {2, 3});
  const HiddenOrder order = HiddenOrder::random(7, 11);
  Oracle oracle(spec, order);
  for (const auto& q : combinations(all_elements(7), 4)) oracle.evaluate(q);
  EXPECT_EQ(oracle.query_count(),
            static_cast<std::int64_t>(oracle.transcript().entries.size()));
  for (const auto& e : oracle.transcript().entries) {
    EXPECT_EQ(e.outcome, predict_outcome(spec, order.ranks(), e.query));
  }
}

TEST(OracleTest, RelabelingIsEquivariant) {
  const ScaleSpec spec(4, {2});
  const HiddenOrder order = HiddenOrder::random(8, 3);
  // Relabel id i -> perm[i]; the relabeled order gives perm[i] rank(i).
  const std::vector<int> perm = HiddenOrder::random(8, 99).ranks();
  std::vector<int> relabeled(8);
  for (int i = 0; i < 8; ++i) relabeled[perm[i] - 1] = order.rank(i);
  const std::vector<int>& ranks = order.ranks();
  for (const auto& q : combinations(all_elements(8), 4)) {
    ElementSet mapped;
    for (ElementId id : q) mapped.push_back(perm[id] - 1);
    ElementSet expected;
    for (ElementId id : predict_outcome(spec, ranks, q)) {
      expected.push_back(perm[id] - 1);
    }
    EXPECT_EQ(predict_outcome(spec, relabeled, sorted_set(mapped)),
              sorted_set(expected));
  }
}

TEST(OracleTest, SymmetricScaleIgnoresReversal) {
  const ScaleSpec spec(5, {2, 4});
  const HiddenOrder order = HiddenOrder::random(8, 4);
  const HiddenOrder reversed = order.reverse();
  for (const auto& q : combinations(all_elements(8), 5)) {
    EXPECT_EQ(predict_outcome(spec, order.ranks(), q),
              predict_outcome(spec, reversed.ranks(), q));
  }
}

TEST(OracleTest, EveryMiddleElementSurfacesUnderFullEnumeration) {
  for (const ScaleSpec& spec :
       {ScaleSpec(3, {2}), ScaleSpec(4, {2}), ScaleSpec(4, {2, 3})}) {
    for (int n = 2 * spec.k() + 1; n <= 10; ++n) {
      const HiddenOrder order = HiddenOrder::random(n, n);
      ElementSet seen;
      for (const auto& q : combinations(all_elements(n), spec.k())) {
        seen = set_union(seen, predict_outcome(spec, order.ranks(), q));
      }
      EXPECT_EQ(static_cast<int>(seen.size()),
                n - spec.s_size() - spec.l_size());
    }
  }
}

TEST(TranscriptTest, JsonRoundTrip) {
  Oracle oracle(ScaleSpec(3, {1}), HiddenOrder::identity(4));
  oracle.evaluate({0, 1, 2});
  oracle.evaluate({1, 2, 3});
  const Transcript back = transcript_from_json(
      nlohmann::json::parse(transcript_to_json(oracle.transcript()).dump()));
  EXPECT_EQ(back.spec, oracle.transcript().spec);
  EXPECT_EQ(back.n, 4);
  EXPECT_EQ(back.entries, oracle.transcript().entries);
  EXPECT_THROW(transcript_from_json(nlohmann::json::parse("{\"n\":3}")),
               PreconditionError);
}

TEST(ResultTableTest, DetectsConflicts) {
  ResultTable table;
  table.add({0, 1, 2}, {1});
  table.add({2, 1, 0}, {1});
  EXPECT_EQ(table.size(), 1u);
  EXPECT_THROW(table.add({0, 1, 2}, {2}), InconsistentAnswers);
  ASSERT_NE(table.find(ElementSet{0, 1, 2}), nullptr);
  EXPECT_EQ(table.find(ElementSet{0, 1, 3}), nullptr);
}

TEST(TallyingSourceTest, BooksQueriesPerStage) {
  Oracle oracle(ScaleSpec(3, {1}), HiddenOrder::identity(5));
  TallyingSource tally(oracle);
  tally.set_stage("a");
  tally.ask({0, 1, 2});
  tally.lock_stage("b");
  tally.set_stage("c");
  tally.ask({0, 1, 3});
  tally.unlock_stage();
  tally.set_stage("c");
  tally.ask({0, 1, 4});
  EXPECT_EQ(tally.total(), 3);
  EXPECT_EQ(tally.tally(), (std::map<std::string, std::int64_t>{
                               {"a", 1}, {"b", 1}, {"c", 1}}));
}

TEST(EquivalenceTest, AcceptsExactOrder) {
  SortResult r;
  r.middle = {1, 2, 3};
  r.s_set = {0};
  r.l_set = {4, 5};
  EXPECT_TRUE(equivalent_up_to_ambiguity(r, HiddenOrder::identity(6),
                                         ScaleSpec(4, {2})));
}

TEST(EquivalenceTest, AcceptsReflectionOnlyWhenSymmetric) {
  SortResult r;
  r.middle = {3, 2, 1};
  r.s_set = {4};
  r.l_set = {0};
  r.orientation = Orientation::kReflectionAmbiguous;
  EXPECT_TRUE(equivalent_up_to_ambiguity(r, HiddenOrder::identity(5),
                                         ScaleSpec(3, {2})));
  r.orientation = Orientation::kResolved;
  EXPECT_FALSE(equivalent_up_to_ambiguity(r, HiddenOrder::identity(5),
                                          ScaleSpec(3, {2})));
}

TEST(EquivalenceTest, RejectsWrongOrder) {
  SortResult r;
  r.middle = {2, 1, 3};
  r.s_set = {0};
  r.l_set = {4, 5};
  EXPECT_FALSE(equivalent_up_to_ambiguity(r, HiddenOrder::identity(6),
                                          ScaleSpec(4, {2})));
}

TEST(EquivalenceTest, RejectsNonPartition) {
  SortResult r;
  r.middle = {1, 2};
  r.s_set = {0};
  r.l_set = {4, 5};
  EXPECT_THROW(equivalent_up_to_ambiguity(r, HiddenOrder::identity(6),
                                          ScaleSpec(4, {2})),
               PreconditionError);
}

}  // namespace
}  // namespace scalesort
