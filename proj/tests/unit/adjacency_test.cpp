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

#include "scalesort/adjacency.hpp"

#include <gtest/gtest.h>

#include "scalesort/combinatorics.hpp"
#include "scalesort/errors.hpp"

namespace scalesort::offline {
namespace {

// Ids are 0-based: under the identity order id i has rank i + 1.

ResultTable answer(const QueryPlan& plan, const HiddenOrder& order) {
  ResultTable table;
  for (const ElementSet& q : plan.queries) {
    table.add(q, predict_outcome(plan.spec, order.ranks(), q));
  }
  return table;
}

TEST(AdjacencyPlanTest, Sizes) {
  EXPECT_EQ(build_adjacency_plan(10, ScaleSpec(3, {2})).queries.size(), 108u);
  EXPECT_EQ(build_adjacency_plan(12, ScaleSpec(4, {2})).queries.size(), 495u);
  EXPECT_EQ(build_adjacency_plan(14, ScaleSpec(6, {2, 4})).queries.size(),
            495u);
  EXPECT_EQ(adjacency_plan_size(14, ScaleSpec(6, {2, 4})), 495u);
  EXPECT_EQ(build_adjacency_plan(8, ScaleSpec(3, {1})).queries.size(),
            binomial(8, 3));
}

TEST(AdjacencyPlanTest, FansContainTheirReference) {
  const QueryPlan plan = build_adjacency_plan(9, ScaleSpec(4, {2}));
  ASSERT_EQ(plan.reference_sets.size(), 3u);
  for (std::size_t i = 0; i < plan.queries.size(); ++i) {
    const ElementSet& ref = plan.reference_sets[plan.fan_of[i]];
    EXPECT_EQ(set_intersection(plan.queries[i], ref), ref);
  }
}

TEST(AdjacencyPlanTest, RejectsSmallN) {
  EXPECT_THROW(build_adjacency_plan(6, ScaleSpec(4, {2})), PreconditionError);
}

TEST(EliminateNonadjacentTest, SiblingRuleDeletesNonNeighbours) {
  const ScaleSpec spec(3, {2});
  const QueryPlan plan = build_adjacency_plan(7, spec);
  const ResultTable table = answer(plan, HiddenOrder::identity(7));
  // {1,2,3} -> 2 but {1,4,3} -> 3, so 2 and 4 cannot be neighbours.
  ASSERT_EQ(*table.find(ElementSet{1, 2, 3}), ElementSet{2});
  ASSERT_EQ(*table.find(ElementSet{1, 3, 4}), ElementSet{3});
  const AdjacencyMap adj = eliminate_nonadjacent(plan, table);
  EXPECT_FALSE(set_contains(adj.neighbors[2], 4));
  EXPECT_TRUE(set_contains(adj.neighbors[2], 3));
  EXPECT_EQ(adj.support, (ElementSet{1, 2, 3, 4, 5}));
  EXPECT_EQ(walk_path(adj), (std::vector<ElementId>{1, 2, 3, 4, 5}));
}

TEST(EliminateNonadjacentTest, NeverDeletesTrueEdges) {
  const ScaleSpec spec(4, {2});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const HiddenOrder order = HiddenOrder::random(10, seed);
    const QueryPlan plan = build_adjacency_plan(10, spec);
    const AdjacencyMap adj = eliminate_nonadjacent(plan, answer(plan, order));
    const auto asc = order.ascending();
    for (std::size_t i = 1; i + 1 < asc.size() - 2; ++i) {
      EXPECT_TRUE(set_contains(adj.neighbors[asc[i]], asc[i + 1]));
    }
  }
}

TEST(WalkPathTest, ThreeNodePath) {
  AdjacencyMap adj;
  adj.n = 3;
  adj.support = {0, 1, 2};
  adj.neighbors = {{1}, {0, 2}, {1}};
  EXPECT_EQ(walk_path(adj), (std::vector<ElementId>{0, 1, 2}));
  adj.neighbors = {{1, 2}, {0, 2}, {0, 1}};
  EXPECT_THROW(walk_path(adj), InconsistentAnswers);
  EXPECT_FALSE(adj.is_path());
}

TEST(AdjacencySortTest, SymmetricIdentity) {
  const ScaleSpec spec(3, {2});
  Oracle oracle(spec, HiddenOrder::identity(7));
  const SortResult r = adjacency_sort(oracle);
  EXPECT_EQ(r.orientation, Orientation::kReflectionAmbiguous);
  EXPECT_TRUE(equivalent_up_to_ambiguity(r, HiddenOrder::identity(7), spec));
}

TEST(AdjacencySortTest, AsymmetricIdentity) {
  Oracle oracle(ScaleSpec(4, {2}), HiddenOrder::identity(12));
  const SortResult r = adjacency_sort(oracle);
  EXPECT_EQ(r.orientation, Orientation::kResolved);
  EXPECT_EQ(r.middle, (std::vector<ElementId>{1, 2, 3, 4, 5, 6, 7, 8, 9}));
  EXPECT_EQ(r.s_set, (ElementSet{0}));
  EXPECT_EQ(r.l_set, (ElementSet{10, 11}));
  EXPECT_EQ(r.queries_used, 495);
}

TEST(AdjacencySortTest, MirroredAndMinimumScales) {
  for (const ScaleSpec& spec :
       {ScaleSpec(4, {3}), ScaleSpec(4, {4}), ScaleSpec(3, {1})}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const HiddenOrder order = HiddenOrder::random(10, seed);
      Oracle oracle(spec, order);
      EXPECT_TRUE(equivalent_up_to_ambiguity(adjacency_sort(oracle), order,
                                             spec))
          << spec.to_string() << " seed " << seed;
    }
  }
}

}  // namespace
}  // namespace scalesort::offline
