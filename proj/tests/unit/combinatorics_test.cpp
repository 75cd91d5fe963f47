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

#include <gtest/gtest.h>

#include <set>
#include <stdexcept>

#include "scalesort/errors.hpp"
#include "scalesort/order.hpp"

namespace scalesort {
namespace {

TEST(BinomialTest, SmallValues) {
  EXPECT_EQ(binomial(10, 2), 45u);
  EXPECT_EQ(binomial(11, 3), 165u);
  EXPECT_EQ(binomial(5, 0), 1u);
  EXPECT_EQ(binomial(5, 6), 0u);
  EXPECT_EQ(binomial(5, -1), 0u);
  EXPECT_EQ(binomial(64, 32), 1832624140942590534u);
}

TEST(BinomialTest, PascalIdentity) {
  for (int n = 1; n <= 60; ++n) {
    for (int r = 1; r < n; ++r) {
      EXPECT_EQ(binomial(n, r), binomial(n - 1, r - 1) + binomial(n - 1, r));
    }
  }
}

TEST(BinomialTest, Overflow) {
  EXPECT_THROW(binomial(200, 100), std::overflow_error);
}

TEST(CeilLogTest, Values) {
  EXPECT_EQ(ceil_log(3, 27), 3);
  EXPECT_EQ(ceil_log(3, 28), 4);
  EXPECT_EQ(ceil_log(2, 1), 1);
  EXPECT_EQ(ceil_log(3, 9), 2);
}

TEST(CombinationsTest, CountAndOrder) {
  const auto all = combinations({0, 1, 2, 3, 4}, 3);
  ASSERT_EQ(all.size(), 10u);
  EXPECT_EQ(all.front(), (std::vector<ElementId>{0, 1, 2}));
  EXPECT_EQ(all.back(), (std::vector<ElementId>{2, 3, 4}));
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_TRUE(combinations({0, 1}, 3).empty());
}

TEST(MaskTest, RoundTrip) {
  const ElementSet set{0, 5, 63};
  EXPECT_EQ(set_of(mask_of(set)), set);
  EXPECT_THROW(mask_of({64}), PreconditionError);
}

TEST(SetOpsTest, Basics) {
  EXPECT_EQ(set_union({1, 3}, {2, 3}), (ElementSet{1, 2, 3}));
  EXPECT_EQ(set_difference({1, 2, 3}, {2}), (ElementSet{1, 3}));
  EXPECT_EQ(set_intersection({1, 2, 3}, {2, 3, 4}), (ElementSet{2, 3}));
  EXPECT_TRUE(set_contains({1, 2}, 2));
  EXPECT_EQ(sorted_set({3, 1, 3}), (ElementSet{1, 3}));
}

TEST(HiddenOrderTest, SeededShuffleIsAPermutation) {
  const HiddenOrder a = HiddenOrder::random(50, 17);
  EXPECT_EQ(a, HiddenOrder::random(50, 17));
  EXPECT_NE(a, HiddenOrder::random(50, 18));
  std::set<int> ranks(a.ranks().begin(), a.ranks().end());
  EXPECT_EQ(ranks.size(), 50u);
  EXPECT_EQ(*ranks.begin(), 1);
  EXPECT_EQ(*ranks.rbegin(), 50);
}

TEST(HiddenOrderTest, Construction) {
  EXPECT_THROW(HiddenOrder::from_ranks({1, 1, 2}), PreconditionError);
  const HiddenOrder o = HiddenOrder::from_ascending({2, 0, 1});
  EXPECT_EQ(o.ranks(), (std::vector<int>{2, 3, 1}));
  EXPECT_EQ(o.ascending(), (std::vector<ElementId>{2, 0, 1}));
  EXPECT_EQ(o.reverse().ascending(), (std::vector<ElementId>{1, 0, 2}));
  EXPECT_EQ(HiddenOrder::reversed(3), HiddenOrder::identity(3).reverse());
}

TEST(SeededRngTest, BelowStaysInRange) {
  SeededRng rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.below(7), 7u);
}

}  // namespace
}  // namespace scalesort
