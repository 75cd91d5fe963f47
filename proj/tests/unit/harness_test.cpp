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

#include "scalesort/harness.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "scalesort/combinatorics.hpp"
#include "scalesort/errors.hpp"

namespace scalesort::harness {
namespace {

Transcript full_transcript(const ScaleSpec& spec, const HiddenOrder& order) {
  Oracle oracle(spec, order);
  for (const auto& q : combinations(all_elements(order.n()), spec.k())) {
    oracle.evaluate(q);
  }
  return oracle.transcript();
}

TEST(ConsistentPermutationsTest, EmptyTranscript) {
  Transcript empty;
  empty.spec = ScaleSpec(3, {2});
  empty.n = 4;
  const ConsistencyReport r = consistent_permutations(empty, 4, empty.spec);
  EXPECT_EQ(r.consistent_count, 24u);
  EXPECT_EQ(r.cls, AmbiguityClass::kOther);
}

TEST(ConsistentPermutationsTest, MedianOfThreeAllQueries) {
  const ScaleSpec spec(3, {2});
  const ConsistencyReport r = consistent_permutations(
      full_transcript(spec, HiddenOrder::identity(5)), 5, spec);
  EXPECT_EQ(r.consistent_count, 2u);
  EXPECT_EQ(r.cls, AmbiguityClass::kMiddleUpToReflection);
  EXPECT_TRUE(r.matches_theory);
}

TEST(ConsistentPermutationsTest, SecondOfFourAllQueries) {
  const ScaleSpec spec(4, {2});
  const ConsistencyReport r = consistent_permutations(
      full_transcript(spec, HiddenOrder::identity(6)), 6, spec);
  EXPECT_EQ(r.consistent_count, 2u);
  EXPECT_EQ(r.cls, AmbiguityClass::kMiddleDetermined);
  EXPECT_TRUE(r.matches_theory);
}

TEST(ConsistentPermutationsTest, BottomRunPairIsUnorderable) {
  // Outputs {1, 2}: the two smallest are indistinguishable, although the
  // theory for S = {} would predict a unique order.
  const ScaleSpec spec(3, {1, 2});
  const ConsistencyReport r = consistent_permutations(
      full_transcript(spec, HiddenOrder::identity(7)), 7, spec);
  EXPECT_EQ(r.consistent_count, 2u);
  EXPECT_EQ(r.cls, AmbiguityClass::kOther);
  EXPECT_FALSE(r.matches_theory);
}

TEST(ConsistentPermutationsTest, RejectsLargeN) {
  Transcript empty;
  EXPECT_THROW(consistent_permutations(empty, 10, ScaleSpec(3, {2})),
               PreconditionError);
}

TEST(ClaimsMatchTest, UnderAndOverClaims) {
  const ScaleSpec spec(4, {2});
  const HiddenOrder order = HiddenOrder::identity(6);
  const ConsistencyReport full =
      consistent_permutations(full_transcript(spec, order), 6, spec);
  SortResult r;
  r.middle = {1, 2, 3};
  r.s_set = {0};
  r.l_set = {4, 5};
  EXPECT_TRUE(claims_match(full, r));
  r.orientation = Orientation::kReflectionAmbiguous;
  EXPECT_FALSE(claims_match(full, r));
  Transcript partial = full_transcript(spec, order);
  partial.entries.resize(3);
  r.orientation = Orientation::kResolved;
  EXPECT_FALSE(claims_match(consistent_permutations(partial, 6, spec), r));
}

TEST(RunExperimentTest, OnlineWithinBound) {
  const ExperimentReport r =
      run_experiment(ScaleSpec(4, {2}), 30, 7, Algorithm::kOnline);
  EXPECT_TRUE(r.correct);
  ASSERT_TRUE(r.bound.has_value());
  EXPECT_EQ(*r.bound, 192u);
  EXPECT_LE(r.queries_used, 192);
  EXPECT_TRUE(r.bound_satisfied);
}

TEST(RunExperimentTest, OfflinePlanSizes) {
  const ExperimentReport adj =
      run_experiment(ScaleSpec(3, {2}), 10, 1, Algorithm::kOfflineAdjacency);
  EXPECT_EQ(adj.queries_used, 108);
  EXPECT_TRUE(adj.correct);
  const ExperimentReport rec =
      run_experiment(ScaleSpec(4, {2}), 12, 1, Algorithm::kOfflineRecursive);
  EXPECT_EQ(rec.queries_used, 661);
  EXPECT_TRUE(rec.correct);
}

TEST(RunExperimentTest, JsonIsDeterministic) {
  const auto once = [] {
    return to_json(run_experiment(ScaleSpec(5, {2, 4}), 15, 3,
                                  Algorithm::kOnline))
        .dump();
  };
  EXPECT_EQ(once(), once());
}

TEST(BenchSweepTest, OnlineRatioStaysSmall) {
  const ScaleSpec spec(4, {2});
  const auto rows = bench_sweep(spec, {20, 40, 80}, 3, {Algorithm::kOnline});
  ASSERT_EQ(rows.size(), 9u);
  for (const SweepRow& row : rows) {
    EXPECT_TRUE(row.correct);
    const double n_prime = row.n - 3;
    const double scale = n_prime * std::log(n_prime) / std::log(3.0);
    EXPECT_LE(row.queries_used / scale, 3.0) << "n=" << row.n;
  }
}

TEST(BenchSweepTest, AdjacencyVersusLowerBound) {
  SweepOptions options;
  options.versus_lower_bound = true;
  const auto rows = bench_sweep(ScaleSpec(3, {2}), {8, 9, 10, 11, 12, 13, 14},
                                1, {Algorithm::kOfflineAdjacency}, options);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[2].n, 10);
  EXPECT_EQ(rows[2].queries_used, 108);
  EXPECT_EQ(*rows[2].bound, 15u);
  EXPECT_DOUBLE_EQ(rows[2].ratio, 7.2);
}

TEST(BenchSweepTest, EmptyListGivesHeaderOnly) {
  const auto rows = bench_sweep(ScaleSpec(3, {2}), {}, 5, {Algorithm::kOnline});
  EXPECT_TRUE(rows.empty());
  EXPECT_EQ(to_csv(rows), std::string(kCsvHeader) + "\n");
}

TEST(BenchSweepTest, RowsAreSorted) {
  const auto rows = bench_sweep(ScaleSpec(3, {2}), {12, 9}, 2,
                                {Algorithm::kOnline, Algorithm::kOfflineAdjacency});
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows.front().n, 9);
  EXPECT_EQ(rows.front().algorithm, "offline_adjacency");
  EXPECT_EQ(to_csv(rows), to_csv(bench_sweep(
                              ScaleSpec(3, {2}), {12, 9}, 2,
                              {Algorithm::kOnline,
                               Algorithm::kOfflineAdjacency})));
}

TEST(AlgorithmTest, ParseNames) {
  EXPECT_EQ(parse_algorithm("adjacency"), Algorithm::kOfflineAdjacency);
  EXPECT_EQ(parse_algorithm("offline_recursive"), Algorithm::kOfflineRecursive);
  EXPECT_EQ(to_string(Algorithm::kOnline), "online");
  EXPECT_THROW(parse_algorithm("bogus"), PreconditionError);
}

TEST(VerifyExhaustiveTest, SmallUniverse) {
  const VerifySummary summary = verify_exhaustive(6);
  EXPECT_GT(summary.trials, 0);
  EXPECT_EQ(summary.failures, 0)
      << (summary.failure_notes.empty() ? "" : summary.failure_notes.front());
}

}  // namespace
}  // namespace scalesort::harness
