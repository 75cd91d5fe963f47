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

// Verification and experiment plumbing: a brute-force consistency oracle,
// single-experiment runner with bound checks, and benchmark sweeps.

#ifndef SCALESORT_HARNESS_HPP_
#define SCALESORT_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "scalesort/oracle.hpp"
#include "scalesort/sort_result.hpp"

namespace scalesort::harness {

inline constexpr int kMaxEnumerationN = 9;

enum class AmbiguityClass {
  kMiddleDetermined,       // every consistent order has the same S, L, middle
  kMiddleUpToReflection,   // ... or its mirror image, and both occur
  kOther,
};

std::string to_string(AmbiguityClass cls);

struct ConsistencyReport {
  int n = 0;
  std::uint64_t consistent_count = 0;
  AmbiguityClass cls = AmbiguityClass::kOther;
  // (t1 - 1)! (k - ts)!, doubled for a symmetric scale.
  std::uint64_t theoretical_count = 0;
  // cls is the theoretical class for the scale and the count matches it.
  bool matches_theory = false;
  // S, L and middle of the first consistent order found (lexicographic in
  // rank vectors); empty if nothing is consistent.
  SortResult representative;
};

// Enumerates all n! orders and keeps those reproducing every entry.
// Throws PreconditionError for n > kMaxEnumerationN.
ConsistencyReport consistent_permutations(const Transcript& transcript, int n,
                                          const ScaleSpec& spec);

// True iff `result` claims exactly what the consistent set supports: a
// resolved result needs a determined class and the same partition/middle; an
// ambiguous one needs the reflection class and one of the two mirror images.
bool claims_match(const ConsistencyReport& report, const SortResult& result);

nlohmann::json to_json(const ConsistencyReport& report);

enum class Algorithm { kOnline, kOfflineAdjacency, kOfflineRecursive };

std::string to_string(Algorithm algorithm);
// Accepts "online", "offline_adjacency"/"adjacency",
// "offline_recursive"/"recursive".
Algorithm parse_algorithm(std::string_view name);

// Whether the algorithm's preconditions hold for (spec, n).
bool applicable(Algorithm algorithm, const ScaleSpec& spec, int n);

// online (s = 1): n + 2 d n' with n' = n - k + 1 and d = ceil(log_k' n')
// computed on the scale the algorithm runs (mirrored when t - 1 > k - t);
// online (s > 1): none; adjacency / recursive: exact plan size.
std::optional<std::uint64_t> query_bound(Algorithm algorithm,
                                         const ScaleSpec& spec, int n);

struct ExperimentOptions {
  bool timing = false;              // measure millis (non-deterministic)
  bool recursive_shortcut = false;  // single-fan plan for t = 2
};

struct ExperimentReport {
  ScaleSpec spec{2, {1}};
  int n = 0;
  std::optional<std::uint64_t> seed;  // absent for an explicit order
  Algorithm algorithm = Algorithm::kOnline;
  std::int64_t queries_used = 0;
  std::optional<std::uint64_t> bound;
  bool bound_satisfied = true;
  bool correct = false;
  double millis = 0.0;
  SortResult result;
  Transcript transcript;
};

ExperimentReport run_experiment(const ScaleSpec& spec, const HiddenOrder& order,
                                Algorithm algorithm,
                                std::optional<std::uint64_t> seed = {},
                                const ExperimentOptions& options = {});
ExperimentReport run_experiment(const ScaleSpec& spec, int n,
                                std::uint64_t seed, Algorithm algorithm,
                                const ExperimentOptions& options = {});

nlohmann::json to_json(const ExperimentReport& report);

struct SweepOptions {
  std::uint64_t base_seed = 1;        // trial i uses base_seed + i
  bool versus_lower_bound = false;    // ratio against the offline lower bound
  ExperimentOptions experiment;
};

struct SweepRow {
  std::string spec;
  int n = 0;
  std::uint64_t seed = 0;
  std::string algorithm;
  std::int64_t queries_used = 0;
  std::optional<std::uint64_t> bound;
  double ratio = 0.0;  // queries_used / bound, 0 without a bound
  bool correct = false;
  bool bound_satisfied = true;
  double millis = 0.0;
};

// One row per (n, trial, algorithm), sorted by (spec, n, seed, algorithm).
std::vector<SweepRow> bench_sweep(const ScaleSpec& spec,
                                  const std::vector<int>& n_list, int trials,
                                  const std::vector<Algorithm>& algorithms,
                                  const SweepOptions& options = {});

inline constexpr std::string_view kCsvHeader =
    "spec,n,seed,algorithm,queries_used,bound,ratio,correct,millis";

std::string to_csv(const std::vector<SweepRow>& rows);

struct VerifySummary {
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  std::vector<std::string> failure_notes;  // first few only
};

// Every singleton scale with k in {3, 4}, every applicable algorithm, every
// order of every n in [k + 1, max_n]: correctness, bound, and claims_match.
VerifySummary verify_exhaustive(int max_n);

}  // namespace scalesort::harness

#endif  // SCALESORT_HARNESS_HPP_
