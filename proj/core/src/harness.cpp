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

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <tuple>

#include "scalesort/adjacency.hpp"
#include "scalesort/combinatorics.hpp"
#include "scalesort/errors.hpp"
#include "scalesort/online.hpp"
#include "scalesort/recursive.hpp"

namespace scalesort::harness {
namespace {

std::uint64_t factorial(int m) {
  std::uint64_t f = 1;
  for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

SortResult signature(const std::vector<int>& ranks, const ScaleSpec& spec) {
  const int n = static_cast<int>(ranks.size());
  std::vector<ElementId> asc(static_cast<std::size_t>(n));
  for (int id = 0; id < n; ++id) asc[ranks[id] - 1] = id;
  SortResult sig;
  const int s = spec.s_size();
  const int l = spec.l_size();
  sig.s_set = sorted_set({asc.begin(), asc.begin() + s});
  sig.l_set = sorted_set({asc.end() - l, asc.end()});
  sig.middle.assign(asc.begin() + s, asc.end() - l);
  return sig;
}

bool same_claim(const SortResult& a, const SortResult& b) {
  return a.middle == b.middle && sorted_set(a.s_set) == sorted_set(b.s_set) &&
         sorted_set(a.l_set) == sorted_set(b.l_set);
}

bool is_prefix_run(const std::vector<int>& outputs, int first) {
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (outputs[i] != first + static_cast<int>(i)) return false;
  }
  return true;
}

std::string format_double(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, value);
  return buf;
}

}  // namespace

std::string to_string(AmbiguityClass cls) {
  switch (cls) {
    case AmbiguityClass::kMiddleDetermined:
      return "middle_determined";
    case AmbiguityClass::kMiddleUpToReflection:
      return "middle_up_to_reflection";
    case AmbiguityClass::kOther:
      break;
  }
  return "other";
}

ConsistencyReport consistent_permutations(const Transcript& transcript, int n,
                                          const ScaleSpec& spec) {
  if (n > kMaxEnumerationN) {
    throw PreconditionError("brute-force enumeration supports n <= 9");
  }
  if (n < spec.k()) throw PreconditionError("n must be at least k");
  ConsistencyReport report;
  report.n = n;
  report.theoretical_count = factorial(spec.s_size()) *
                             factorial(spec.l_size()) *
                             (spec.is_symmetric() ? 2 : 1);

  std::vector<int> ranks(static_cast<std::size_t>(n));
  std::iota(ranks.begin(), ranks.end(), 1);
  bool saw_same = false;
  bool saw_mirror = false;
  bool saw_other = false;
  SortResult mirror;
  do {
    bool consistent = true;
    for (const TranscriptEntry& e : transcript.entries) {
      if (predict_outcome(spec, ranks, e.query) != e.outcome) {
        consistent = false;
        break;
      }
    }
    if (!consistent) continue;
    const SortResult sig = signature(ranks, spec);
    if (report.consistent_count++ == 0) {
      report.representative = sig;
      mirror = reflect(sig);
      saw_same = true;
    } else if (same_claim(sig, report.representative)) {
      saw_same = true;
    } else if (same_claim(sig, mirror)) {
      saw_mirror = true;
    } else {
      saw_other = true;
    }
  } while (std::next_permutation(ranks.begin(), ranks.end()));

  if (saw_same && !saw_other) {
    report.cls = saw_mirror ? AmbiguityClass::kMiddleUpToReflection
                            : AmbiguityClass::kMiddleDetermined;
  }
  const AmbiguityClass expected = spec.is_symmetric()
                                      ? AmbiguityClass::kMiddleUpToReflection
                                      : AmbiguityClass::kMiddleDetermined;
  report.matches_theory = report.cls == expected &&
                          report.consistent_count == report.theoretical_count;
  return report;
}

bool claims_match(const ConsistencyReport& report, const SortResult& result) {
  if (result.orientation == Orientation::kResolved) {
    return report.cls == AmbiguityClass::kMiddleDetermined &&
           same_claim(result, report.representative);
  }
  return report.cls == AmbiguityClass::kMiddleUpToReflection &&
         (same_claim(result, report.representative) ||
          same_claim(result, reflect(report.representative)));
}

nlohmann::json to_json(const ConsistencyReport& report) {
  return {{"n", report.n},
          {"consistent_count", report.consistent_count},
          {"class", to_string(report.cls)},
          {"theoretical_count", report.theoretical_count},
          {"matches_theory", report.matches_theory}};
}

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kOnline:
      return "online";
    case Algorithm::kOfflineAdjacency:
      return "offline_adjacency";
    case Algorithm::kOfflineRecursive:
      break;
  }
  return "offline_recursive";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "online") return Algorithm::kOnline;
  if (name == "offline_adjacency" || name == "adjacency") {
    return Algorithm::kOfflineAdjacency;
  }
  if (name == "offline_recursive" || name == "recursive") {
    return Algorithm::kOfflineRecursive;
  }
  throw PreconditionError("unknown algorithm: " + std::string(name));
}

bool applicable(Algorithm algorithm, const ScaleSpec& spec, int n) {
  const int k = spec.k();
  switch (algorithm) {
    case Algorithm::kOnline: {
      if (spec.s() == 1) return n >= k + 1;
      if (n <= 2 * k) return false;
      const auto& out = spec.outputs();
      return (spec.t_first() >= 2 && spec.t_last() <= k - 1) ||
             is_prefix_run(out, 1) ||
             is_prefix_run(out, k + 1 - spec.s());
    }
    case Algorithm::kOfflineAdjacency: {
      if (spec.s() != 1 || n > kMaxMaskElements) return false;
      const int t = std::min(spec.t_first(), k + 1 - spec.t_first());
      const int rho = t - 1;
      return n >= 3 * rho + (k - rho) + 1;
    }
    case Algorithm::kOfflineRecursive:
      return spec.s() == 1 && n > 2 * k && n <= kMaxMaskElements;
  }
  return false;
}

std::optional<std::uint64_t> query_bound(Algorithm algorithm,
                                         const ScaleSpec& spec, int n) {
  switch (algorithm) {
    case Algorithm::kOnline: {
      if (spec.s() != 1) return std::nullopt;
      const int t = std::min(spec.t_first(), spec.k() + 1 - spec.t_first());
      const int k_prime = spec.k() - (t - 1);
      const std::int64_t n_prime = n - spec.k() + 1;
      const int d = ceil_log(k_prime, n_prime);
      return checked_add(static_cast<std::uint64_t>(n),
                         checked_mul(2 * static_cast<std::uint64_t>(d),
                                     static_cast<std::uint64_t>(n_prime)));
    }
    case Algorithm::kOfflineAdjacency:
      return offline::adjacency_plan_size(n, spec);
    case Algorithm::kOfflineRecursive:
      return offline::recursive_plan_size(n, spec);
  }
  return std::nullopt;
}

ExperimentReport run_experiment(const ScaleSpec& spec, const HiddenOrder& order,
                                Algorithm algorithm,
                                std::optional<std::uint64_t> seed,
                                const ExperimentOptions& options) {
  ExperimentReport report;
  report.spec = spec;
  report.n = order.n();
  report.seed = seed;
  report.algorithm = algorithm;

  Oracle oracle(spec, order);
  const auto start = std::chrono::steady_clock::now();
  switch (algorithm) {
    case Algorithm::kOnline:
      report.result = online::online_sort(oracle);
      break;
    case Algorithm::kOfflineAdjacency:
      report.result = offline::adjacency_sort(oracle);
      break;
    case Algorithm::kOfflineRecursive:
      report.result = offline::recursive_sort(oracle, options.recursive_shortcut);
      break;
  }
  if (options.timing) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report.millis =
        std::chrono::duration<double, std::milli>(elapsed).count();
  }

  report.queries_used = oracle.query_count();
  report.correct = equivalent_up_to_ambiguity(report.result, order, spec);
  if (algorithm == Algorithm::kOfflineRecursive && options.recursive_shortcut) {
    report.bound = static_cast<std::uint64_t>(
        offline::build_recursive_plan(order.n(), spec, true).size());
  } else {
    report.bound = query_bound(algorithm, spec, order.n());
  }
  report.bound_satisfied =
      !report.bound ||
      static_cast<std::uint64_t>(report.queries_used) <= *report.bound;
  report.transcript = oracle.transcript();
  return report;
}

ExperimentReport run_experiment(const ScaleSpec& spec, int n,
                                std::uint64_t seed, Algorithm algorithm,
                                const ExperimentOptions& options) {
  return run_experiment(spec, HiddenOrder::random(n, seed), algorithm, seed,
                        options);
}

nlohmann::json to_json(const ExperimentReport& report) {
  nlohmann::json doc = {
      {"spec", report.spec.to_string()},
      {"n", report.n},
      {"seed", nullptr},
      {"algorithm", to_string(report.algorithm)},
      {"queries_used", report.queries_used},
      {"bound", nullptr},
      {"bound_satisfied", report.bound_satisfied},
      {"correct", report.correct},
      {"millis", report.millis},
      {"result", to_json(report.result)}};
  if (report.seed) doc["seed"] = *report.seed;
  if (report.bound) doc["bound"] = *report.bound;
  return doc;
}

std::vector<SweepRow> bench_sweep(const ScaleSpec& spec,
                                  const std::vector<int>& n_list, int trials,
                                  const std::vector<Algorithm>& algorithms,
                                  const SweepOptions& options) {
  if (trials < 0) throw PreconditionError("trials must be non-negative");
  std::vector<SweepRow> rows;
  for (int n : n_list) {
    for (int trial = 0; trial < trials; ++trial) {
      const std::uint64_t seed =
          options.base_seed + static_cast<std::uint64_t>(trial);
      for (Algorithm algorithm : algorithms) {
        SweepRow row;
        row.spec = spec.to_string();
        row.n = n;
        row.seed = seed;
        row.algorithm = to_string(algorithm);
        try {
          const ExperimentReport report =
              run_experiment(spec, n, seed, algorithm, options.experiment);
          row.queries_used = report.queries_used;
          row.bound = report.bound;
          row.correct = report.correct;
          row.bound_satisfied = report.bound_satisfied;
          row.millis = report.millis;
        } catch (const InconsistentAnswers&) {
          row.correct = false;
        }
        if (options.versus_lower_bound && spec.s() == 1) {
          row.bound = offline::offline_lower_bound(n, spec.k(), spec.t_first());
        }
        if (row.bound && *row.bound > 0) {
          row.ratio = static_cast<double>(row.queries_used) /
                      static_cast<double>(*row.bound);
        }
        rows.push_back(std::move(row));
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.spec, a.n, a.seed, a.algorithm) <
           std::tie(b.spec, b.n, b.seed, b.algorithm);
  });
  return rows;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const SweepRow& row : rows) {
    out << '"' << row.spec << "\"," << row.n << ',' << row.seed << ','
        << row.algorithm << ',' << row.queries_used << ',';
    if (row.bound) out << *row.bound;
    out << ',' << format_double("%.6g", row.ratio) << ','
        << (row.correct ? "true" : "false") << ','
        << format_double("%.3f", row.millis) << '\n';
  }
  return out.str();
}

VerifySummary verify_exhaustive(int max_n) {
  if (max_n > kMaxEnumerationN) {
    throw PreconditionError("exhaustive verification supports n <= 9");
  }
  VerifySummary summary;
  const Algorithm all[] = {Algorithm::kOnline, Algorithm::kOfflineAdjacency,
                           Algorithm::kOfflineRecursive};
  for (int k : {3, 4}) {
    for (int t = 1; t <= k; ++t) {
      const ScaleSpec spec(k, {t});
      for (int n = k + 1; n <= max_n; ++n) {
        // The brute-force claim check is n!^2; sample it for larger n.
        const std::uint64_t stride = std::max<std::uint64_t>(1, factorial(n) / 60);
        for (Algorithm algorithm : all) {
          if (!applicable(algorithm, spec, n)) continue;
          std::vector<int> ranks(static_cast<std::size_t>(n));
          std::iota(ranks.begin(), ranks.end(), 1);
          std::uint64_t index = 0;
          do {
            ++summary.trials;
            std::string problem;
            try {
              const ExperimentReport report = run_experiment(
                  spec, HiddenOrder::from_ranks(ranks), algorithm);
              if (!report.correct) problem = "incorrect result";
              if (!report.bound_satisfied) problem = "bound exceeded";
              if (problem.empty() && index % stride == 0) {
                const ConsistencyReport consistency =
                    consistent_permutations(report.transcript, n, spec);
                if (!consistency.matches_theory ||
                    !claims_match(consistency, report.result)) {
                  problem = "claims differ from the transcript";
                }
              }
            } catch (const std::exception& e) {
              problem = e.what();
            }
            ++index;
            if (problem.empty()) continue;
            ++summary.failures;
            if (summary.failure_notes.size() < 10) {
              std::ostringstream note;
              note << spec.to_string() << " n=" << n << ' '
                   << to_string(algorithm) << " ranks=[";
              for (std::size_t i = 0; i < ranks.size(); ++i) {
                note << (i ? "," : "") << ranks[i];
              }
              note << "]: " << problem;
              summary.failure_notes.push_back(note.str());
            }
          } while (std::next_permutation(ranks.begin(), ranks.end()));
        }
      }
    }
  }
  return summary;
}

}  // namespace scalesort::harness
