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

// Command-line front end: sorting runs, the two-phase offline workflow,
// verification, lower bounds and benchmark sweeps. Reports go to stdout as
// JSON; the exit code is nonzero on any correctness or bound violation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "scalesort/adjacency.hpp"
#include "scalesort/errors.hpp"
#include "scalesort/harness.hpp"
#include "scalesort/recursive.hpp"

namespace {

using scalesort::HiddenOrder;
using scalesort::ScaleSpec;
using scalesort::harness::Algorithm;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw scalesort::PreconditionError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw scalesort::PreconditionError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw scalesort::PreconditionError("cannot write " + path);
  out << text;
}

// The hidden order: an explicit rank array (1-based) or a seeded shuffle.
struct OrderOptions {
  int n = 0;
  std::uint64_t seed = 1;
  std::string order_file;

  void add_to(CLI::App* cmd, bool n_required) {
    auto* n_opt = cmd->add_option("--n", n, "Number of elements");
    if (n_required) n_opt->required();
    auto* seed_opt = cmd->add_option("--seed", seed, "Seed of the hidden order");
    cmd->add_option("--order", order_file,
                    "JSON rank array (1 = smallest) giving the hidden order")
        ->excludes(seed_opt);
  }

  HiddenOrder build() const {
    if (order_file.empty()) {
      if (n <= 0) throw scalesort::PreconditionError("--n is required");
      return HiddenOrder::random(n, seed);
    }
    HiddenOrder order =
        HiddenOrder::from_ranks(read_json(order_file).get<std::vector<int>>());
    if (n > 0 && order.n() != n) {
      throw scalesort::PreconditionError("--n disagrees with --order");
    }
    return order;
  }
  std::optional<std::uint64_t> seed_used() const {
    if (order_file.empty()) return seed;
    return std::nullopt;
  }
};

int emit_experiment(const scalesort::harness::ExperimentReport& report,
                    const std::string& transcript_path) {
  if (!transcript_path.empty()) {
    write_text(transcript_path,
               scalesort::transcript_to_json(report.transcript).dump(2) + "\n");
  }
  std::cout << scalesort::harness::to_json(report).dump(2) << "\n";
  return report.correct && report.bound_satisfied ? 0 : kExitViolation;
}

std::vector<scalesort::ElementSet> plan_queries(Algorithm algorithm, int n,
                                                const ScaleSpec& spec,
                                                bool shortcut) {
  if (algorithm == Algorithm::kOfflineAdjacency) {
    return scalesort::offline::build_adjacency_plan(n, spec).queries;
  }
  if (algorithm == Algorithm::kOfflineRecursive) {
    return scalesort::offline::build_recursive_plan(n, spec, shortcut)
        .all_queries();
  }
  throw scalesort::PreconditionError("plans exist for offline algorithms only");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stoi(item));
    } else {
      const int lo = std::stoi(item.substr(0, dots));
      const int hi = std::stoi(item.substr(dots + 2));
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sorting with a k-element rank-position scale"};
  app.require_subcommand(1);

  std::string scale_text;
  std::string algo_text;
  std::string transcript_path;
  bool shortcut = false;

  // sort-online
  OrderOptions online_order;
  auto* sort_online = app.add_subcommand("sort-online", "Adaptive sorting");
  sort_online->add_option("--scale", scale_text, "Scale as k:t1[,t2,...]")
      ->required();
  online_order.add_to(sort_online, false);
  sort_online->add_option("--transcript", transcript_path,
                          "Also write the query transcript here");

  // sort-offline
  OrderOptions offline_order;
  auto* sort_offline =
      app.add_subcommand("sort-offline", "Single-batch sorting");
  sort_offline->add_option("--scale", scale_text)->required();
  sort_offline->add_option("--algo", algo_text, "adjacency | recursive")
      ->required();
  sort_offline->add_flag("--shortcut", shortcut,
                         "Single-fan recursive plan (t = 2 only)");
  offline_order.add_to(sort_offline, false);
  sort_offline->add_option("--transcript", transcript_path);

  // plan
  int plan_n = 0;
  std::string out_path;
  auto* plan = app.add_subcommand("plan", "Write an offline query batch");
  plan->add_option("--scale", scale_text)->required();
  plan->add_option("--algo", algo_text)->required();
  plan->add_option("--n", plan_n)->required();
  plan->add_flag("--shortcut", shortcut);
  plan->add_option("--out", out_path)->required();

  // answer
  std::string plan_path;
  OrderOptions answer_order;
  auto* answer =
      app.add_subcommand("answer", "Answer a plan with a simulated scale");
  answer->add_option("--plan", plan_path)->required();
  answer_order.add_to(answer, false);
  answer->add_option("--out", out_path)->required();

  // solve
  std::string results_path;
  OrderOptions solve_truth;
  auto* solve = app.add_subcommand("solve", "Reconstruct from answered batch");
  solve->add_option("--results", results_path)->required();
  solve->add_option("--algo", algo_text,
                    "Defaults to the algorithm recorded in the results");
  solve->add_option("--order", solve_truth.order_file,
                    "Check the result against this rank array");

  // verify
  bool exhaustive = false;
  int max_n = 7;
  auto* verify = app.add_subcommand("verify", "Brute-force verification");
  verify->add_flag("--exhaustive", exhaustive)->required();
  verify->add_option("--max-n", max_n)->check(CLI::Range(3, 9));

  // lower-bound
  int bound_n = 0;
  auto* lower = app.add_subcommand("lower-bound", "Offline lower bound");
  lower->add_option("--scale", scale_text, "k:t")->required();
  lower->add_option("--n", bound_n)->required();

  // bench
  std::string n_list_text;
  int trials = 1;
  std::string csv_path;
  std::vector<std::string> bench_algos;
  scalesort::harness::SweepOptions sweep_options;
  auto* bench = app.add_subcommand("bench", "Query-count sweep to CSV");
  bench->add_option("--scale", scale_text)->required();
  bench->add_option("--n-list", n_list_text, "e.g. 20,40,80 or 8..14")
      ->required();
  bench->add_option("--trials", trials)->check(CLI::NonNegativeNumber);
  bench->add_option("--csv", csv_path, "Output file (default stdout)");
  bench->add_option("--algo", bench_algos,
                    "online | adjacency | recursive (repeatable)");
  bench->add_option("--seed", sweep_options.base_seed,
                    "Trial i uses seed + i");
  bench->add_flag("--versus-lower-bound", sweep_options.versus_lower_bound,
                  "Report the ratio against the offline lower bound");
  bench->add_flag("--timing", sweep_options.experiment.timing,
                  "Fill the millis column (not reproducible)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sort_online) {
      const HiddenOrder order = online_order.build();
      return emit_experiment(
          scalesort::harness::run_experiment(ScaleSpec::parse(scale_text), order,
                                             Algorithm::kOnline,
                                             online_order.seed_used()),
          transcript_path);
    }
    if (*sort_offline) {
      const Algorithm algorithm = scalesort::harness::parse_algorithm(algo_text);
      if (algorithm == Algorithm::kOnline) {
        throw scalesort::PreconditionError("--algo must be adjacency or recursive");
      }
      scalesort::harness::ExperimentOptions options;
      options.recursive_shortcut = shortcut;
      return emit_experiment(
          scalesort::harness::run_experiment(
              ScaleSpec::parse(scale_text), offline_order.build(), algorithm,
              offline_order.seed_used(), options),
          transcript_path);
    }
    if (*plan) {
      const Algorithm algorithm = scalesort::harness::parse_algorithm(algo_text);
      scalesort::Transcript batch;
      batch.spec = ScaleSpec::parse(scale_text);
      batch.n = plan_n;
      for (auto& q : plan_queries(algorithm, plan_n, batch.spec, shortcut)) {
        batch.entries.push_back({std::move(q), {}});
      }
      nlohmann::json doc = scalesort::transcript_to_json(batch);
      for (auto& e : doc["entries"]) e.erase("outcome");
      doc["algorithm"] = scalesort::harness::to_string(algorithm);
      doc["shortcut"] = shortcut;
      write_text(out_path, doc.dump(2) + "\n");
      std::cout << nlohmann::json{{"algorithm", doc["algorithm"]},
                                  {"spec", batch.spec.to_string()},
                                  {"n", plan_n},
                                  {"queries", batch.entries.size()},
                                  {"out", out_path}}
                       .dump(2)
                << "\n";
      return 0;
    }
    if (*answer) {
      nlohmann::json doc = read_json(plan_path);
      const scalesort::Transcript batch = scalesort::transcript_from_json(doc);
      if (answer_order.n == 0) answer_order.n = batch.n;
      scalesort::Oracle oracle(batch.spec, answer_order.build());
      if (oracle.n() != batch.n) {
        throw scalesort::PreconditionError("order size differs from the plan");
      }
      for (std::size_t i = 0; i < batch.entries.size(); ++i) {
        doc["entries"][i]["outcome"] = oracle.evaluate(batch.entries[i].query);
      }
      write_text(out_path, doc.dump(2) + "\n");
      std::cout << nlohmann::json{{"answered", batch.entries.size()},
                                  {"out", out_path}}
                       .dump(2)
                << "\n";
      return 0;
    }
    if (*solve) {
      const nlohmann::json doc = read_json(results_path);
      const scalesort::Transcript batch = scalesort::transcript_from_json(doc);
      const Algorithm algorithm = scalesort::harness::parse_algorithm(
          algo_text.empty() ? doc.value("algorithm", std::string())
                            : algo_text);
      const bool use_shortcut = doc.value("shortcut", false);
      const scalesort::ResultTable table =
          scalesort::ResultTable::from_transcript(batch);
      scalesort::SortResult result;
      if (algorithm == Algorithm::kOfflineAdjacency) {
        result = scalesort::offline::adjacency_solve(
            scalesort::offline::build_adjacency_plan(batch.n, batch.spec), table);
      } else if (algorithm == Algorithm::kOfflineRecursive) {
        result = scalesort::offline::recursive_solve(
            scalesort::offline::build_recursive_plan(batch.n, batch.spec,
                                                     use_shortcut),
            table);
      } else {
        throw scalesort::PreconditionError("solve needs an offline algorithm");
      }
      nlohmann::json report = {{"spec", batch.spec.to_string()},
                               {"n", batch.n},
                               {"algorithm", scalesort::harness::to_string(algorithm)},
                               {"result", scalesort::to_json(result)}};
      int status = 0;
      if (!solve_truth.order_file.empty()) {
        const bool correct = scalesort::equivalent_up_to_ambiguity(
            result, solve_truth.build(), batch.spec);
        report["correct"] = correct;
        if (!correct) status = kExitViolation;
      }
      std::cout << report.dump(2) << "\n";
      return status;
    }
    if (*verify) {
      const scalesort::harness::VerifySummary summary =
          scalesort::harness::verify_exhaustive(max_n);
      std::cout << nlohmann::json{{"max_n", max_n},
                                  {"trials", summary.trials},
                                  {"failures", summary.failures},
                                  {"failure_notes", summary.failure_notes}}
                       .dump(2)
                << "\n";
      return summary.failures == 0 ? 0 : kExitViolation;
    }
    if (*lower) {
      const ScaleSpec spec = ScaleSpec::parse(scale_text);
      if (spec.s() != 1) {
        throw scalesort::PreconditionError("lower-bound takes a k:t scale");
      }
      std::cout << nlohmann::json{
                       {"spec", spec.to_string()},
                       {"n", bound_n},
                       {"lower_bound", scalesort::offline::offline_lower_bound(
                                           bound_n, spec.k(), spec.t_first())}}
                       .dump(2)
                << "\n";
      return 0;
    }
    if (*bench) {
      std::vector<Algorithm> algorithms;
      for (const auto& name : bench_algos) {
        algorithms.push_back(scalesort::harness::parse_algorithm(name));
      }
      if (algorithms.empty()) algorithms.push_back(Algorithm::kOnline);
      const auto rows = scalesort::harness::bench_sweep(
          ScaleSpec::parse(scale_text), parse_int_list(n_list_text), trials,
          algorithms, sweep_options);
      const std::string csv = scalesort::harness::to_csv(rows);
      if (csv_path.empty()) {
        std::cout << csv;
      } else {
        write_text(csv_path, csv);
      }
      bool ok = true;
      for (const auto& row : rows) ok = ok && row.correct && row.bound_satisfied;
      return ok ? 0 : kExitViolation;
    }
  } catch (const scalesort::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return 0;
}
