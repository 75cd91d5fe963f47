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

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "scalesort/combinatorics.hpp"
#include "scalesort/errors.hpp"

namespace scalesort::offline {
namespace {

constexpr ElementMask bit(ElementId id) { return ElementMask{1} << id; }

ScaleSpec effective_spec(const ScaleSpec& spec) {
  if (spec.s() == 1 && spec.t_first() - 1 > spec.k() - spec.t_first()) {
    return spec.mirrored();
  }
  return spec;
}

void check_size(int n, const ScaleSpec& effective) {
  const int k = effective.k();
  const int rho = effective.t_last() - 1;
  if (n > kMaxMaskElements) {
    throw PreconditionError("offline plans support at most 64 elements");
  }
  if (n < 3 * rho + (k - rho) + 1) {
    throw PreconditionError("n too small for three disjoint reference sets");
  }
}

}  // namespace

std::uint64_t adjacency_plan_size(int n, const ScaleSpec& spec) {
  const ScaleSpec effective = effective_spec(spec);
  const int rho = effective.t_last() - 1;
  if (rho == 0) return binomial(n, effective.k());
  return checked_mul(3, binomial(n - rho, effective.k() - rho));
}

QueryPlan build_adjacency_plan(int n, const ScaleSpec& spec) {
  QueryPlan plan;
  plan.spec = spec;
  plan.effective = effective_spec(spec);
  plan.mirrored = !(plan.effective == spec);
  plan.n = n;
  check_size(n, plan.effective);
  const int k = plan.effective.k();
  plan.rho = plan.effective.t_last() - 1;
  const int fans = plan.rho == 0 ? 1 : 3;
  const ElementSet universe = all_elements(n);

  for (int f = 0; f < fans; ++f) {
    const ElementSet reference(universe.begin() + f * plan.rho,
                               universe.begin() + (f + 1) * plan.rho);
    plan.reference_sets.push_back(reference);
    const ElementSet free = set_difference(universe, reference);
    for_each_combination(free, k - plan.rho,
                         [&](const std::vector<ElementId>& chosen) {
                           plan.queries.push_back(set_union(reference, chosen));
                           plan.fan_of.push_back(f);
                         });
  }
  return plan;
}

std::size_t AdjacencyMap::edge_count() const {
  std::size_t twice = 0;
  for (const auto& list : neighbors) twice += list.size();
  return twice / 2;
}

bool AdjacencyMap::is_path() const {
  try {
    walk_path(*this);
    return true;
  } catch (const InconsistentAnswers&) {
    return false;
  }
}

AdjacencyMap eliminate_nonadjacent(const QueryPlan& plan,
                                   const ResultTable& results) {
  const int n = plan.n;
  std::vector<ElementMask> outcomes;
  outcomes.reserve(plan.queries.size());
  ElementMask support = 0;
  for (const ElementSet& q : plan.queries) {
    const ElementSet* outcome = results.find(q);
    if (outcome == nullptr) {
      throw PreconditionError("missing result for a plan query");
    }
    outcomes.push_back(mask_of(*outcome));
    support |= outcomes.back();
  }

  std::vector<ElementMask> adj(static_cast<std::size_t>(n), 0);
  for (ElementId u : set_of(support)) adj[u] = support & ~bit(u);

  const ElementMask everything =
      n == 64 ? ~ElementMask{0} : (ElementMask{1} << n) - 1;
  for (std::size_t f = 0; f < plan.reference_sets.size(); ++f) {
    const ElementMask reference = mask_of(plan.reference_sets[f]);
    std::unordered_map<ElementMask, ElementMask> fan;  // free part -> outcome
    for (std::size_t i = 0; i < plan.queries.size(); ++i) {
      if (plan.fan_of[i] != static_cast<int>(f)) continue;
      fan.emplace(mask_of(plan.queries[i]) & ~reference, outcomes[i]);
    }
    for (const auto& [free, outcome] : fan) {
      const ElementMask movable = free & outcome;
      const ElementMask outside = everything & ~(free | reference);
      for (ElementId u : set_of(movable)) {
        for (ElementId v : set_of(outside)) {
          const auto sibling = fan.find((free & ~bit(u)) | bit(v));
          if (sibling == fan.end()) {
            throw PreconditionError("fan is missing a sibling query");
          }
          if ((sibling->second & bit(v)) == 0) {
            adj[u] &= ~bit(v);
            adj[v] &= ~bit(u);
          }
        }
      }
    }
  }

  AdjacencyMap map;
  map.n = n;
  map.support = set_of(support);
  map.neighbors.resize(static_cast<std::size_t>(n));
  for (int id = 0; id < n; ++id) map.neighbors[id] = set_of(adj[id]);
  return map;
}

std::vector<ElementId> walk_path(const AdjacencyMap& adj) {
  const ElementSet& support = adj.support;
  if (support.empty()) throw InconsistentAnswers("empty adjacency support");
  if (support.size() == 1) {
    if (!adj.neighbors[support[0]].empty()) {
      throw InconsistentAnswers("adjacency map is not a path");
    }
    return {support[0]};
  }
  ElementId start = -1;
  int endpoints = 0;
  for (ElementId id : support) {
    const std::size_t degree = adj.neighbors[id].size();
    if (degree == 1) {
      ++endpoints;
      if (start < 0) start = id;
    } else if (degree != 2) {
      throw InconsistentAnswers("adjacency map is not a path");
    }
  }
  if (endpoints != 2) throw InconsistentAnswers("adjacency map is not a path");

  std::vector<ElementId> path{start};
  ElementId previous = -1;
  ElementId current = start;
  while (path.size() < support.size()) {
    ElementId next = -1;
    for (ElementId candidate : adj.neighbors[current]) {
      if (candidate != previous) next = candidate;
    }
    if (next < 0) break;
    path.push_back(next);
    previous = current;
    current = next;
  }
  if (path.size() != support.size() || adj.neighbors[current].size() != 1) {
    throw InconsistentAnswers("adjacency map is not a single path");
  }
  return path;
}

SortResult rebuild_order(const AdjacencyMap& adj, const Transcript& transcript,
                         const ScaleSpec& spec) {
  const std::vector<ElementId> path = walk_path(adj);
  const int n = transcript.n;
  const ElementSet unseen = set_difference(all_elements(n), adj.support);
  if (static_cast<int>(unseen.size()) != spec.s_size() + spec.l_size()) {
    throw InconsistentAnswers("unseen elements do not match |S| + |L|");
  }

  std::vector<SortResult> consistent;
  std::vector<std::vector<ElementId>> orientations{path};
  if (path.size() > 1) orientations.emplace_back(path.rbegin(), path.rend());
  for (const auto& middle : orientations) {
    for_each_combination(unseen, spec.s_size(),
                         [&](const std::vector<ElementId>& s_set) {
                           SortResult candidate;
                           candidate.middle = middle;
                           candidate.s_set = s_set;
                           candidate.l_set = set_difference(unseen, s_set);
                           const std::vector<int> ranks = ranks_of(candidate, n);
                           for (const auto& e : transcript.entries) {
                             if (predict_outcome(spec, ranks, e.query) !=
                                 e.outcome) {
                               return;
                             }
                           }
                           consistent.push_back(std::move(candidate));
                         });
  }

  if (consistent.size() == 1) return consistent.front();
  if (consistent.size() == 2 && spec.is_symmetric()) {
    const SortResult mirrored = reflect(consistent[1]);
    if (mirrored.middle == consistent[0].middle &&
        mirrored.s_set == consistent[0].s_set &&
        mirrored.l_set == consistent[0].l_set) {
      SortResult result = consistent.front();
      result.orientation = Orientation::kReflectionAmbiguous;
      return result;
    }
  }
  throw InconsistentAnswers(consistent.empty()
                                ? "no orientation explains the answers"
                                : "answers leave the orientation undetermined");
}

SortResult adjacency_solve(const QueryPlan& plan, const ResultTable& results) {
  Transcript transcript;
  transcript.spec = plan.effective;
  transcript.n = plan.n;
  for (const ElementSet& q : plan.queries) {
    const ElementSet* outcome = results.find(q);
    if (outcome == nullptr) {
      throw PreconditionError("missing result for a plan query");
    }
    transcript.entries.push_back({q, *outcome});
  }
  const AdjacencyMap adj = eliminate_nonadjacent(plan, results);
  SortResult result = rebuild_order(adj, transcript, plan.effective);
  if (plan.mirrored) result = reflect(std::move(result));
  result.queries_used = static_cast<std::int64_t>(plan.queries.size());
  result.stage_queries = {{"plan", result.queries_used}};
  return result;
}

SortResult adjacency_sort(QuerySource& source) {
  const QueryPlan plan = build_adjacency_plan(source.n(), source.spec());
  ResultTable results;
  for (const ElementSet& q : plan.queries) results.add(q, source.ask(q));
  return adjacency_solve(plan, results);
}

}  // namespace scalesort::offline
