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

#include "scalesort/recursive.hpp"

#include <algorithm>
#include <map>

#include "scalesort/combinatorics.hpp"
#include "scalesort/errors.hpp"
#include "scalesort/online.hpp"

namespace scalesort::offline {
namespace {

constexpr ElementMask bit(ElementId id) { return ElementMask{1} << id; }

int normalized_t(const ScaleSpec& spec) {
  const int t = spec.t_first();
  return std::min(t, spec.k() + 1 - t);
}

}  // namespace

std::uint64_t offline_lower_bound(std::int64_t n, std::int64_t k,
                                  std::int64_t t) {
  if (t < 1 || t > k || k > n) {
    throw PreconditionError("lower bound needs 1 <= t <= k <= n");
  }
  t = std::min(t, k + 1 - t);
  const std::int64_t r = k - t + 1;
  const std::uint64_t num = binomial(n, r);
  const std::uint64_t den = binomial(k, r);
  return num / den + (num % den != 0 ? 1 : 0);
}

std::pair<ElementId, ElementId> find_ordered_pair(
    const ScaleSpec& spec, const std::vector<TranscriptEntry>& results) {
  const int k = spec.k();
  const int t = spec.t_first();
  if (spec.s() != 1) throw PreconditionError("find_ordered_pair needs s = 1");
  if (2 * t == k + 1) {
    throw PreconditionError("symmetric scale: both responses tie");
  }
  ElementSet ground;
  for (const auto& e : results) ground = set_union(ground, e.query);
  std::vector<ElementSet> seen;
  for (const auto& e : results) {
    if (static_cast<int>(e.query.size()) != k || e.outcome.size() != 1) {
      throw InconsistentAnswers("find_ordered_pair needs k-queries of a s=1 scale");
    }
    seen.push_back(e.query);
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  if (static_cast<int>(ground.size()) != k + 1 ||
      static_cast<int>(seen.size()) != k + 1) {
    throw InconsistentAnswers("need the answers on all k-subsets of a (k+1)-set");
  }
  std::map<ElementId, int> multiplicity;
  for (const auto& e : results) ++multiplicity[e.outcome.front()];
  if (multiplicity.size() != 2) {
    throw InconsistentAnswers("expected exactly two distinct responses");
  }
  auto first = multiplicity.begin();
  auto second = std::next(first);
  if (first->second == k + 1 - t && second->second == t) {
    return {first->first, second->first};
  }
  if (second->second == k + 1 - t && first->second == t) {
    return {second->first, first->first};
  }
  throw InconsistentAnswers("response multiplicities do not match (k+1-t, t)");
}

std::vector<ElementSet> RecursivePlan::all_queries() const {
  std::vector<ElementSet> out = closure_queries;
  out.insert(out.end(), fan_queries.begin(), fan_queries.end());
  return out;
}

RecursivePlan build_recursive_plan(int n, const ScaleSpec& spec,
                                   bool t2_shortcut) {
  if (spec.s() != 1) {
    throw PreconditionError("recursive deduction handles singleton scales only");
  }
  const int k = spec.k();
  if (n <= 2 * k) throw PreconditionError("recursive sorting needs n > 2k");
  if (n > kMaxMaskElements) {
    throw PreconditionError("offline plans support at most 64 elements");
  }
  RecursivePlan plan;
  plan.spec = spec;
  plan.n = n;
  plan.t = normalized_t(spec);
  plan.mirrored = plan.t != spec.t_first();
  plan.effective = plan.mirrored ? spec.mirrored() : spec;
  plan.t2_shortcut = t2_shortcut;
  const int t = plan.t;
  const ElementSet universe = all_elements(n);

  if (t == 1) {
    plan.fan_queries = combinations(universe, k);
    return plan;
  }
  if (t2_shortcut) {
    if (t != 2) throw PreconditionError("the single-fan shortcut needs t = 2");
    plan.superset = {0};
    for_each_combination(set_difference(universe, {0}), k - 1,
                         [&](const std::vector<ElementId>& rest) {
                           plan.fan_queries.push_back(set_union({0}, rest));
                         });
    return plan;
  }
  plan.superset = ElementSet(universe.begin(), universe.begin() + (k + t - 2));
  plan.closure_queries = combinations(plan.superset, k);
  for_each_combination(plan.superset, t - 1,
                       [&](const std::vector<ElementId>& fixed) {
                         const ElementSet free = set_difference(universe, fixed);
                         for_each_combination(
                             free, k - t + 1,
                             [&](const std::vector<ElementId>& chosen) {
                               plan.fan_queries.push_back(
                                   set_union(fixed, chosen));
                             });
                       });
  return plan;
}

RecursivePlan build_recursive_plan(int n, int k, int t) {
  return build_recursive_plan(n, ScaleSpec(k, {t}));
}

std::uint64_t recursive_plan_size(int n, const ScaleSpec& spec) {
  const int k = spec.k();
  const int t = normalized_t(spec);
  return checked_add(
      binomial(k + t - 2, k),
      checked_mul(binomial(k + t - 2, t - 1), binomial(n - t + 1, k - t + 1)));
}

KnowledgeBase::KnowledgeBase(ScaleSpec spec, const ResultTable& known,
                             std::vector<ElementId> chain,
                             ElementSet anchors_above)
    : spec_(std::move(spec)),
      known_(known),
      chain_(std::move(chain)),
      anchors_(std::move(anchors_above)) {
  if (spec_.s() != 1) throw PreconditionError("deduction needs s = 1");
  index_.fill(-1);
  for (std::size_t i = 0; i < chain_.size(); ++i) {
    index_[chain_[i]] = static_cast<int>(i);
  }
}

int KnowledgeBase::level(ElementMask query) const {
  int j = 0;
  while (j < static_cast<int>(chain_.size()) && (query & bit(chain_[j])) != 0) {
    ++j;
  }
  return j;
}

std::vector<std::pair<ElementId, ElementId>> KnowledgeBase::probe(
    const ElementSet& query) {
  const ElementMask q = mask_of(query);
  const int j = level(q);
  if (j == static_cast<int>(chain_.size())) {
    throw PreconditionError("query already contains the whole chain");
  }
  const ElementId y = chain_[j];
  ElementMask prefix = 0;
  for (int i = 0; i < j; ++i) prefix |= bit(chain_[i]);
  std::vector<std::pair<ElementId, ElementId>> out;
  for (ElementId a : set_of(q & ~prefix)) {
    out.emplace_back(a, resolve((q & ~bit(a)) | bit(y)));
  }
  return out;
}

ElementId KnowledgeBase::resolve(ElementMask q) {
  if (const ElementSet* hit = known_.find(q)) {
    if (hit->size() != 1) throw InconsistentAnswers("known answer is not a singleton");
    return hit->front();
  }
  if (auto it = memo_.find(q); it != memo_.end()) return it->second;

  const int k = spec_.k();
  const int t = spec_.t_first();
  const int j = level(q);
  if (j == static_cast<int>(chain_.size())) {
    throw PreconditionError("the batch lacks a query containing the whole chain");
  }
  const ElementId y = chain_[j];

  std::map<ElementId, std::vector<ElementId>> groups;  // response -> a's
  for (const auto& [a, response] : probe(set_of(q))) {
    groups[response].push_back(a);
  }

  ElementId answer = -1;
  if (groups.count(y) != 0) {
    // y displaced something but is never the answer itself; the other
    // response is.
    if (groups.size() != 2) {
      throw InconsistentAnswers("every probe returned the next chain element");
    }
    for (const auto& [value, unused] : groups) {
      if (value != y) answer = value;
    }
  } else {
    if (groups.size() != 2) {
      throw InconsistentAnswers("probe responses are not two values");
    }
    const ElementId v1 = groups.begin()->first;
    const ElementId v2 = std::next(groups.begin())->first;
    const int m1 = static_cast<int>(groups[v1].size());
    const int m2 = static_cast<int>(groups[v2].size());

    // Is "v is the answer" compatible with multiplicities (mv, mw), where w
    // is the other response? Either y lies above the answer (then w is the
    // next element up, also below y) or below it (w is the next one down).
    auto feasible = [&](ElementId v, int mv, ElementId w, int mw) {
      const int iv = chain_index(v);
      const int iw = chain_index(w);
      const bool above_y_ok = !(iv >= 0 && iv < j) && !(iw >= 0 && iw < j);
      if (above_y_ok && mv == t - 1 - j && mw == k - t + 1) return true;
      const bool below_y_ok = !(iv > j) && !(iw > j);
      if (!below_y_ok) return false;
      // u = number of prefix elements <= v.
      const int u_lo = iv >= 0 ? iv + 1 : 0;
      const int u_hi = iv >= 0 ? iv + 1 : j;
      for (int u = u_lo; u <= u_hi; ++u) {
        if (mw == t - u && mv == k - t - j + u) return true;
      }
      return false;
    };
    const bool f1 = feasible(v1, m1, v2, m2);
    const bool f2 = feasible(v2, m2, v1, m1);
    if (f1 && !f2) {
      answer = v1;
    } else if (f2 && !f1) {
      answer = v2;
    } else if (!f1 && !f2) {
      throw InconsistentAnswers("no hypothesis explains the probe multiplicities");
    } else {
      // Both values could be the answer with y above both. Drop one element
      // from each response class, add y and an element h above the chain:
      // position t then holds the larger of the two, i.e. the non-answer.
      ElementId g = -1;
      ElementId g_prime = -1;
      for (ElementId a : groups[v1]) {
        if (a != v2) { g = a; break; }
      }
      for (ElementId a : groups[v2]) {
        if (a != v1) { g_prime = a; break; }
      }
      ElementId h = -1;
      for (ElementId c : anchors_) {
        if ((q & bit(c)) == 0 && c != y) { h = c; break; }
      }
      for (int i = j + 1; h < 0 && i < static_cast<int>(chain_.size()); ++i) {
        if ((q & bit(chain_[i])) == 0) h = chain_[i];
      }
      if (g < 0 || g_prime < 0 || h < 0) {
        throw InconsistentAnswers("multiplicity tie cannot be broken");
      }
      const ElementMask z =
          (q & ~bit(g) & ~bit(g_prime)) | bit(y) | bit(h);
      const ElementId larger = resolve(z);
      if (larger == v1) {
        answer = v2;
      } else if (larger == v2) {
        answer = v1;
      } else {
        throw InconsistentAnswers("tie-break query returned a third value");
      }
    }
  }
  memo_.emplace(q, answer);
  return answer;
}

ElementSet KnowledgeBase::deduce(const ElementSet& query) {
  const ElementSet sorted = sorted_set(query);
  if (static_cast<int>(sorted.size()) != spec_.k()) {
    throw QueryError(QueryErrorKind::kWrongSize, "query of wrong size");
  }
  return {resolve(mask_of(sorted))};
}

ElementSet deduce_query(KnowledgeBase& kb, const ElementSet& query) {
  return kb.deduce(query);
}

SupersetOrder order_superset(const RecursivePlan& plan,
                             const ResultTable& results) {
  SupersetOrder out;
  if (plan.t == 1) return out;
  if (plan.t2_shortcut) {
    out.chain = plan.superset;
    return out;
  }
  TableSource source(plan.effective, plan.n, results);
  if (plan.t >= 3) {
    const SortResult r = online::sort_singleton(source, plan.superset);
    if (static_cast<int>(r.middle.size()) != plan.t - 1) {
      throw InconsistentAnswers("superset did not yield t - 1 ordered elements");
    }
    out.chain = r.middle;
    out.anchors_above = r.l_set;
    return out;
  }
  // t = 2: add the lowest label outside the superset.
  const ElementSet extra =
      set_difference(all_elements(plan.n), plan.superset);
  const ElementSet ground = set_union(plan.superset, {extra.front()});
  const SortResult r = online::sort_singleton(source, ground);
  for (std::size_t i = 0; i < r.middle.size(); ++i) {
    if (set_contains(plan.superset, r.middle[i])) {
      out.chain = {r.middle[i]};
      out.anchors_above = set_union(
          r.l_set, sorted_set({r.middle.begin() + i + 1, r.middle.end()}));
      return out;
    }
  }
  throw InconsistentAnswers("no middle element of the superset found");
}

SortResult recursive_solve(const RecursivePlan& plan,
                           const ResultTable& results) {
  for (const ElementSet& q : plan.closure_queries) {
    if (results.find(q) == nullptr) throw PreconditionError("missing result");
  }
  for (const ElementSet& q : plan.fan_queries) {
    if (results.find(q) == nullptr) throw PreconditionError("missing result");
  }
  SortResult result;
  if (plan.t == 1) {
    TableSource source(plan.effective, plan.n, results);
    result = online::sort_singleton(source);
  } else {
    const SupersetOrder order = order_superset(plan, results);
    KnowledgeBase kb(plan.effective, results, order.chain, order.anchors_above);
    DeducingSource source(kb, plan.n);
    result = online::sort_singleton(source);
  }
  if (plan.mirrored) result = reflect(std::move(result));
  result.queries_used = static_cast<std::int64_t>(plan.size());
  result.stage_queries = {{"plan", result.queries_used}};
  return result;
}

SortResult recursive_sort(QuerySource& source, bool t2_shortcut) {
  const RecursivePlan plan =
      build_recursive_plan(source.n(), source.spec(), t2_shortcut);
  ResultTable results;
  for (const ElementSet& q : plan.closure_queries) results.add(q, source.ask(q));
  for (const ElementSet& q : plan.fan_queries) results.add(q, source.ask(q));
  return recursive_solve(plan, results);
}

}  // namespace scalesort::offline
