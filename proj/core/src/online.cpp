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

#include "scalesort/online.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <utility>

#include "scalesort/combinatorics.hpp"
#include "scalesort/errors.hpp"

namespace scalesort::online {
namespace {

void stage(QuerySource& source, const char* name) {
  if (auto* tally = dynamic_cast<TallyingSource*>(&source)) {
    tally->set_stage(name);
  }
}

// Books everything inside a scope under one stage name.
class StageLock {
 public:
  StageLock(TallyingSource& tally, const char* name) : tally_(tally) {
    tally_.lock_stage(name);
  }
  ~StageLock() { tally_.unlock_stage(); }
  StageLock(const StageLock&) = delete;
  StageLock& operator=(const StageLock&) = delete;

 private:
  TallyingSource& tally_;
};

ElementSet lowest(const ElementSet& sorted, std::size_t count) {
  count = std::min(count, sorted.size());
  return ElementSet(sorted.begin(), sorted.begin() + count);
}

SortResult finish(SortResult result, const TallyingSource& tally) {
  result.queries_used = tally.total();
  result.stage_queries = tally.tally();
  return result;
}

CandidateState eliminate_impl(QuerySource& source, const ElementSet& universe) {
  const ScaleSpec& spec = source.spec();
  const int k = spec.k();
  const int s = spec.s();
  if (static_cast<int>(universe.size()) < k) {
    throw PreconditionError("universe holds fewer than k elements");
  }
  std::set<ElementId> cand(universe.begin(), universe.end());
  CandidateState state;
  auto drop = [&](const ElementSet& outcome) {
    for (ElementId id : outcome) {
      if (cand.erase(id) != 0) state.eliminated.push_back(id);
    }
  };

  stage(source, "eliminate.initial");
  while (static_cast<int>(cand.size()) > k - s) {
    ElementSet query;
    const bool topped_up = static_cast<int>(cand.size()) < k;
    if (!topped_up) {
      auto it = cand.begin();
      for (int i = 0; i < k; ++i) query.push_back(*it++);
    } else {
      // Fill with already-eliminated (known middle) elements; only genuine
      // candidates are dropped from the outcome.
      query.assign(cand.begin(), cand.end());
      const ElementSet donors =
          lowest(sorted_set(state.eliminated), k - cand.size());
      if (donors.size() + cand.size() != static_cast<std::size_t>(k)) {
        throw PreconditionError("too few elements to top up a query");
      }
      query = set_union(query, donors);
    }
    drop(source.ask(query));
    if (topped_up) break;
  }

  const int target = spec.s_size() + spec.l_size();
  stage(source, "eliminate.refine");
  while (static_cast<int>(cand.size()) > target) {
    const int a = k - static_cast<int>(cand.size());
    const ElementSet eliminated = sorted_set(state.eliminated);
    if (static_cast<int>(eliminated.size()) < 2 * a - 1) {
      throw PreconditionError(
          "too few eliminated elements for a refinement round; n too small");
    }
    const ElementSet donors = lowest(eliminated, 2 * a - 1);
    const ElementSet base(cand.begin(), cand.end());
    std::vector<ElementId> removed;
    for_each_combination(donors, a, [&](const std::vector<ElementId>& extra) {
      const ElementSet outcome = source.ask(set_union(base, extra));
      for (ElementId id : outcome) {
        if (set_contains(base, id)) removed.push_back(id);
      }
    });
    const ElementSet gone = sorted_set(std::move(removed));
    if (gone.empty()) {
      throw InconsistentAnswers("refinement round eliminated nothing");
    }
    drop(gone);
  }
  state.candidates.assign(cand.begin(), cand.end());
  return state;
}

SLPartition partition_impl(QuerySource& source, const CandidateState& state) {
  const ScaleSpec& spec = source.spec();
  const int k = spec.k();
  const ElementSet& cand = state.candidates;
  const ElementSet eliminated = sorted_set(state.eliminated);
  stage(source, "partition");

  std::vector<std::pair<ElementSet, ElementSet>> groups;  // outcome, members
  auto record = [&](const ElementSet& outcome, ElementId c) {
    for (auto& [seen, members] : groups) {
      if (seen == outcome) {
        members.push_back(c);
        return;
      }
    }
    groups.push_back({outcome, {c}});
  };

  if (static_cast<int>(eliminated.size()) >= k - 1) {
    const ElementSet reference = lowest(eliminated, k - 1);
    for (ElementId c : cand) record(source.ask(set_union(reference, {c})), c);
  } else {
    const std::size_t need = k - cand.size() + 1;
    if (eliminated.size() < need) {
      throw PreconditionError("too few eliminated elements to partition S/L");
    }
    const ElementSet extra = lowest(eliminated, need);
    for (ElementId c : cand) {
      record(source.ask(set_union(set_difference(cand, {c}), extra)), c);
    }
  }

  if (groups.size() > 2) {
    throw InconsistentAnswers("more than two outcome shapes while partitioning");
  }
  SLPartition part;
  if (!groups.empty()) part.a = groups[0].second;
  if (groups.size() == 2) part.b = groups[1].second;
  const std::size_t s_size = spec.s_size();
  const std::size_t l_size = spec.l_size();

  if (part.b.empty()) {
    if (s_size == 0 && part.a.size() == l_size) {
      part.labeling = Labeling::kBIsS;
    } else if (l_size == 0 && part.a.size() == s_size) {
      part.labeling = Labeling::kAIsS;
    } else {
      throw InconsistentAnswers("S and L did not separate");
    }
  } else if (s_size == l_size) {
    if (part.a.size() != s_size || part.b.size() != l_size) {
      throw InconsistentAnswers("S/L group sizes do not match the scale");
    }
    part.labeling = Labeling::kUnknown;
  } else if (part.a.size() == s_size && part.b.size() == l_size) {
    part.labeling = Labeling::kAIsS;
  } else if (part.b.size() == s_size && part.a.size() == l_size) {
    part.labeling = Labeling::kBIsS;
  } else {
    throw InconsistentAnswers("S/L group sizes do not match the scale");
  }
  return part;
}

std::pair<ElementSet, ElementSet> split(const SLPartition& part) {
  if (part.labeling == Labeling::kBIsS) return {part.b, part.a};
  return {part.a, part.b};
}

// Orders S' \ S layer by layer: with t1 - |R| known-smaller fill elements
// and k - t1 known-larger pads, position t1 is the maximum of R.
std::vector<ElementId> sort_layers(TallyingSource& tally,
                                   const std::vector<ElementSet>& layers,
                                   const ElementSet& top) {
  const int t1 = tally.spec().t_first();
  std::vector<ElementId> ascending;
  ElementSet below = layers.front();
  for (std::size_t i = 1; i < layers.size(); ++i) {
    ElementSet rest = layers[i];
    std::vector<ElementId> descending;
    while (rest.size() >= 2) {
      const ElementSet fill = lowest(below, t1 - rest.size());
      const ElementSet outcome =
          tally.ask(set_union(set_union(fill, rest), top));
      const ElementSet winner = set_difference(outcome, top);
      if (winner.size() != 1 || !set_contains(rest, winner[0])) {
        throw InconsistentAnswers("max extraction returned a non-candidate");
      }
      descending.push_back(winner[0]);
      rest = set_difference(rest, winner);
    }
    if (!rest.empty()) descending.push_back(rest[0]);
    ascending.insert(ascending.end(), descending.rbegin(), descending.rend());
    below = set_union(below, layers[i]);
  }
  return ascending;
}

// Peeling, tournament and top sort of the multi-output pipeline for a given
// S/L assignment.
SortResult run_layers(TallyingSource& tally, const ElementSet& universe,
                      const ElementSet& s_set, const ElementSet& l_set) {
  const ScaleSpec& spec = tally.spec();
  const int t1 = spec.t_first();
  const int ts = spec.t_last();

  std::vector<ElementSet> layers{s_set};
  ElementSet removed = s_set;
  ElementSet rest = set_difference(universe, s_set);
  {
    StageLock lock(tally, "peel");
    int need = ts - t1;
    while (need > 0) {
      const int take = std::min(need, t1 - 1);
      // Put back some earlier-removed elements so that this round's S is
      // exactly `take` new elements plus the re-inserted ones.
      const ElementSet reinserted = lowest(removed, (t1 - 1) - take);
      const ElementSet pool = set_union(rest, reinserted);
      const CandidateState state = eliminate_impl(tally, pool);
      const SLPartition part = partition_impl(tally, state);
      ElementSet low;
      if (part.a == l_set) {
        low = part.b;
      } else if (part.b == l_set) {
        low = part.a;
      } else {
        throw InconsistentAnswers("peeling round lost track of L");
      }
      const ElementSet layer = set_difference(low, reinserted);
      if (static_cast<int>(layer.size()) != take) {
        throw InconsistentAnswers("peeling round removed the wrong count");
      }
      layers.push_back(layer);
      rest = set_difference(rest, layer);
      removed = set_union(removed, layer);
      need -= take;
    }
  }

  const ElementSet middle = set_difference(rest, l_set);
  tally.set_stage("tournament");
  const std::vector<ElementId> order =
      tournament_order(tally, removed, l_set, middle);

  tally.set_stage("remnant");
  const std::size_t extra = static_cast<std::size_t>(ts - t1);
  if (order.size() < extra) {
    throw PreconditionError("middle too small to pad the max extractor");
  }
  const ElementSet top = set_union(
      l_set, sorted_set({order.begin(), order.begin() + extra}));

  SortResult result;
  result.middle = sort_layers(tally, layers, top);
  result.middle.insert(result.middle.end(), order.begin(), order.end());
  result.s_set = s_set;
  result.l_set = l_set;
  return result;
}

SortResult multi_main(QuerySource& source) {
  const ScaleSpec& spec = source.spec();
  TallyingSource tally(source);
  const ElementSet universe = all_elements(source.n());
  const CandidateState state = eliminate_impl(tally, universe);
  const SLPartition part = partition_impl(tally, state);

  if (part.labeling != Labeling::kUnknown) {
    auto [s_set, l_set] = split(part);
    return finish(run_layers(tally, universe, s_set, l_set), tally);
  }
  if (spec.is_symmetric()) {
    // Either assignment is the other one seen in the mirror.
    SortResult result = run_layers(tally, universe, part.a, part.b);
    result.orientation = Orientation::kReflectionAmbiguous;
    return finish(std::move(result), tally);
  }

  // |S| = |L| on an asymmetric scale: try an assignment, check it against
  // one query over the lowest-labeled middle elements, else try the other.
  auto attempt = [&](const ElementSet& s_set,
                     const ElementSet& l_set) -> std::optional<SortResult> {
    SortResult result;
    try {
      result = run_layers(tally, universe, s_set, l_set);
    } catch (const InconsistentAnswers&) {
      return std::nullopt;
    }
    tally.set_stage("verify");
    const ElementSet probe =
        lowest(sorted_set(result.middle), static_cast<std::size_t>(spec.k()));
    const ElementSet predicted =
        predict_outcome(spec, ranks_of(result, source.n()), probe);
    if (tally.ask(probe) != predicted) return std::nullopt;
    return result;
  };
  if (auto result = attempt(part.a, part.b)) return finish(*result, tally);
  if (auto result = attempt(part.b, part.a)) return finish(*result, tally);
  throw InconsistentAnswers("neither S/L assignment explains the answers");
}

// Outputs {1..ts}: the ts smallest elements always come back together and
// cannot be told apart, so they are located as a block and reported in
// label order at the front of the middle.
SortResult bottom_run(QuerySource& source) {
  const ScaleSpec& spec = source.spec();
  const int k = spec.k();
  const int ts = spec.t_last();
  TallyingSource tally(source);
  const ElementSet universe = all_elements(source.n());
  const CandidateState state = eliminate_impl(tally, universe);
  const SLPartition part = partition_impl(tally, state);
  const ElementSet l_set = split(part).second;
  const ElementSet rest = set_difference(universe, l_set);

  tally.set_stage("bottom");
  ElementSet pool = lowest(rest, ts);
  const ElementSet others = set_difference(rest, pool);
  const std::size_t chunk = static_cast<std::size_t>(k - ts);
  for (std::size_t i = 0; i < others.size(); i += chunk) {
    const ElementSet block(others.begin() + i,
                           others.begin() + std::min(others.size(), i + chunk));
    const ElementSet pads = lowest(l_set, chunk - block.size());
    const ElementSet outcome =
        tally.ask(set_union(set_union(pool, block), pads));
    if (!set_intersection(outcome, l_set).empty()) {
      throw InconsistentAnswers("bottom block selection returned a pad");
    }
    pool = outcome;
  }

  const ElementSet floor = lowest(pool, ts - 1);
  tally.set_stage("tournament");
  const std::vector<ElementId> order =
      tournament_order(tally, floor, l_set, set_difference(rest, pool));
  SortResult result;
  result.middle.assign(pool.begin(), pool.end());
  result.middle.insert(result.middle.end(), order.begin(), order.end());
  result.l_set = l_set;
  return finish(std::move(result), tally);
}

bool is_run(const std::vector<int>& outputs) {
  for (std::size_t i = 1; i < outputs.size(); ++i) {
    if (outputs[i] != outputs[i - 1] + 1) return false;
  }
  return true;
}

}  // namespace

CandidateState eliminate_candidates(QuerySource& source) {
  const ScaleSpec& spec = source.spec();
  const int n = source.n();
  if (spec.s() == 1 && n < spec.k() + 1) {
    throw PreconditionError("singleton scales need n >= k + 1");
  }
  if (spec.s() > 1 && n < 2 * spec.k()) {
    throw PreconditionError("multi-output elimination needs n >= 2k");
  }
  return eliminate_impl(source, all_elements(n));
}

CandidateState eliminate_candidates(QuerySource& source,
                                    const ElementSet& universe) {
  return eliminate_impl(source, sorted_set(universe));
}

SLPartition partition_SL(QuerySource& source, const CandidateState& state) {
  return partition_impl(source, state);
}

LevelGrid::LevelGrid(const std::vector<ElementId>& middle, int branching)
    : branching_(branching) {
  if (branching < 2) throw PreconditionError("tournament branching must be >= 2");
  if (middle.empty()) return;
  const ElementSet members = sorted_set(middle);
  leaf_of_.assign(static_cast<std::size_t>(members.back()) + 1, -1);

  std::vector<int> current;
  for (std::size_t i = 0; i < members.size(); i += branching) {
    Block block;
    block.elements.assign(
        members.begin() + i,
        members.begin() + std::min(members.size(), i + branching));
    for (ElementId id : block.elements) {
      leaf_of_[id] = static_cast<int>(blocks_.size());
    }
    current.push_back(static_cast<int>(blocks_.size()));
    blocks_.push_back(std::move(block));
  }
  level_sizes_.push_back(static_cast<int>(current.size()));
  int level = 1;
  while (current.size() > 1) {
    ++level;
    std::vector<int> next;
    for (std::size_t i = 0; i < current.size(); i += branching) {
      Block block;
      block.level = level;
      const int id = static_cast<int>(blocks_.size());
      for (std::size_t j = i; j < std::min(current.size(), i + branching); ++j) {
        block.children.push_back(current[j]);
        blocks_[current[j]].parent = id;
      }
      next.push_back(id);
      blocks_.push_back(std::move(block));
    }
    level_sizes_.push_back(static_cast<int>(next.size()));
    current = std::move(next);
  }
  depth_ = level;
  root_ = current.front();
}

int LevelGrid::block_count(int level) const {
  if (level < 1 || level > static_cast<int>(level_sizes_.size())) return 0;
  return level_sizes_[level - 1];
}

void LevelGrid::evaluate(int index, const Selector& select_min) {
  Block& block = blocks_[index];
  ElementSet contenders;
  if (block.children.empty()) {
    contenders = block.elements;
  } else {
    for (int child : block.children) {
      if (blocks_[child].best >= 0) contenders.push_back(blocks_[child].best);
    }
    contenders = sorted_set(std::move(contenders));
  }
  if (contenders.empty()) {
    block.best = -1;
  } else if (contenders.size() == 1) {
    block.best = contenders.front();
  } else {
    const ElementId winner = select_min(contenders);
    if (!set_contains(contenders, winner)) {
      throw InconsistentAnswers("selector returned a non-contender");
    }
    block.best = winner;
  }
}

std::vector<ElementId> LevelGrid::sort(const Selector& select_min) {
  std::vector<ElementId> out;
  if (root_ < 0) return out;
  // Blocks were created level by level, so children precede parents.
  for (int i = 0; i < static_cast<int>(blocks_.size()); ++i) {
    evaluate(i, select_min);
  }
  while (blocks_[root_].best >= 0) {
    const ElementId winner = blocks_[root_].best;
    out.push_back(winner);
    int index = leaf_of_[winner];
    auto& elements = blocks_[index].elements;
    elements.erase(std::find(elements.begin(), elements.end(), winner));
    int touched = 0;
    for (; index >= 0; index = blocks_[index].parent) {
      evaluate(index, select_min);
      ++touched;
    }
    reevaluations_.push_back(touched);
  }
  return out;
}

std::vector<ElementId> tournament_order(QuerySource& source,
                                        const ElementSet& floor,
                                        const ElementSet& pads,
                                        const ElementSet& middle) {
  const int k = source.spec().k();
  const int k_prime = k - static_cast<int>(floor.size());
  if (middle.size() <= 1) return {middle.begin(), middle.end()};
  if (k_prime < 2) throw PreconditionError("reduced arity below 2");
  LevelGrid grid({middle.begin(), middle.end()}, k_prime);
  return grid.sort([&](const ElementSet& contenders) {
    const std::size_t npads = k - floor.size() - contenders.size();
    if (npads > pads.size()) throw PreconditionError("padding exhausted");
    const ElementSet query =
        set_union(set_union(floor, contenders), lowest(pads, npads));
    const ElementSet winner = set_difference(source.ask(query), floor);
    if (winner.size() != 1 || !set_contains(contenders, winner[0])) {
      throw InconsistentAnswers("tournament query did not isolate one block element");
    }
    return winner[0];
  });
}

SortResult tournament_sort(QuerySource& source, const ElementSet& s_set,
                           const ElementSet& l_set, const ElementSet& middle) {
  TallyingSource tally(source);
  tally.set_stage("tournament");
  SortResult result;
  result.middle = tournament_order(tally, s_set, l_set, middle);
  result.s_set = s_set;
  result.l_set = l_set;
  return finish(std::move(result), tally);
}

SortResult sort_singleton(QuerySource& source) {
  return sort_singleton(source, all_elements(source.n()));
}

SortResult sort_singleton(QuerySource& source, const ElementSet& universe) {
  const ScaleSpec& spec = source.spec();
  const int k = spec.k();
  const int t = spec.t_first();
  if (spec.s() != 1) throw PreconditionError("sort_singleton needs s = 1");
  if (static_cast<int>(universe.size()) < k + 1) {
    throw PreconditionError("singleton scales need n >= k + 1");
  }
  if (t - 1 > k - t) {
    MirroredSource mirrored(source);
    return reflect(sort_singleton(mirrored, universe));
  }

  TallyingSource tally(source);
  const CandidateState state = eliminate_impl(tally, sorted_set(universe));
  const SLPartition part = partition_impl(tally, state);
  auto [s_set, l_set] = split(part);

  tally.set_stage("tournament");
  SortResult result;
  result.middle = tournament_order(tally, s_set, l_set,
                                   sorted_set(state.eliminated));
  result.s_set = s_set;
  result.l_set = l_set;
  if (part.labeling == Labeling::kUnknown) {
    result.orientation = Orientation::kReflectionAmbiguous;
  }
  return finish(std::move(result), tally);
}

SortResult multi_sort(QuerySource& source) {
  const ScaleSpec& spec = source.spec();
  const int k = spec.k();
  if (spec.s() < 2) throw PreconditionError("multi_sort needs s >= 2");
  if (source.n() <= 2 * k) {
    throw PreconditionError("multi-output scales need n > 2k");
  }
  const int t1 = spec.t_first();
  const int ts = spec.t_last();
  if (t1 >= 2 && ts <= k - 1) return multi_main(source);
  if (is_run(spec.outputs()) && t1 == 1 && ts <= k - 1) {
    return bottom_run(source);
  }
  if (is_run(spec.outputs()) && ts == k && t1 >= 2) {
    MirroredSource mirrored(source);
    return reflect(bottom_run(mirrored));
  }
  throw PreconditionError("unsupported multi-output shape " + spec.to_string());
}

SortResult online_sort(QuerySource& source) {
  return source.spec().s() == 1 ? sort_singleton(source) : multi_sort(source);
}

LayeredSegments resolve_SL_layered(QuerySource& source, int pairs_needed) {
  const ScaleSpec& spec = source.spec();
  const int k = spec.k();
  if (spec.s() < 2) throw PreconditionError("layered S/L needs s >= 2");
  if (spec.is_symmetric()) {
    throw PreconditionError("layered S/L is undefined for symmetric scales");
  }
  LayeredSegments out;
  out.p = asymmetry_index(spec);
  const int p = out.p;
  const int layers = std::max(pairs_needed, p + k - 2);

  ElementSet rest = all_elements(source.n());
  std::vector<ElementSet> inner;  // rest after peeling layer i
  for (int i = 0; i < layers; ++i) {
    const CandidateState state = eliminate_impl(source, rest);
    const SLPartition part = partition_impl(source, state);
    SegmentPair pair{part.a, part.b, 0};
    if (part.labeling == Labeling::kAIsS) pair.s_group = 1;
    if (part.labeling == Labeling::kBIsS) pair.s_group = 2;
    out.pairs.push_back(std::move(pair));
    rest = set_difference(set_difference(rest, part.a), part.b);
    inner.push_back(rest);
  }
  if (spec.s_size() == 0 || spec.l_size() == 0) return out;

  // With one element from each side of every earlier pair, e sits at
  // position p if it is in S_q and at k + 1 - p if it is in L_q; exactly one
  // of those positions is an output.
  for (int q = p; q <= p + k - 2; ++q) {
    ElementSet probe;
    for (int j = 1; j < p; ++j) {
      probe.push_back(out.pairs[j - 1].first.front());
      probe.push_back(out.pairs[j - 1].second.front());
    }
    const ElementId e = out.pairs[q - 1].first.front();
    probe.push_back(e);
    probe = sorted_set(std::move(probe));
    const ElementSet fill = lowest(inner[q - 1], k - probe.size());
    if (probe.size() + fill.size() != static_cast<std::size_t>(k)) {
      throw PreconditionError("too few inner elements to balance the probe");
    }
    const bool returned = set_contains(source.ask(set_union(probe, fill)), e);
    const bool e_in_s = spec.is_output_position(p) ? returned : !returned;
    const int s_group = e_in_s ? 1 : 2;
    if (out.pairs[q - 1].s_group != 0 && out.pairs[q - 1].s_group != s_group) {
      throw InconsistentAnswers("probe contradicts the size-based labeling");
    }
    out.pairs[q - 1].s_group = s_group;
  }

  // S_p < S_{p+1} < ...; c is below all of them iff c is in S_1.
  const ElementId c = out.pairs[0].first.front();
  std::vector<ElementId> refs;
  for (int q = p; q <= p + k - 2; ++q) {
    const SegmentPair& pair = out.pairs[q - 1];
    refs.push_back((pair.s_group == 1 ? pair.first : pair.second).front());
  }
  auto predicted = [&](const std::vector<ElementId>& ascending) {
    ElementSet outcome;
    for (int t : spec.outputs()) outcome.push_back(ascending[t - 1]);
    return sorted_set(std::move(outcome));
  };
  std::vector<ElementId> c_low{c};
  c_low.insert(c_low.end(), refs.begin(), refs.end());
  std::vector<ElementId> c_high = refs;
  c_high.push_back(c);
  const ElementSet actual = source.ask(sorted_set(c_low));
  int s_group = 0;
  if (actual == predicted(c_low)) s_group = 1;
  else if (actual == predicted(c_high)) s_group = 2;
  else throw InconsistentAnswers("classification query matches neither side");
  if (out.pairs[0].s_group != 0 && out.pairs[0].s_group != s_group) {
    throw InconsistentAnswers("classification contradicts the size labeling");
  }
  out.pairs[0].s_group = s_group;
  return out;
}

}  // namespace scalesort::online
