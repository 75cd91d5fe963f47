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

// Adaptive sorting with a scale: candidate elimination, S/L partition,
// k'-ary tournament, and the multi-output pipeline built from them.

#ifndef SCALESORT_ONLINE_HPP_
#define SCALESORT_ONLINE_HPP_

#include <functional>
#include <vector>

#include "scalesort/oracle.hpp"
#include "scalesort/sort_result.hpp"

namespace scalesort::online {

struct CandidateState {
  ElementSet candidates;               // still possibly in S or L
  std::vector<ElementId> eliminated;   // seen in some outcome, in that order
};

// Shrinks the universe to exactly S u L. Singleton scales query the k
// lowest-labeled candidates until k - 1 remain; multi-output scales do the
// same down to k - s and then refine with all C(2a-1, a) donor queries.
// Requires n >= k + 1 (s = 1) or n >= 2k (s > 1).
CandidateState eliminate_candidates(QuerySource& source);
// Same, restricted to `universe` (S and L are then those of the universe).
// Only checks that the universe can host a query.
CandidateState eliminate_candidates(QuerySource& source,
                                    const ElementSet& universe);

enum class Labeling { kAIsS, kBIsS, kUnknown };

struct SLPartition {
  ElementSet a;  // the group holding the lowest-labeled candidate
  ElementSet b;  // the other group; may be empty
  Labeling labeling;
};

// Splits S u L by the outcome each candidate gives alongside a fixed
// reference of k - 1 eliminated elements. When fewer than k - 1 elements are
// eliminated the probe is (candidates - c) plus the lowest k - |cand| + 1
// eliminated elements, which separates S from L just as well.
SLPartition partition_SL(QuerySource& source, const CandidateState& state);

// k'-ary grouping of the middle for repeated minimum extraction.
class LevelGrid {
 public:
  // Picks the minimum of two or more contenders (sorted ids).
  using Selector = std::function<ElementId(const ElementSet&)>;

  LevelGrid(const std::vector<ElementId>& middle, int branching);

  int depth() const { return depth_; }
  int branching() const { return branching_; }
  // Number of blocks on 1-based `level`.
  int block_count(int level) const;

  // First pass, then extraction of the global minimum until empty; after
  // each extraction only the blocks on the extracted element's chain are
  // re-evaluated. Returns the middle in ascending order.
  std::vector<ElementId> sort(const Selector& select_min);

  // Blocks re-evaluated after each extraction (one entry per extraction).
  const std::vector<int>& reevaluations() const { return reevaluations_; }

 private:
  struct Block {
    int level = 1;
    int parent = -1;
    std::vector<int> children;     // higher levels
    ElementSet elements;           // level 1 only
    ElementId best = -1;           // current minimum, -1 when exhausted
  };

  void evaluate(int block, const Selector& select_min);

  int branching_;
  int depth_ = 1;
  std::vector<Block> blocks_;
  std::vector<int> leaf_of_;       // element id -> level-1 block
  std::vector<int> level_sizes_;
  int root_ = -1;
  std::vector<int> reevaluations_;
};

// Orders `middle` with the reduced (k', 1) scale obtained by always
// including `floor` (known smaller than all of middle, |floor| = ts - 1) and
// padding short blocks with the lowest-labeled elements of `pads` (known
// larger than all of middle).
std::vector<ElementId> tournament_order(QuerySource& source,
                                        const ElementSet& floor,
                                        const ElementSet& pads,
                                        const ElementSet& middle);

// Singleton-scale tournament stage: s_set is the floor, l_set the padding.
SortResult tournament_sort(QuerySource& source, const ElementSet& s_set,
                           const ElementSet& l_set, const ElementSet& middle);

// Full singleton pipeline. Scales with t - 1 > k - t run mirrored.
SortResult sort_singleton(QuerySource& source);
SortResult sort_singleton(QuerySource& source, const ElementSet& universe);

// Full multi-output pipeline; requires s >= 2 and n > 2k. Supported shapes:
// t1 >= 2 and ts <= k - 1, or an output run touching one end ({1..ts} or
// {t1..k}). Other shapes throw PreconditionError.
SortResult multi_sort(QuerySource& source);

// sort_singleton or multi_sort depending on the scale.
SortResult online_sort(QuerySource& source);

struct SegmentPair {
  ElementSet first;   // the two outcome groups of one peeled layer
  ElementSet second;
  // 1 when `first` is S_i, 2 when `second` is, 0 when not determined.
  int s_group = 0;
};

struct LayeredSegments {
  std::vector<SegmentPair> pairs;
  int p = 0;  // smallest asymmetry index
};

// Peels max(pairs_needed, p + k - 2) layers of S_i/L_i pairs and identifies
// S_p .. S_{p+k-2} with one probe each, then labels layer 1 with a final
// query. Requires an asymmetric scale with s >= 2.
LayeredSegments resolve_SL_layered(QuerySource& source, int pairs_needed);

}  // namespace scalesort::online

#endif  // SCALESORT_ONLINE_HPP_
