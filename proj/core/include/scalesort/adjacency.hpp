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

// Non-adaptive sorting by adjacency elimination: three reference fans are
// answered in one batch, non-neighbours are struck off, and the surviving
// path is the order up to reflection.

#ifndef SCALESORT_ADJACENCY_HPP_
#define SCALESORT_ADJACENCY_HPP_

#include <cstdint>
#include <vector>

#include "scalesort/oracle.hpp"
#include "scalesort/sort_result.hpp"

namespace scalesort::offline {

struct QueryPlan {
  ScaleSpec spec{2, {1}};       // the instrument as given
  ScaleSpec effective{2, {1}};  // the instrument the plan reasons about
  bool mirrored = false;        // effective == spec.mirrored()
  int n = 0;
  int rho = 0;                  // reference-set size
  std::vector<ElementSet> reference_sets;
  std::vector<ElementSet> queries;  // fan by fan
  std::vector<int> fan_of;          // fan index of each query
};

// rho = ts - 1; singleton scales with t - 1 > k - t are planned mirrored.
// Reference sets are the lowest labels. With rho = 0 the plan is every
// k-subset, otherwise 3 * C(n - rho, k - rho) queries.
// Requires n >= 3 rho + (k - rho) + 1 and n <= 64.
QueryPlan build_adjacency_plan(int n, const ScaleSpec& spec);

// Plan size without building it.
std::uint64_t adjacency_plan_size(int n, const ScaleSpec& spec);

struct AdjacencyMap {
  int n = 0;
  ElementSet support;                  // elements seen in some outcome
  std::vector<ElementSet> neighbors;   // indexed by id
  std::size_t edge_count() const;
  bool is_path() const;
};

// Starts from the complete graph on the support and deletes {u, v} whenever
// two sibling queries Q, Q' = Q - u + v of one fan have u in outcome(Q) but
// v not in outcome(Q'). Adjacent pairs can never be deleted.
AdjacencyMap eliminate_nonadjacent(const QueryPlan& plan,
                                   const ResultTable& results);

// Walks a path map from its lowest-labeled endpoint. Throws
// InconsistentAnswers if the map is not a single path.
std::vector<ElementId> walk_path(const AdjacencyMap& adj);

// Orients the path and splits the unseen elements into S and L by testing
// every hypothesis against all transcript entries (interpreted under
// `spec`). Two surviving mirror-image hypotheses on a symmetric scale give a
// reflection_ambiguous result; anything else undetermined throws.
SortResult rebuild_order(const AdjacencyMap& adj, const Transcript& transcript,
                         const ScaleSpec& spec);

// Reconstruction from an answered plan.
SortResult adjacency_solve(const QueryPlan& plan, const ResultTable& results);

// Builds the plan, submits it as one batch, and reconstructs.
SortResult adjacency_sort(QuerySource& source);

}  // namespace scalesort::offline

#endif  // SCALESORT_ADJACENCY_HPP_
