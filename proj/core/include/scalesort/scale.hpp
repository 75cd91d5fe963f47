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

#ifndef SCALESORT_SCALE_HPP_
#define SCALESORT_SCALE_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace scalesort {

// Opaque element label in [0, n). Labels carry no order information.
using ElementId = std::int32_t;

// Sorted, duplicate-free list of element labels.
using ElementSet = std::vector<ElementId>;

// A (k, t1, ..., ts) scale: takes k elements, returns the unordered set of
// those at 1-based rank positions t1 < ... < ts within the queried set.
class ScaleSpec {
 public:
  // Throws PreconditionError unless k >= 2 and 1 <= t1 < ... < ts <= k.
  ScaleSpec(int k, std::vector<int> outputs);

  // Text form "k:t1,t2,...", e.g. "7:2,6".
  static ScaleSpec parse(std::string_view text);
  std::string to_string() const;

  int k() const { return k_; }
  const std::vector<int>& outputs() const { return outputs_; }
  int s() const { return static_cast<int>(outputs_.size()); }
  int t_first() const { return outputs_.front(); }
  int t_last() const { return outputs_.back(); }

  // |S|: the t1 - 1 globally smallest elements are never returned.
  int s_size() const { return t_first() - 1; }
  // |L|: the k - ts globally largest elements are never returned.
  int l_size() const { return k_ - t_last(); }
  // Reduced arity once the ts - 1 lowest slots are filled by known elements.
  int k_prime() const { return k_ - (t_last() - 1); }

  bool is_symmetric() const;
  bool is_output_position(int position) const;

  // Spec with every position t replaced by k + 1 - t. The mirrored scale on
  // the reversed order answers every query exactly like this one.
  ScaleSpec mirrored() const;

  friend bool operator==(const ScaleSpec&, const ScaleSpec&) = default;

 private:
  int k_;
  std::vector<int> outputs_;
};

struct ScaleProperties {
  int s_size;
  int l_size;
  bool is_symmetric;
  int k_prime;
};

ScaleProperties scale_properties(const ScaleSpec& spec);

// Smallest index p <= k/2 for which exactly one of positions p and k + 1 - p
// is an output. Returns 0 for symmetric specs.
int asymmetry_index(const ScaleSpec& spec);

}  // namespace scalesort

#endif  // SCALESORT_SCALE_HPP_
