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

#include "scalesort/scale.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "scalesort/errors.hpp"

namespace scalesort {
namespace {

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw PreconditionError("malformed scale \"" + std::string(whole) +
                            "\": expected k:t1[,t2,...]");
  }
  return value;
}

}  // namespace

ScaleSpec::ScaleSpec(int k, std::vector<int> outputs)
    : k_(k), outputs_(std::move(outputs)) {
  if (k_ < 2) throw PreconditionError("scale arity k must be at least 2");
  if (outputs_.empty()) {
    throw PreconditionError("scale must return at least one position");
  }
  for (std::size_t i = 0; i < outputs_.size(); ++i) {
    if (outputs_[i] < 1 || outputs_[i] > k_) {
      throw PreconditionError("output position out of [1, k]");
    }
    if (i > 0 && outputs_[i] <= outputs_[i - 1]) {
      throw PreconditionError("output positions must be strictly increasing");
    }
  }
}

ScaleSpec ScaleSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw PreconditionError("malformed scale \"" + std::string(text) +
                            "\": expected k:t1[,t2,...]");
  }
  const int k = parse_int(text.substr(0, colon), text);
  std::vector<int> outputs;
  std::string_view rest = text.substr(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    outputs.push_back(parse_int(rest.substr(0, comma), text));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return ScaleSpec(k, std::move(outputs));
}

std::string ScaleSpec::to_string() const {
  std::ostringstream out;
  out << k_ << ':';
  for (std::size_t i = 0; i < outputs_.size(); ++i) {
    if (i > 0) out << ',';
    out << outputs_[i];
  }
  return out.str();
}

bool ScaleSpec::is_output_position(int position) const {
  return std::binary_search(outputs_.begin(), outputs_.end(), position);
}

bool ScaleSpec::is_symmetric() const { return mirrored() == *this; }

ScaleSpec ScaleSpec::mirrored() const {
  std::vector<int> reflected;
  reflected.reserve(outputs_.size());
  for (auto it = outputs_.rbegin(); it != outputs_.rend(); ++it) {
    reflected.push_back(k_ + 1 - *it);
  }
  return ScaleSpec(k_, std::move(reflected));
}

ScaleProperties scale_properties(const ScaleSpec& spec) {
  return {spec.s_size(), spec.l_size(), spec.is_symmetric(), spec.k_prime()};
}

int asymmetry_index(const ScaleSpec& spec) {
  for (int p = 1; 2 * p <= spec.k(); ++p) {
    if (spec.is_output_position(p) != spec.is_output_position(spec.k() + 1 - p)) {
      return p;
    }
  }
  return 0;
}

}  // namespace scalesort
