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

#include <gtest/gtest.h>

#include "scalesort/errors.hpp"

namespace scalesort {
namespace {

TEST(ScaleSpecTest, RejectsInvalidOutputs) {
  EXPECT_THROW(ScaleSpec(3, {}), PreconditionError);
  EXPECT_THROW(ScaleSpec(3, {0}), PreconditionError);
  EXPECT_THROW(ScaleSpec(3, {4}), PreconditionError);
  EXPECT_THROW(ScaleSpec(4, {2, 2}), PreconditionError);
  EXPECT_THROW(ScaleSpec(4, {3, 2}), PreconditionError);
}

TEST(ScaleSpecTest, ParsesAndPrints) {
  const ScaleSpec spec = ScaleSpec::parse("7:2,6");
  EXPECT_EQ(spec.k(), 7);
  EXPECT_EQ(spec.outputs(), (std::vector<int>{2, 6}));
  EXPECT_EQ(spec.to_string(), "7:2,6");
  EXPECT_THROW(ScaleSpec::parse("7"), PreconditionError);
  EXPECT_THROW(ScaleSpec::parse("x:1"), PreconditionError);
}

TEST(ScalePropertiesTest, MedianOfThreeIsSymmetric) {
  const ScaleProperties p = scale_properties(ScaleSpec(3, {2}));
  EXPECT_EQ(p.s_size, 1);
  EXPECT_EQ(p.l_size, 1);
  EXPECT_TRUE(p.is_symmetric);
  EXPECT_EQ(p.k_prime, 2);
}

TEST(ScalePropertiesTest, SecondOfFourIsAsymmetric) {
  const ScaleProperties p = scale_properties(ScaleSpec(4, {2}));
  EXPECT_EQ(p.s_size, 1);
  EXPECT_EQ(p.l_size, 2);
  EXPECT_FALSE(p.is_symmetric);
  EXPECT_EQ(p.k_prime, 3);
}

TEST(ScalePropertiesTest, MultiOutputReflection) {
  const ScaleProperties p = scale_properties(ScaleSpec(5, {2, 4}));
  EXPECT_EQ(p.s_size, 1);
  EXPECT_EQ(p.l_size, 1);
  EXPECT_TRUE(p.is_symmetric);
  EXPECT_EQ(p.k_prime, 2);
}

TEST(ScaleSpecTest, MirroredMapsPositions) {
  EXPECT_EQ(ScaleSpec(4, {2}).mirrored(), ScaleSpec(4, {3}));
  EXPECT_EQ(ScaleSpec(7, {2, 6}).mirrored(), ScaleSpec(7, {2, 6}));
  EXPECT_EQ(ScaleSpec(5, {1, 2}).mirrored(), ScaleSpec(5, {4, 5}));
}

TEST(AsymmetryIndexTest, FirstUnmatchedPosition) {
  EXPECT_EQ(asymmetry_index(ScaleSpec(6, {2, 4})), 2);
  EXPECT_EQ(asymmetry_index(ScaleSpec(5, {1, 2})), 1);
  EXPECT_EQ(asymmetry_index(ScaleSpec(4, {2})), 2);
  EXPECT_EQ(asymmetry_index(ScaleSpec(3, {2})), 0);
}

}  // namespace
}  // namespace scalesort
