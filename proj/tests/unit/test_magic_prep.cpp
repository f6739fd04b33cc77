// Copyright 2026 The hpspin Authors
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


#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "hpspin/magic_prep.hpp"

namespace hpspin {
namespace {

// Symmetric sums of stabilizer powers from dense exponentials.
struct OracleSums {
  CMat sz, sx;
};

OracleSums oracle_sums(int n, int m_max) {
  const SpinOperators ops = spin_operators(n);
  const double s2 = 2.0 * std::sqrt(2.0 * kPi / n);
  OracleSums o{CMat::Zero(n + 1, n + 1), CMat::Zero(n + 1, n + 1)};
  for (int m = -m_max; m <= m_max; ++m) {
    o.sz += (kI * (s2 * m) * ops.jx).exp();
    o.sx += (-kI * (s2 * m) * ops.jy).exp();
  }
  return o;
}

TEST(DampedProjectors, NoDampingGivesPlainSums) {
  const int n = 10;
  const DampedProjectors d = damped_projectors({n, 0.0, 3, false});
  const OracleSums o = oracle_sums(n, 3);
  EXPECT_LT((d.pi_q - o.sz).norm(), 1e-10);
  EXPECT_LT((d.pi_p - o.sx).norm(), 1e-10);
  EXPECT_NEAR(d.condition, 1.0, 1e-15);
  EXPECT_LT(d.hermiticity_q, 1e-10);
}

TEST(DampedProjectors, SimilarityTransform) {
  const int n = 12;
  const DampedProjectorParams p{n, 0.3, 2, false};
  const DampedProjectors d = damped_projectors(p);
  const OracleSums o = oracle_sums(n, 2);
  RVec e(n + 1);
  for (int k = 0; k <= n; ++k) e(k) = std::exp(-0.09 * k);
  EXPECT_LT((damping_diagonal(p) - e).norm(), 1e-15);
  const CMat ref = e.asDiagonal() * o.sz * e.cwiseInverse().asDiagonal();
  EXPECT_LT((d.pi_q - ref).norm(), 1e-9 * ref.norm());
  EXPECT_NEAR(d.condition, std::exp(0.09 * n), 1e-9);
  EXPECT_GT(d.hermiticity_q, 0.0);
}

TEST(DampedProjectors, IllConditionedDampingThrows) {
  try {
    damped_projectors({40, 1.0, 5, true});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNumeric);
  }
}

TEST(ResourceState, UnclippedEqualsProjectorProduct) {
  const int n = 16;
  const DampedProjectorParams p{n, 0.3, 2, false};
  const DampedProjectors d = damped_projectors(p);
  const CVec ref = d.pi_q * (d.pi_p * highest_weight(n));
  const ResourceState r = prepare_resource_state(p);
  EXPECT_NEAR(std::abs(r.state.amp.dot(ref.normalized())), 1.0, 1e-12);
  EXPECT_NEAR(r.norm, ref.norm(), 1e-9 * ref.norm());
  EXPECT_EQ(r.terms, 25);
}

TEST(ResourceState, ZeroPowersLeaveTopState) {
  const ResourceState r = prepare_resource_state({20, 0.4, 0, true});
  EXPECT_NEAR(std::abs(r.state.amp(0)), 1.0, 1e-14);
  EXPECT_EQ(r.terms, 1);
}

TEST(ResourceState, ClippingDropsFarPowers) {
  const ResourceState full = prepare_resource_state({40, 0.2, 5, false});
  const ResourceState clip = prepare_resource_state({40, 0.2, 5, true});
  EXPECT_LT(clip.terms, full.terms);
  EXPECT_GT(prepare_resource_state({160, 0.2, 5, true}).norm, 0.0);
}

TEST(MagicTarget, Normalized) {
  const CodePair c = build_gkp_pair(40, 0.5, 2, 2);
  const SymmetricState t = magic_target(c);
  EXPECT_NEAR(t.amp.norm(), 1.0, 1e-14);
  const CVec ref = (std::cos(kPi / 8) * c.zero.amp + std::sin(kPi / 8) * c.one.amp).normalized();
  EXPECT_NEAR(std::abs(t.amp.dot(ref)), 1.0, 1e-12);
}

TEST(MagicCurve, FrozenValuesAndTrend) {
  MagicPreset preset;
  preset.sensitivity_m_max = 10;
  const auto pts = magic_infidelity_curve({40, 80, 120, 160}, preset);
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_EQ(pts[0].truncation, 2);
  EXPECT_NEAR(pts[0].damping, 0.5 * std::sqrt(kPi) / 2, 1e-15);
  EXPECT_NEAR(pts[0].infidelity, 0.0601674, 1e-6);
  EXPECT_NEAR(pts[1].infidelity, 0.0232993, 1e-6);
  EXPECT_NEAR(pts[0].preselection_norm_sq, 1.88556, 1e-4);
  for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LT(pts[i].infidelity, pts[i - 1].infidelity);
  EXPECT_LT(pts.back().sensitivity, 1e-6);
}

}  // namespace
}  // namespace hpspin
