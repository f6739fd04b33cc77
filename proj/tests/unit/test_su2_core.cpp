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

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "hpspin/su2_core.hpp"

namespace hpspin {
namespace {

// Rotation built from a dense matrix exponential, independent of HermitianExp.
CVec scs_by_expm(int two_j, double theta, double phi) {
  const SpinOperators ops = spin_operators(two_j);
  const CMat gen = kI * theta * (std::sin(phi) * ops.jx - std::cos(phi) * ops.jy);
  return gen.exp() * highest_weight(two_j);
}

const std::vector<SCSParams> kAngles{{0.0, 0.0}, {0.3, 0.1}, {1.2, -0.7}, {kPi / 2, kPi / 2},
                                     {2.5, 4.0}, {kPi, 0.0}, {3.0, 2.2}};

TEST(Binomial, SmallValuesAreExact) {
  EXPECT_EQ(binomial(10, 3), 120.0);
  EXPECT_EQ(binomial(20, 10), 184756.0);
  EXPECT_EQ(binomial(7, 0), 1.0);
  EXPECT_EQ(binomial(7, 8), 0.0);
  EXPECT_NEAR(binomial(60, 30) / 118264581564861424.0, 1.0, 1e-14);
}

TEST(Degeneracy, ChecksumMatchesHilbertDimension) {
  for (int n = 1; n <= 20; ++n) {
    double total = 0.0;
    for (const IrrepLabel& l : irrep_table(n)) total += l.degeneracy * l.dim();
    EXPECT_EQ(total, std::ldexp(1.0, n)) << "N=" << n;
  }
  EXPECT_EQ(degeneracy(6, 2), 9.0);
  EXPECT_EQ(degeneracy(6, 6), 1.0);
  EXPECT_EQ(degeneracy(5, 1), 5.0);
}

TEST(IrrepTable, DescendingFromTop) {
  const auto t = irrep_table(7);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t.front().two_j, 7);
  EXPECT_EQ(t.back().two_j, 1);
}

TEST(SpinOperators, CommutatorsAndCasimir) {
  for (int two_j = 1; two_j <= 40; ++two_j) {
    const SpinOperators ops = spin_operators(two_j);
    EXPECT_LT(commutator_residual(ops), 1e-12) << "2J=" << two_j;
    const double j = 0.5 * two_j;
    const CMat cas = ops.jx * ops.jx + ops.jy * ops.jy + ops.jz * ops.jz;
    EXPECT_LT((cas - j * (j + 1) * CMat::Identity(two_j + 1, two_j + 1)).norm(), 1e-10);
  }
}

TEST(SpinOperators, LadderConvention) {
  const SpinOperators ops = spin_operators(4);
  // J+ |J, J-1> = sqrt(2J) |J, J>
  EXPECT_NEAR(ops.jplus(0, 1).real(), 2.0, 1e-14);
  EXPECT_NEAR(ops.jz(0, 0).real(), 2.0, 1e-14);
  EXPECT_LT((ops.jminus - ops.jplus.adjoint()).norm(), 1e-15);
}

TEST(Rotation, UnitaryAndMatchesScs) {
  for (int two_j : {1, 6, 31}) {
    for (const auto& om : kAngles) {
      const CMat r = rotation(two_j, om);
      const auto d = two_j + 1;
      EXPECT_LT((r * r.adjoint() - CMat::Identity(d, d)).norm(), 1e-12);
      EXPECT_LT((r.col(0) - scs_state(two_j, om)).norm(), 1e-11);
    }
  }
}

TEST(ScsState, AgreesWithDenseExponential) {
  for (int two_j : {2, 9, 40}) {
    for (const auto& om : kAngles) {
      const CVec ref = scs_by_expm(two_j, om.theta, om.phi);
      EXPECT_LT((scs_state(two_j, om) - ref).norm(), 1e-10) << two_j << " " << om.theta;
    }
  }
}

TEST(ScsState, LargeSpinStaysNormalized) {
  EXPECT_NEAR(scs_state(400, {1.1, 0.4}).norm(), 1.0, 1e-12);
  EXPECT_NEAR(scs_state(400, {kPi, 0.0})(400).real(), 1.0, 1e-12);
}

TEST(ScsOverlap, ClosedFormMatchesInnerProduct) {
  for (int n : {1, 5, 24}) {
    for (const auto& a : kAngles)
      for (const auto& b : kAngles) {
        const cplx direct = scs_state(n, a).dot(scs_state(n, b));
        EXPECT_LT(std::abs(scs_overlap(a, b, n) - direct), 1e-11);
      }
  }
}

TEST(ScsOverlap, AngularSeparation) {
  EXPECT_NEAR(angular_separation({0.0, 0.0}, {kPi, 0.0}), kPi, 1e-12);
  EXPECT_NEAR(angular_separation({kPi / 2, 0.0}, {kPi / 2, kPi / 2}), kPi / 2, 1e-12);
  EXPECT_NEAR(angular_separation({0.7, 1.0}, {0.7, 1.0}), 0.0, 1e-7);
}

TEST(Canonicalize, FoldsThetaAndReducesPhi) {
  const SCSParams a = canonicalize({-0.3, 0.2});
  EXPECT_NEAR(a.theta, 0.3, 1e-15);
  EXPECT_NEAR(a.phi, 0.2 + kPi, 1e-15);
  const SCSParams b = canonicalize({0.0, 1.3});
  EXPECT_EQ(b.phi, 0.0);
  const SCSParams c = canonicalize({1.0, 7.0});
  EXPECT_NEAR(c.phi, 7.0 - 2 * kPi, 1e-15);
  // Same physical state up to phase.
  const SCSParams raw{-0.3, 0.2};
  EXPECT_LT((bloch_vector(raw) - bloch_vector(a)).norm(), 1e-14);
}

TEST(Dicke, BasisVectors) {
  const CVec d = dicke(6, 2);
  EXPECT_EQ(d(2), cplx(1.0));
  EXPECT_EQ(d.norm(), 1.0);
  EXPECT_THROW(dicke(6, 7), Error);
}

TEST(GlauberMap, ThetaFromAmplitude) {
  const SCSParams p = glauber_to_scs(cplx(0.0, 2.0), 64);
  EXPECT_NEAR(p.theta, 0.5, 1e-15);
  EXPECT_NEAR(p.phi, kPi / 2, 1e-15);
  EXPECT_THROW(glauber_to_scs(cplx(100.0, 0.0), 16), Error);
}

TEST(AxisBasis, EigenvectorsOrderedByM) {
  for (int two_j : {3, 10}) {
    const SpinOperators ops = spin_operators(two_j);
    for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) {
      const CMat r = axis_basis(two_j, a);
      const CMat diag = r.adjoint() * ops.component(a) * r;
      for (int k = 0; k <= two_j; ++k) EXPECT_NEAR(diag(k, k).real(), 0.5 * two_j - k, 1e-12);
      EXPECT_LT((diag - CMat(diag.diagonal().asDiagonal())).norm(), 1e-11);
    }
  }
}

TEST(Axis, ParseRejectsUnknown) {
  EXPECT_EQ(parse_axis("y"), Axis::kY);
  EXPECT_THROW(parse_axis("w"), Error);
}

TEST(HermitianExp, MatchesDenseExponential) {
  const SpinOperators ops = spin_operators(12);
  const CMat h = ops.jx * ops.jy + ops.jy * ops.jx;
  const CMat ref = (kI * 0.37 * h).exp();
  EXPECT_LT((expi_hermitian(h, 0.37) - ref).norm(), 1e-11);
}

}  // namespace
}  // namespace hpspin
