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

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "hpspin/recovery.hpp"

namespace hpspin {
namespace {

CMat dense_cnot(int tj1, int tj2) {
  const SpinOperators a = spin_operators(tj1), b = spin_operators(tj2);
  const double c = 1.0 / std::sqrt(0.25 * tj1 * tj2);
  const CMat h = Eigen::kroneckerProduct(a.jx, b.jy).eval();
  return (-kI * c * h).exp();
}

// Row-major flattening psi(a, b) -> a * d2 + b, matching kron(A, B).
CVec flatten(const CMat& m) {
  CVec v(m.size());
  for (Eigen::Index a = 0; a < m.rows(); ++a)
    for (Eigen::Index b = 0; b < m.cols(); ++b) v(a * m.cols() + b) = m(a, b);
  return v;
}

TEST(CrossIrrepCnot, MatchesDenseExponential) {
  for (auto [j1, j2] : {std::pair{3, 4}, std::pair{6, 6}, std::pair{5, 2}}) {
    const CMat u = cross_irrep_cnot(j1, j2);
    const CMat ref = dense_cnot(j1, j2);
    EXPECT_LT((u - ref).norm(), 1e-10);
    EXPECT_LT((u * u.adjoint() - CMat::Identity(u.rows(), u.cols())).norm(), 1e-10);
  }
}

TEST(CrossIrrepCnot, FactoredApplicationMatchesDense) {
  const CMat psi = CMat::Random(5, 7);
  const CMat out = apply_cross_irrep_cnot(4, 6, psi);
  EXPECT_LT((flatten(out) - dense_cnot(4, 6) * flatten(psi)).norm(), 1e-10);
}

TEST(CrossIrrepCnot, TopIrrepCouplingIsTwoOverN) {
  const int n = 8;
  const CMat u = cross_irrep_cnot(n, n);
  const SpinOperators s = spin_operators(n);
  const CMat ref = (-kI * (2.0 / n) * Eigen::kroneckerProduct(s.jx, s.jy).eval()).exp();
  EXPECT_LT((u - ref).norm(), 1e-10);
  EXPECT_THROW(cross_irrep_cnot(100, 100, 4096), Error);
}

// Gate-only deviation between the cross-irrep and top-irrep gates on a
// control codeword from the N-2 code padded into the top irrep.
double cnot_deviation(int n) {
  const int t = gkp_auto_truncation(n, 0.4), t2 = gkp_auto_truncation(n - 2, 0.4);
  const CodePair cp = build_gkp_pair(n, 0.4, t, t);
  const CodePair cq = build_gkp_pair(n - 2, 0.4, t2, t2);
  const CVec ctrl = (cq.zero.amp + cq.one.amp).normalized();
  const CMat in = ctrl * cp.zero.amp.transpose();
  CMat pad = CMat::Zero(n + 1, n + 1);
  pad.topRows(n - 1) = apply_cross_irrep_cnot(n - 2, n, in);
  CMat in_top = CMat::Zero(n + 1, n + 1);
  in_top.topRows(n - 1) = in;
  return (pad - apply_cross_irrep_cnot(n, n, in_top)).norm();
}

TEST(CrossIrrepCnot, DeviationShrinksWithN) {
  const double ratio = cnot_deviation(100) / cnot_deviation(50);
  EXPECT_NEAR(ratio, 0.2673, 0.01);
  EXPECT_LE(ratio, 0.7);
}

TEST(Mfler, IdentityOnCodeword) {
  const int n = 20;
  const SymmetricState ref = build_spin_binomial(n).zero;
  const MflerResult r = idealized_mfler(embed_symmetric(ref), ref);
  EXPECT_NEAR(r.fidelity_raw, 1.0, 1e-12);
  EXPECT_NEAR(r.fidelity_recovered, 1.0, 1e-12);
  EXPECT_NEAR(r.trace_out, r.trace_in, 1e-12);
}

TEST(Mfler, RefillsDamagedState) {
  const int n = 30;
  const SymmetricState ref = build_spin_binomial(n).zero;
  const CollectiveDensity rho = evolve(embed_symmetric(ref), {1.0, 0.01});
  const MflerResult r = idealized_mfler(rho, ref);
  EXPECT_NEAR(r.trace_out, r.trace_in, 1e-10);
  EXPECT_GT(r.fidelity_recovered, r.fidelity_raw);
  EXPECT_GT(r.fidelity_recovered, 0.9);
  const CMat& b = r.recovered.blocks.at(n);
  EXPECT_LT((b - b.adjoint()).norm(), 1e-12);
}

TEST(Mfler, FidelityCurve) {
  const int n = 60;
  const int t = gkp_auto_truncation(n, 0.4);
  const SymmetricState zero = build_gkp_pair(n, 0.4, t, t).zero;
  const auto pts = recovery_fidelity_curve(zero, {0.0, 0.01, 0.02, 0.05});
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_NEAR(pts[0].fidelity_raw, 1.0, 1e-12);
  EXPECT_NEAR(pts[1].fidelity_raw, 0.723682226, 1e-6);
  EXPECT_NEAR(pts[1].fidelity_recovered, 0.948444385, 1e-6);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    EXPECT_LT(pts[i].fidelity_raw, pts[i - 1].fidelity_raw);
    EXPECT_LT(pts[i].fidelity_recovered, pts[i - 1].fidelity_recovered);
    EXPECT_GT(pts[i].fidelity_recovered, pts[i].fidelity_raw);
  }
  EXPECT_THROW(recovery_fidelity_curve(zero, {0.02, 0.01}), Error);
}

TEST(Gadget, KrausSetsAreComplete) {
  for (int n : {4, 6}) {
    for (Axis ax : {Axis::kX, Axis::kY, Axis::kZ}) {
      EXPECT_LT(swap_gadget_smallN(n, ax).completeness_error, 1e-8);
      EXPECT_LT(conjugated_error_kraus(n, ax).completeness_error, 1e-8);
    }
  }
}

TEST(Gadget, ConjugatedPhaseErrorHasTransverseParts) {
  for (int n : {4, 6, 8}) {
    const KrausSet k = conjugated_error_kraus(n, Axis::kZ);
    double cx = 0.0, cy = 0.0;
    for (const auto& c : k.span_coefficients) {
      cx = std::max(cx, std::abs(c(1)));
      cy = std::max(cy, std::abs(c(2)));
    }
    EXPECT_GT(cx, 0.1) << n;
    EXPECT_GT(cy, 0.1) << n;
  }
}

TEST(Gadget, SwapInfidelityAtFourSpins) {
  const auto inf = gadget_swap_infidelity(4);
  EXPECT_NEAR(inf[0], 0.750, 5e-3);
  EXPECT_NEAR(inf[1], 0.248, 5e-3);
  EXPECT_NEAR(inf[2], 0.555, 5e-3);
}

TEST(Gadget, SizeLimits) {
  try {
    swap_gadget_smallN(10, Axis::kZ);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResourceLimit);
  }
  EXPECT_THROW(conjugated_error_kraus(1, Axis::kZ), Error);
}

TEST(Gadget, LogLogSlope) {
  EXPECT_NEAR(loglog_slope({1.0, 2.0, 4.0}, {3.0, 0.75, 0.1875}), -2.0, 1e-12);
  EXPECT_NEAR(loglog_slope({4.0, 6.0, 8.0}, {2.0, 2.0, 2.0}), 0.0, 1e-12);
}

}  // namespace
}  // namespace hpspin
