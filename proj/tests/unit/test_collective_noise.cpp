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

#include "hpspin/collective_noise.hpp"
#include "tensor_oracle.hpp"

namespace hpspin {
namespace {

// Largest deviation of tr(P_J rho g) between a tensor-space operator and a
// collective one, over a fixed set of group elements g that spans each irrep's
// operator space.
double probe_mismatch(const CMat& full, const CollectiveDensity& coll) {
  const int n = coll.n_spins;
  const auto j = oracle::collective(n);
  const std::array<std::array<double, 3>, 6> angles{{{0.0, 0.0, 0.0},
                                                     {0.3, 0.0, 0.1},
                                                     {0.0, 0.7, -0.4},
                                                     {1.1, -0.5, 0.2},
                                                     {-0.8, 1.3, 0.9},
                                                     {2.0, 0.4, -1.7}}};
  double worst = 0.0;
  for (int tj = n % 2; tj <= n; tj += 2) {
    const CMat proj = oracle::casimir_projector(n, tj);
    const SpinOperators ops = spin_operators(tj);
    const CMat* b = coll.block(tj);
    for (const auto& a : angles) {
      const CMat gf = (kI * a[0] * j[0]).exp() * (kI * a[1] * j[1]).exp() *
                      (kI * a[2] * j[2]).exp();
      const cplx ref = (proj * full * gf).trace();
      cplx got = 0.0;
      if (b) {
        const CMat gc = (kI * a[0] * ops.jx).exp() * (kI * a[1] * ops.jy).exp() *
                        (kI * a[2] * ops.jz).exp();
        got = (*b * gc).trace();
      }
      worst = std::max(worst, std::abs(ref - got));
    }
  }
  return worst;
}

CMat projector(const CVec& v) { return v * v.adjoint(); }

TEST(Generator, JumpMatchesTensorOracle) {
  for (int n = 2; n <= 7; ++n) {
    const SymmetricState psi = build_spin_cat(n, 0.6).zero;
    const DepolarizingGenerator gen(n);
    const CollectiveDensity out = gen.jump(embed_symmetric(psi));
    const CMat ref = oracle::jump(projector(oracle::tensor_state(psi)), n);
    EXPECT_LT(probe_mismatch(ref, out), 1e-12) << n;
  }
}

TEST(Generator, JumpTraceIsThreeN) {
  for (int n : {5, 20, 51}) {
    const CollectiveDensity rho = embed_symmetric(coherent_state(n, {0.4, 1.0}));
    const DepolarizingGenerator gen(n);
    EXPECT_NEAR(gen.jump(rho).trace(), 3.0 * n, 1e-10 * n);
    EXPECT_NEAR(gen.apply(rho, 1.0).trace(), 0.0, 1e-10 * n);
  }
}

TEST(Generator, RequiresTwoSpins) {
  EXPECT_THROW(DepolarizingGenerator(1), Error);
}

TEST(Evolve, MatchesTensorChannel) {
  const int n = 6;
  for (const SymmetricState& psi : {build_spin_binomial(n).zero, build_spin_cat(n, 0.5).one}) {
    for (double gt : {0.01, 0.1}) {
      const CollectiveDensity out = evolve(embed_symmetric(psi), {1.0, gt});
      const CMat ref = oracle::depolarize(projector(oracle::tensor_state(psi)), n, std::exp(-gt));
      EXPECT_LT(probe_mismatch(ref, out), 1e-10) << gt;
    }
  }
}

TEST(Evolve, LongTimeIsMaximallyMixed) {
  const int n = 6;
  const CollectiveDensity out = evolve(embed_symmetric(build_spin_binomial(n).zero), {1.0, 25.0});
  for (const auto& [tj, b] : out.blocks) {
    const double w = degeneracy(n, tj) / std::pow(2.0, n);
    EXPECT_LT((b - w * CMat::Identity(tj + 1, tj + 1)).norm(), 1e-9) << tj;
  }
}

TEST(Evolve, CompressionRoundTrip) {
  const SymmetricState psi = build_spin_cat(5, 0.9).zero;
  const CollectiveDensity a = compress_to_collective(full_density(psi), 5);
  const CollectiveDensity b = embed_symmetric(psi);
  for (const auto& [tj, blk] : b.blocks) ASSERT_LT((a.block(tj) ? (*a.block(tj) - blk).norm() : blk.norm()), 1e-12);
  const CMat full = brute_force_evolve(full_density(psi), 5, {1.0, 0.2});
  EXPECT_LT(probe_mismatch(full, compress_to_collective(full, 5)), 1e-12);
}

TEST(JumpProjection, AnalyticMatchesGenerator) {
  const int n = 10;
  const double gamma = 1.0;
  const ScsDecomposition d = gkp_scs_decomposition({n, 0.4, 1, 1, 0});
  const JumpProjection jp = jump_projection_analytic(d, gamma);
  const DepolarizingGenerator gen(n);
  const CVec psi = d.reconstruct();
  CollectiveDensity rho = embed_symmetric(make_state(n, psi));
  const CollectiveDensity jr = gen.jump(rho);
  EXPECT_LT((jp.top - 0.25 * gamma * *jr.block(n)).norm(), 1e-12);
  EXPECT_LT((jp.lower - 0.25 * gamma * *jr.block(n - 2)).norm(), 1e-12);
}

TEST(JumpProjection, DownwardRateFromTopState) {
  for (int n : {4, 10, 40}) {
    ScsDecomposition d;
    d.n_spins = n;
    d.terms.push_back({1.0, {0.0, 0.0}});
    const DepolarizingGenerator gen(n);
    const CollectiveDensity jr = gen.jump(embed_symmetric(coherent_state(n, {0.0, 0.0})));
    const double lower = 0.25 * jr.block(n - 2)->trace().real();
    EXPECT_NEAR(lower, 0.5 * (n - 1), 1e-10);
    EXPECT_NEAR(jump_projection_analytic(d, 1.0).lower.trace().real(), 0.5 * (n - 1), 1e-10);
    // The cos^2 form carries half the exact rate.
    EXPECT_NEAR(jump_projection_cos2_form(d, 1.0).lower.trace().real(), 0.25 * (n - 1), 1e-10);
  }
}

TEST(JumpProjection, GhzBranchesDoNotMixInLowerBlock) {
  const int n = 12;
  const JumpProjection jp = jump_projection_analytic(ghz_decomposition(n), 1.0);
  const CollectiveDensity jr =
      DepolarizingGenerator(n).jump(embed_symmetric(ghz_state(n)));
  EXPECT_LT(std::abs(jp.lower(0, n - 2)), 1e-14);
  EXPECT_LT(std::abs((*jr.block(n - 2))(0, n - 2)), 1e-14);
  EXPECT_GT(std::abs(jp.top(0, n)), 0.1);
}

TEST(Evolve, LargeRegisterStaysNormalized) {
  for (int n : {20, 100}) {
    EvolveDiagnostics diag;
    const CollectiveDensity out =
        evolve(embed_symmetric(build_spin_binomial(n).zero), {1.0, 0.025}, {}, &diag);
    EXPECT_NEAR(out.trace(), 1.0, 1e-8) << n;
    EXPECT_LT(diag.trace_deficit, 1e-6);
    for (const auto& [tj, b] : out.blocks)
      EXPECT_LT((b - b.adjoint()).norm(), 1e-12);
  }
}

TEST(Evolve, PolarizedStateKeepsTransverseSymmetry) {
  const int n = 30;
  const CollectiveDensity out = evolve(embed_symmetric(coherent_state(n, {0.0, 0.0})), {1.0, 0.05});
  EXPECT_LT((total_marginal(out, Axis::kX) - total_marginal(out, Axis::kY)).norm(), 1e-10);
}

TEST(Evolve, DominantIrrepOneStepDown) {
  const int n = 100;
  const CollectiveDensity out =
      evolve(embed_symmetric(build_spin_binomial(n).zero), {1.0, 0.025});
  int best = -1;
  double pmax = -1.0;
  for (const auto& [tj, p] : irrep_populations(out))
    if (p > pmax) pmax = p, best = tj;
  EXPECT_EQ(best, 98);
}

TEST(Evolve, BandWidensWhenTailIsHeavy) {
  EvolveOptions opt;
  opt.band = 2;
  EvolveDiagnostics diag;
  const CollectiveDensity out =
      evolve(embed_symmetric(build_spin_binomial(40).zero), {1.0, 0.1}, opt, &diag);
  EXPECT_GT(diag.band_used, 2);
  EXPECT_NEAR(out.trace(), 1.0, 1e-6);
}

TEST(Diagnostics, SelfSimilarityLimits) {
  RVec a(5), b(5);
  a << 0.1, 0.2, 0.4, 0.2, 0.1;
  EXPECT_NEAR(self_similarity_score(a, 4, 3.0 * a, 4), 1.0, 1e-14);
  b << 0.0, 0.0, 0.0, 0.0, 1.0;
  RVec c = RVec::Zero(5);
  c(0) = 1.0;
  EXPECT_NEAR(self_similarity_score(b, 4, c, 4, 0), 0.0, 1e-14);
  // Same shape displaced by one unit of M.
  int shift = 0;
  RVec e = RVec::Zero(7);
  e.head(5) = a;
  EXPECT_NEAR(self_similarity_score(a, 4, e, 6, 2, &shift), 1.0, 1e-14);
  EXPECT_EQ(std::abs(shift), 1);
}

TEST(Diagnostics, ParityAndPeaks) {
  RVec p(5);
  p << 1.0, 0.0, 1.0, 0.0, 1.0;
  EXPECT_NEAR(parity_contrast(p), 1.0, 1e-15);
  p << 1.0, 1.0, 1.0, 1.0, 0.0;
  EXPECT_NEAR(parity_contrast(p), 0.0, 1e-15);
  RVec q(7);
  q << 0.0, 1.0, 0.0, 0.05, 0.0, 0.5, 0.0;
  EXPECT_EQ(find_peaks(q, 0.1), (std::vector<int>{1, 5}));
}

TEST(Evolve, GhzFringesLiveInTopIrrep) {
  const int n = 40;
  const CollectiveDensity out = evolve(embed_symmetric(ghz_state(n)), {1.0, 0.025});
  for (Axis ax : {Axis::kX, Axis::kY}) {
    const double top = parity_contrast(irrep_marginal(out, n, ax));
    const double low = parity_contrast(irrep_marginal(out, n - 2, ax));
    EXPECT_GT(top, 0.1);
    EXPECT_LT(low, 0.05 * top);
  }
}

TEST(Evolve, CatFringesRepeatInLowerIrrep) {
  const int n = 100;
  const double th = calibrate_code(Family::kSpinCat, n, 0.5 * n - 2);
  const CollectiveDensity out = evolve(embed_symmetric(build_spin_cat(n, th).zero), {1.0, 0.025});
  auto peaks_m = [&](int tj) {
    std::vector<int> m;
    for (int k : find_peaks(irrep_marginal(out, tj, Axis::kY), 0.1)) m.push_back(tj / 2 - k);
    return m;
  };
  EXPECT_EQ(peaks_m(n), peaks_m(n - 2));
  EXPECT_GE(peaks_m(n).size(), 3u);
}

}  // namespace
}  // namespace hpspin
