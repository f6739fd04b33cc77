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

#include "hpspin/tn_noise.hpp"
#include "tensor_oracle.hpp"

namespace hpspin {
namespace {

RVec oracle_marginal(const SymmetricState& psi, const SiteNoiseProfile& prof, int axis) {
  const int n = psi.n_spins;
  std::vector<double> a(n);
  for (int s = 0; s < n; ++s) a[s] = 1.0 - prof.p[s];
  const CVec v = oracle::tensor_state(psi);
  return oracle::collective_distribution(oracle::depolarize_sites(v * v.adjoint(), n, a), n, axis);
}

TEST(NoiseProfile, ExponentialAroundCenter) {
  const SiteNoiseProfile p = noise_profile(1.0, 1.0, 60);
  ASSERT_EQ(p.p.size(), 60u);
  EXPECT_DOUBLE_EQ(p.p[29], 1.0);
  EXPECT_NEAR(p.p[28], std::exp(-1.0), 1e-15);
  EXPECT_NEAR(p.p[30], std::exp(-1.0), 1e-15);
  EXPECT_NEAR(p.p[0], std::exp(-29.0), 1e-20);
  const SiteNoiseProfile sharp = noise_profile(0.5, 1e9, 10);
  EXPECT_DOUBLE_EQ(sharp.p[4], 0.5);
  EXPECT_EQ(sharp.p[3], 0.0);
  EXPECT_THROW(noise_profile(1.5, 1.0, 10), Error);
  EXPECT_THROW(noise_profile(-0.1, 1.0, 10), Error);
}

TEST(Mpo, BondDimensions) {
  const int n = 12;
  const auto top = symmetric_state_to_mpo(coherent_state(n, {0.0, 0.0}));
  EXPECT_EQ(top.max_bond(), 1);
  const auto ghz = symmetric_state_to_mpo(ghz_state(n));
  for (int i = 1; i < n; ++i) EXPECT_EQ(ghz.mps_bonds[i], 2);
  EXPECT_EQ(ghz.max_bond(), 4);
  const auto cat = symmetric_state_to_mpo(build_spin_cat(n, 0.7).zero);
  for (int i = 0; i <= n; ++i) {
    // One bond index per reachable count of the first i qubits.
    EXPECT_LE(cat.mps_bonds[i], i + 1);
    EXPECT_EQ(cat.bond_dims()[i], cat.mps_bonds[i] * cat.mps_bonds[i]);
  }
  EXPECT_THROW(symmetric_state_to_mpo(build_spin_cat(n, 0.7).zero, 8), Error);
}

TEST(Mpo, NoiseLeavesBondsUnchanged) {
  const auto rho = symmetric_state_to_mpo(build_spin_binomial(10).zero);
  const auto out = apply_site_depolarizing(rho, noise_profile(0.7, 0.5, 10));
  EXPECT_EQ(out.bond_dims(), rho.bond_dims());
  EXPECT_NEAR(mpo_trace(out), 1.0, 1e-12);
}

TEST(Mpo, MarginalsMatchTensorOracle) {
  const int n = 8;
  const std::vector<SymmetricState> states{
      build_gkp_pair(n, 0.4, 1, 1).zero, build_spin_cat(n, 0.6).one,
      build_spin_binomial(n).zero, ghz_state(n), coherent_state(n, {0.9, 0.3})};
  const SiteNoiseProfile prof = noise_profile(0.6, 0.7, n);
  for (const auto& psi : states) {
    const auto rho = apply_site_depolarizing(symmetric_state_to_mpo(psi), prof);
    for (int ax = 0; ax < 3; ++ax) {
      const RVec ref = oracle_marginal(psi, prof, ax);
      EXPECT_LT((collective_marginal(rho, Axis(ax)) - ref).cwiseAbs().maxCoeff(), 1e-10) << ax;
      EXPECT_LT((dense_collective_marginal(psi, prof, Axis(ax)) - ref).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(Mpo, FullDepolarizationGivesBinomial) {
  const int n = 20;
  SiteNoiseProfile prof{n, std::vector<double>(n, 1.0)};
  const auto rho = apply_site_depolarizing(symmetric_state_to_mpo(coherent_state(n, {0.5, 0.5})), prof);
  for (Axis ax : {Axis::kY, Axis::kZ}) {
    const RVec m = collective_marginal(rho, ax);
    for (int k = 0; k <= n; ++k) EXPECT_NEAR(m(k), binomial(n, k) / std::pow(2.0, n), 1e-12);
  }
}

TEST(Mpo, SiteReductionsAreStates) {
  const int n = 9;
  const auto rho = apply_site_depolarizing(symmetric_state_to_mpo(build_spin_cat(n, 0.8).zero),
                                           noise_profile(0.3, 0.2, n));
  for (int s = 0; s < n; ++s) {
    const Eigen::Matrix2cd r = site_reduction(rho, s);
    EXPECT_NEAR(r.trace().real(), 1.0, 1e-12);
    EXPECT_LT((r - r.adjoint()).norm(), 1e-12);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(r).eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(Mpo, DickeZMarginalIsSharp) {
  const int n = 30;
  const auto rho = symmetric_state_to_mpo(make_state(n, dicke(n, 7)));
  const RVec m = collective_marginal(rho, Axis::kZ);
  for (int k = 0; k <= n; ++k) EXPECT_NEAR(m(k), k == 7 ? 1.0 : 0.0, 1e-12);
  std::vector<Eigen::Matrix2cd> ops(n, Eigen::Matrix2cd::Identity());
  EXPECT_NEAR(contract_product(rho, ops).real(), 1.0, 1e-12);
}

}  // namespace
}  // namespace hpspin
