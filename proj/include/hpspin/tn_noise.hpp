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


#pragma once

#include <array>
#include <vector>

#include <Eigen/SparseCore>

#include "hpspin/codes.hpp"

namespace hpspin {

using SpMat = Eigen::SparseMatrix<cplx>;

// Site-dependent depolarizing probabilities, site n = 1..N stored at n - 1.
struct SiteNoiseProfile {
  int n_spins = 0;
  std::vector<double> p;
};

// p_n = p0 exp(-zeta |n - floor(N/2)|). zeta is capped at 1e6.
SiteNoiseProfile noise_profile(double p0, double zeta, int n_spins);

// Density operator as an MPO. Site tensor sites[i][2 s + s'] is the bond
// matrix multiplying |s><s'| on qubit i (0 = spin up).
struct MatrixProductOperatorState {
  int n_spins = 0;
  std::vector<std::array<SpMat, 4>> sites;
  // Bond dimensions of the underlying pure-state MPS, links 0..N.
  std::vector<int> mps_bonds;

  // MPO bond dimensions, links 0..N.
  std::vector<int> bond_dims() const;
  int max_bond() const;
};

// Exact counting-sector MPS of a symmetric state, doubled into an MPO. Throws
// kResourceLimit when an MPO bond exceeds cap (default (N+1)^2).
MatrixProductOperatorState symmetric_state_to_mpo(const SymmetricState& psi,
                                                  int cap = -1);

MatrixProductOperatorState apply_site_depolarizing(
    const MatrixProductOperatorState& rho, const SiteNoiseProfile& profile);

// Tr[rho prod_n O_n] for per-site 2x2 operators.
cplx contract_product(const MatrixProductOperatorState& rho,
                      const std::vector<Eigen::Matrix2cd>& ops);
double mpo_trace(const MatrixProductOperatorState& rho);

// Reduced density matrix of one qubit (0-based site).
Eigen::Matrix2cd site_reduction(const MatrixProductOperatorState& rho, int site);

// Distribution of the collective projection, index k <-> M = N/2 - k, from
// the characteristic function on N + 1 equally spaced angles.
RVec collective_marginal(const MatrixProductOperatorState& rho, Axis axis);

// Dense 2^N oracle for the same pipeline, N <= 10.
RVec dense_collective_marginal(const SymmetricState& psi,
                               const SiteNoiseProfile& profile, Axis axis);

}  // namespace hpspin
