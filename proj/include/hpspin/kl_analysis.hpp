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

#include "hpspin/codes.hpp"

namespace hpspin {

// Knill-Laflamme data for the error set {I, Jx, Jy, Jz}. Index 0 is the
// identity, 1..3 are x, y, z.
struct KLReport {
  int n_spins = 0;
  // moments[mu][nu](a, b) = <mu|E_a^dag E_b|nu>.
  std::array<std::array<Eigen::Matrix4cd, 2>, 2> moments;
  Eigen::Matrix4cd c_matrix;
  // delta[mu][nu] = moments[mu][nu] - delta_{mu nu} C.
  std::array<std::array<Eigen::Matrix4cd, 2>, 2> delta;
  Eigen::Matrix3cd d_matrix;
  std::array<std::array<Eigen::Matrix3cd, 2>, 2> d_tilde;

  double delta_norm(int mu, int nu) const;
};

KLReport kl_collective(const CodePair& code);

// D_ij = (4 C_ij - 2 i eps_ijk C_0k) / (N(N-1)) and the remainder analogue.
void local_kl_from_collective(KLReport& report);

// Predicted <mu|sigma_i^(n)|nu> and <mu|sigma_i^(n) sigma_j^(n')|nu>, n != n'.
cplx predicted_one_body(const KLReport& r, int mu, int nu, int i);
cplx predicted_two_body(const KLReport& r, int mu, int nu, int i, int j);

struct LocalKLDirect {
  int n_spins = 0;
  // one_body[mu][nu](i) for i in x,y,z, taken at site 0.
  std::array<std::array<Eigen::Vector3cd, 2>, 2> one_body;
  // two_body[mu][nu](i, j) for sites (0, 1).
  std::array<std::array<Eigen::Matrix3cd, 2>, 2> two_body;
  // Largest deviation of any site (or site pair) from the values above.
  double site_spread = 0.0;
};

// Brute-force oracle in the 2^N tensor space, N <= 12.
LocalKLDirect local_kl_direct(const CodePair& code);

// Dicke-basis state embedded into the 2^N computational basis; bit b of the
// index is qubit b, with 0 = spin up.
CVec embed_dicke_state(const SymmetricState& psi);

struct LeakageReport {
  bool pass = false;
  bool complete = false;
  double max_residual = 0.0;
  // residual per product {(I+sz)/2, (I-sz)/2, s+, s-}.
  std::array<double, 4> residuals{};
};

LeakageReport leakage_kl_check(const CodePair& code, double tol = 1e-10);

}  // namespace hpspin
