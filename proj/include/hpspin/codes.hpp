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

#include <optional>
#include <string>
#include <vector>

#include "hpspin/su2_core.hpp"

namespace hpspin {

// Pure state on the symmetric (J = N/2) subspace, amplitudes indexed by the
// excitation number n = N/2 - M.
struct SymmetricState {
  int n_spins = 0;
  CVec amp;

  int two_j() const { return n_spins; }
};

SymmetricState make_state(int n_spins, CVec amp);
double expectation(const SymmetricState& psi, const CMat& op);
double mean_jz(const SymmetricState& psi);

enum class Family { kSpinGkp, kSpinCat, kSpinBinomial, kReference };

std::string family_name(Family f);
Family parse_family(const std::string& s);

struct GkpCodeParams {
  int n_spins = 0;
  double delta = 0.4;
  int t1_max = 0;
  int t2_max = 0;
  int mu = 0;
};

struct ScsTerm {
  cplx beta;
  SCSParams omega;
};

struct ScsDecomposition {
  int n_spins = 0;
  std::vector<ScsTerm> terms;

  // Normalized sum of beta_t |Omega_t>.
  CVec reconstruct() const;
};

struct CodeParams {
  std::optional<double> delta;
  std::optional<double> theta;
  std::optional<int> t1_max;
  std::optional<int> t2_max;
};

struct CodePair {
  Family family = Family::kReference;
  int n_spins = 0;
  SymmetricState zero;
  SymmetricState one;
  CodeParams params;
  cplx overlap;
  std::optional<ScsDecomposition> zero_decomp;
  std::optional<ScsDecomposition> one_decomp;

  const SymmetricState& logical(int mu) const { return mu == 0 ? zero : one; }
};

// True when every lattice point of both codewords maps inside the sphere and
// keeps the Gamma-function envelope finite.
bool gkp_lattice_valid(int n_spins, double delta, int t1_max, int t2_max);

// Largest T <= cap, shared by both axes and both codewords, that is valid.
int gkp_auto_truncation(int n_spins, double delta, int cap = 5);

// log of the envelope weight Gamma(N+1) / (Gamma(N/2+g+1) Gamma(N/2-g+1)).
double gkp_log_beta(int n_spins, double delta, int t1, int t2, int mu);

SymmetricState build_spin_gkp(const GkpCodeParams& p);
ScsDecomposition gkp_scs_decomposition(const GkpCodeParams& p);

// Large-N closed form of the lattice angles.
SCSParams gkp_asymptotic_angles(int n_spins, int t1, int t2, int mu);

CodePair build_gkp_pair(int n_spins, double delta, int t1_max, int t2_max);
CodePair build_spin_binomial(int n_spins);
CodePair build_spin_cat(int n_spins, double theta);
CodePair build_reference_pair(int n_spins);

ScsDecomposition cat_decomposition(int n_spins, double theta, int mu);

SymmetricState ghz_state(int n_spins);
ScsDecomposition ghz_decomposition(int n_spins);
SymmetricState coherent_state(int n_spins, const SCSParams& omega);

struct GkpStabilizers {
  CMat tx;
  CMat tz;
};

GkpStabilizers gkp_stabilizers(int n_spins);

struct GkpCliffords {
  CMat x, z, h, s;
  // CNOT = exp[-i c Jx (control) Jy (target)], materialized in recovery.
  double cnot_coupling = 0.0;
};

GkpCliffords gkp_cliffords(int n_spins);

// <psi|[T_X, T_Z]^dag [T_X, T_Z]|psi>.
double stabilizer_commutator_norm(const SymmetricState& psi);

// Bisection on the family's free parameter until <Jz> on |0_L> hits the
// target. GKP uses delta at fixed truncation (auto when t_max < 0); the
// binomial code has no parameter and only validates. Returns the parameter
// (0 for the binomial code).
double calibrate_code(Family family, int n_spins, double target_jz,
                      int t_max = -1);

}  // namespace hpspin
