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

#include "hpspin/collective_noise.hpp"

namespace hpspin {

// exp[-i c Jx (x) Jy] with c = (J1 J2)^(-1/2), control spin J1 first.
// Materialized densely; throws kResourceLimit above max_dim product states.
CMat cross_irrep_cnot(int two_j1, int two_j2, int max_dim = 4096);

// Same gate applied to a product-space state stored as a (2J1+1) x (2J2+1)
// matrix psi(a, b) = <a|<b|psi>. Cost is a few small matrix products.
CMat apply_cross_irrep_cnot(int two_j1, int two_j2, const CMat& psi,
                            long max_dim = 40000);

struct MflerResult {
  CollectiveDensity recovered;  // single block at 2J = N
  double trace_in = 0.0;
  double trace_out = 0.0;
  double fidelity_raw = 0.0;
  double fidelity_recovered = 0.0;
};

// Every block J < N/2 is moved into the symmetric subspace with its highest
// weight aligned to M = N/2, then all blocks are summed.
MflerResult idealized_mfler(const CollectiveDensity& rho,
                            const SymmetricState& reference);

struct RecoveryPoint {
  double gamma_t = 0.0;
  double fidelity_raw = 0.0;
  double fidelity_recovered = 0.0;
};

// Evolves the codeword through the (sorted) grid at unit rate and records
// fidelities with and without the idealized refill.
std::vector<RecoveryPoint> recovery_fidelity_curve(
    const SymmetricState& codeword, const std::vector<double>& gamma_t_grid,
    const EvolveOptions& options = {}, EvolveDiagnostics* diag = nullptr);

struct GadgetOptions {
  double delta = 0.4;
  int truncation = -1;  // < 0: automatic lattice truncation
  double keep_weight = 1.0 - 1e-10;
  int low_excitation = 2;  // input cutoff for the conjugated diagnostic
};

struct KrausSet {
  int n_spins = 0;
  Axis axis = Axis::kZ;
  // operators[m](a, k): ancilla output a for data input Dicke index k.
  std::vector<CMat> operators;
  std::vector<double> weights;  // eigenvalues of the retained data basis
  std::vector<Eigen::Vector4cd> span_coefficients;  // on {I, Jx, Jy, Jz}
  std::vector<double> span_residuals;  // relative Frobenius distance to span
  double completeness_error = 0.0;
  double max_residual = 0.0;
  // Weighted rms residual on inputs with n <= low_excitation.
  double low_excitation_rms = 0.0;
};

// Swap gadget on two N-spin ensembles, data first, ancilla prepared in the
// logical plus state. The data lives in qubit0 (x) Sym(N-1) and the ancilla
// in Sym(N), which holds the exact dynamics of a single-site error on site 0.
// K_m = <m| U sigma^(0) |+_L>, N <= 8.
KrausSet swap_gadget_smallN(int n_spins, Axis error_axis,
                            const GadgetOptions& options = {});

// Kraus operators of U sigma^(0) U^dag with the data ensemble in |+_L>,
// i.e. the error as seen by the ancilla after the swap.
KrausSet conjugated_error_kraus(int n_spins, Axis error_axis,
                                const GadgetOptions& options = {});

// 1 - <psi|rho_ancilla|psi> after an error-free gadget for psi in
// {|0_L>, |1_L>, |+_L>}.
std::array<double, 3> gadget_swap_infidelity(int n_spins,
                                             const GadgetOptions& options = {});

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hpspin
