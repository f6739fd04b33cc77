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

#include <vector>

#include "hpspin/types.hpp"

namespace hpspin {

// Total spin sectors are labelled by the doubled integer 2J throughout.
// Basis vectors of a sector are ordered M = J, J-1, ..., -J, so the vector
// index equals the excitation number n = J - M.

struct IrrepLabel {
  int n_spins = 0;
  int two_j = 0;
  double degeneracy = 0.0;

  double j() const { return 0.5 * two_j; }
  int dim() const { return two_j + 1; }
};

double binomial(int n, int k);

// Number of copies of the spin-J irrep in N spin-1/2 particles.
double degeneracy(int n_spins, int two_j);

// Descending J, from N/2 down to 0 or 1/2.
std::vector<IrrepLabel> irrep_table(int n_spins);

struct SpinOperators {
  int two_j = 0;
  CMat jx, jy, jz, jplus, jminus;

  double j() const { return 0.5 * two_j; }
  int dim() const { return two_j + 1; }
  const CMat& component(Axis a) const;
};

SpinOperators spin_operators(int two_j);

// exp(i t H) for Hermitian H, kept in eigen-decomposed form so that many
// values of t can be applied cheaply.
class HermitianExp {
 public:
  HermitianExp() = default;
  explicit HermitianExp(const CMat& h);

  CMat matrix(double t) const;
  CVec apply(double t, const CVec& v) const;
  const CMat& vectors() const { return vectors_; }
  const RVec& values() const { return values_; }

 private:
  CMat vectors_;
  RVec values_;
};

CMat expi_hermitian(const CMat& h, double t);

struct SCSParams {
  double theta = 0.0;
  double phi = 0.0;
};

// Folds theta into [0, pi], reduces phi mod 2 pi, and sets phi = 0 at the pole.
SCSParams canonicalize(SCSParams omega);

Eigen::Vector3d bloch_vector(const SCSParams& omega);

// R(theta, phi) = exp[i theta (sin phi Jx - cos phi Jy)].
CMat rotation(int two_j, const SCSParams& omega);

CVec highest_weight(int two_j);
CVec dicke(int two_j, int n);
CVec scs_state(int two_j, const SCSParams& omega);

// Single-spin overlap f+(a, b) = <a|b> for qubit coherent states.
cplx single_spin_overlap(const SCSParams& a, const SCSParams& b);
cplx scs_overlap(const SCSParams& a, const SCSParams& b, int n_spins);
double angular_separation(const SCSParams& a, const SCSParams& b);

SCSParams glauber_to_scs(cplx alpha, int n_spins);

// Eigenbasis of the axis component: column k is the eigenvector with
// eigenvalue J - k, built as R(axis)|J, J - k>.
CMat axis_basis(int two_j, Axis axis);

double commutator_residual(const SpinOperators& ops);

}  // namespace hpspin
