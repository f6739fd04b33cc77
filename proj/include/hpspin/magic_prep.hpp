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

#include "hpspin/codes.hpp"

namespace hpspin {

struct DampedProjectorParams {
  int n_spins = 0;
  double damping = 0.0;  // Delta, E = exp[-Delta^2 (N/2 - Jz)]
  int m_max = 5;
  // Keep only stabilizer powers (m, m') with 2 s |(m, m')| <= pi, the same
  // disk that bounds the codeword lattice. Without it the product of the two
  // sums wraps around the sphere.
  bool clip_to_disk = true;
};

// Diagonal entries exp(-Delta^2 n), n = N/2 - M.
RVec damping_diagonal(const DampedProjectorParams& p);
CMat damping_operator(const DampedProjectorParams& p);

struct DampedProjectors {
  CMat pi_q;  // sum_m E T_Z^m E^-1
  CMat pi_p;  // sum_m E T_X^m E^-1
  double condition = 1.0;  // condition number of E
  double hermiticity_q = 0.0;  // ||Pi - Pi^dag||_F
  double hermiticity_p = 0.0;
};

// Throws kNumeric when cond(E) > 1e12.
DampedProjectors damped_projectors(const DampedProjectorParams& p);

struct ResourceState {
  SymmetricState state;
  double norm = 0.0;  // before normalization
  int terms = 0;      // stabilizer-power pairs kept
};

// normalize(E sum T_Z^m T_X^m' |N/2, N/2>), evaluated without E^-1 since it
// acts trivially on the polarized state.
ResourceState prepare_resource_state(const DampedProjectorParams& p);

// cos(pi/8)|0_L> + sin(pi/8)|1_L>, renormalized.
SymmetricState magic_target(const CodePair& code);

struct MagicPreset {
  double delta = 0.5;          // codeword envelope
  double damping_scale = 0.0;  // Delta = scale * delta; <= 0 means sqrt(pi)/2
  int m_max = 5;
  bool clip_to_disk = true;
  int sensitivity_m_max = 0;   // > 0: also report |infid(m_max) - infid(this)|
};

struct MagicPoint {
  int n_spins = 0;
  double delta = 0.0;
  double damping = 0.0;
  int truncation = 0;
  double infidelity = 0.0;
  double preselection_norm_sq = 0.0;
  double sensitivity = 0.0;
};

std::vector<MagicPoint> magic_infidelity_curve(const std::vector<int>& n_grid,
                                               const MagicPreset& preset = {});

}  // namespace hpspin
