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

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "hpspin/codes.hpp"

namespace hpspin {

// Permutation-invariant state as one block per total spin. Blocks carry the
// degeneracy weight, so the physical trace is the sum of block traces; divide
// by degeneracy(N, 2J) for the per-multiplicity matrix elements.
struct CollectiveDensity {
  int n_spins = 0;
  std::map<int, CMat, std::greater<int>> blocks;  // key: 2J

  double trace() const;
  const CMat* block(int two_j) const;
};

CollectiveDensity embed_symmetric(const SymmetricState& psi);

// One term out_{J'} += w * diag(c) rho_J diag(c), offset rows by (k + shift).
struct Transfer {
  int src_two_j = 0;
  int dst_two_j = 0;
  int shift = 0;  // source index = destination index + shift
  int first = 0;  // first destination index with a valid source
  double weight = 0.0;
  RVec coef;      // coefficients for destination indices first, first+1, ...
};

// Jump part sum_n sum_i sigma_i^(n) rho sigma_i^(n) of the local symmetric
// depolarizing master equation, restricted to a band of irreps. Coefficients
// come from coupling the last spin to the collective spin of the other N-1.
class DepolarizingGenerator {
 public:
  static constexpr int kDefaultCap = 200;

  // band < 0 tracks every irrep.
  explicit DepolarizingGenerator(int n_spins, int band = -1,
                                 int cap = kDefaultCap);

  int n_spins() const { return n_spins_; }
  int lowest_two_j() const { return lowest_two_j_; }
  bool tracks_all() const;
  const std::vector<Transfer>& transfers() const { return transfers_; }

  CollectiveDensity jump(const CollectiveDensity& rho) const;
  // L(rho) = (gamma / 4) jump(rho) - (3 N gamma / 4) rho.
  CollectiveDensity apply(const CollectiveDensity& rho, double gamma) const;

  std::uint64_t fingerprint() const;

 private:
  int n_spins_;
  int lowest_two_j_;
  std::vector<Transfer> transfers_;
};

struct NoiseSchedule {
  double gamma = 1.0;
  double t = 0.0;
};

struct EvolveOptions {
  int band = 12;
  double tolerance = 1e-9;
  double tail_threshold = 1e-6;
  bool auto_widen = true;
};

struct EvolveDiagnostics {
  int band_used = 0;
  int substeps = 0;
  int max_terms = 0;
  double trace_deficit = 0.0;
  double lowest_population = 0.0;
  std::uint64_t fingerprint = 0;
};

CollectiveDensity evolve(const CollectiveDensity& rho,
                         const NoiseSchedule& schedule,
                         const EvolveOptions& options = {},
                         EvolveDiagnostics* diag = nullptr);

std::vector<std::pair<int, double>> irrep_populations(
    const CollectiveDensity& rho);

// p_J(M) for the block of total spin J, index k <-> M = J - k.
RVec irrep_marginal(const CollectiveDensity& rho, int two_j, Axis axis);

// Physical distribution of the collective projection, index k <-> M = N/2 - k.
RVec total_marginal(const CollectiveDensity& rho, Axis axis);

// Brute-force oracle on the full 2^N space (N <= 8).
CMat full_density(const SymmetricState& psi);
CMat brute_force_jump(const CMat& rho, int n_spins);
CMat brute_force_evolve(const CMat& rho, int n_spins,
                        const NoiseSchedule& schedule);
CollectiveDensity compress_to_collective(const CMat& rho, int n_spins);

struct JumpProjection {
  CMat top;    // block J = N/2
  CMat lower;  // block J = N/2 - 1 (degeneracy weighted)
};

// (gamma / 4) jump(rho) projected onto the two highest irreps, for rho a
// superposition of coherent states.
JumpProjection jump_projection_analytic(const ScsDecomposition& decomp,
                                        double gamma);

// Same structure with prefactor gamma (N - 1) / 4 and the real factor
// cos^2(dOmega / 2) on every cross term.
JumpProjection jump_projection_cos2_form(const ScsDecomposition& decomp,
                                         double gamma);

// Bhattacharyya coefficient of the normalized distributions, maximized over
// integer M shifts. Distributions are indexed by k <-> M = J - k.
double self_similarity_score(const RVec& pa, int two_ja, const RVec& pb,
                             int two_jb, int max_shift = 2,
                             int* best_shift = nullptr);

// |sum_k (-1)^k p_k| / sum_k p_k.
double parity_contrast(const RVec& p);

// Local maxima exceeding frac * max(p).
std::vector<int> find_peaks(const RVec& p, double frac = 0.1);

}  // namespace hpspin
