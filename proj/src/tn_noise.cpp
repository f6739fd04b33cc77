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


#include "hpspin/tn_noise.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hpspin/kl_analysis.hpp"

namespace hpspin {

SiteNoiseProfile noise_profile(double p0, double zeta, int n_spins) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) fail(ErrorKind::kInvalidArgument, "p0 must lie in [0, 1]");
  if (!(zeta >= 0.0)) fail(ErrorKind::kInvalidArgument, "zeta must be non-negative");
  if (n_spins < 1) fail(ErrorKind::kInvalidArgument, "profile needs N >= 1");
  const double z = std::min(zeta, 1e6);
  SiteNoiseProfile prof;
  prof.n_spins = n_spins;
  prof.p.resize(n_spins);
  for (int n = 1; n <= n_spins; ++n) prof.p[n - 1] = p0 * std::exp(-z * std::abs(n - n_spins / 2));
  return prof;
}

std::vector<int> MatrixProductOperatorState::bond_dims() const {
  std::vector<int> d;
  for (int b : mps_bonds) d.push_back(b * b);
  return d;
}

int MatrixProductOperatorState::max_bond() const {
  const auto d = bond_dims();
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

MatrixProductOperatorState symmetric_state_to_mpo(const SymmetricState& psi, int cap) {
  const int n = psi.n_spins;
  if (n < 1 || psi.amp.size() != n + 1) fail(ErrorKind::kInvalidArgument, "invalid symmetric state");
  if (cap < 0) cap = (n + 1) * (n + 1);
  std::vector<bool> support(n + 1);
  for (int k = 0; k <= n; ++k) support[k] = psi.amp(k) != 0.0;

  // Excitation counts c after i sites that can still reach the support.
  std::vector<std::vector<int>> counts(n + 1), index(n + 1, std::vector<int>(n + 1, -1));
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c <= i; ++c) {
      bool ok = false;
      for (int k = c; k <= c + n - i && !ok; ++k) ok = support[k];
      if (ok) {
        index[i][c] = int(counts[i].size());
        counts[i].push_back(c);
      }
    }
  }
  counts[n] = {0};

  MatrixProductOperatorState out;
  out.n_spins = n;
  for (int i = 0; i <= n; ++i) out.mps_bonds.push_back(int(counts[i].size()));
  for (int b : out.bond_dims())
    if (b > cap) fail(ErrorKind::kResourceLimit, "MPO bond dimension exceeds the cap");

  out.sites.resize(n);
  for (int i = 0; i < n; ++i) {
    const int dl = out.mps_bonds[i], dr = out.mps_bonds[i + 1];
    // Pure MPS entries: (left, right, value) per physical index.
    std::array<std::vector<Eigen::Triplet<cplx>>, 2> mps;
    for (int a = 0; a < dl; ++a) {
      const int c = counts[i][a];
      for (int s = 0; s < 2; ++s) {
        const int c2 = c + s;
        if (i + 1 == n) {
          if (support[c2]) mps[s].emplace_back(a, 0, psi.amp(c2) / std::sqrt(binomial(n, c2)));
        } else if (c2 <= i + 1 && index[i + 1][c2] >= 0) {
          mps[s].emplace_back(a, index[i + 1][c2], 1.0);
        }
      }
    }
    for (int s = 0; s < 2; ++s) {
      for (int t = 0; t < 2; ++t) {
        std::vector<Eigen::Triplet<cplx>> trip;
        for (const auto& x : mps[s])
          for (const auto& y : mps[t])
            trip.emplace_back(x.row() * dl + y.row(), x.col() * dr + y.col(),
                              x.value() * std::conj(y.value()));
        SpMat w(dl * dl, dr * dr);
        w.setFromTriplets(trip.begin(), trip.end());
        out.sites[i][2 * s + t] = std::move(w);
      }
    }
  }
  return out;
}

MatrixProductOperatorState apply_site_depolarizing(const MatrixProductOperatorState& rho,
                                                   const SiteNoiseProfile& profile) {
  if (profile.n_spins != rho.n_spins || int(profile.p.size()) != rho.n_spins)
    fail(ErrorKind::kInvalidArgument, "profile length does not match the state");
  MatrixProductOperatorState out = rho;
  for (int i = 0; i < rho.n_spins; ++i) {
    const double p = profile.p[i];
    if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::kInvalidArgument, "probability outside [0, 1]");
    const auto& w = rho.sites[i];
    const SpMat avg = 0.5 * (w[0] + w[3]);
    out.sites[i][0] = (1.0 - p) * w[0] + p * avg;
    out.sites[i][3] = (1.0 - p) * w[3] + p * avg;
    out.sites[i][1] = (1.0 - p) * w[1];
    out.sites[i][2] = (1.0 - p) * w[2];
  }
  return out;
}

namespace {

// Row vector v (left boundary) times the site transfer sum_{s s'} O(s', s) W[s s'].
Eigen::RowVectorXcd step(const Eigen::RowVectorXcd& v, const std::array<SpMat, 4>& w,
                         const Eigen::Matrix2cd& o) {
  Eigen::RowVectorXcd out = Eigen::RowVectorXcd::Zero(w[0].cols());
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t)
      if (o(t, s) != 0.0) out += o(t, s) * (v * w[2 * s + t]);
  return out;
}

Eigen::Matrix2cd pauli(Axis a) {
  Eigen::Matrix2cd m;
  switch (a) {
    case Axis::kX:
      m << 0, 1, 1, 0;
      break;
    case Axis::kY:
      m << 0, -kI, kI, 0;
      break;
    default:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

}  // namespace

cplx contract_product(const MatrixProductOperatorState& rho,
                      const std::vector<Eigen::Matrix2cd>& ops) {
  if (int(ops.size()) != rho.n_spins) fail(ErrorKind::kInvalidArgument, "one operator per site");
  Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
  for (int i = 0; i < rho.n_spins; ++i) v = step(v, rho.sites[i], ops[i]);
  return v(0);
}

double mpo_trace(const MatrixProductOperatorState& rho) {
  return contract_product(rho, std::vector<Eigen::Matrix2cd>(rho.n_spins, Eigen::Matrix2cd::Identity())).real();
}

Eigen::Matrix2cd site_reduction(const MatrixProductOperatorState& rho, int site) {
  if (site < 0 || site >= rho.n_spins) fail(ErrorKind::kInvalidArgument, "site out of range");
  std::vector<Eigen::Matrix2cd> ops(rho.n_spins, Eigen::Matrix2cd::Identity());
  Eigen::Matrix2cd r;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) {
      ops[site] = Eigen::Matrix2cd::Zero();
      ops[site](t, s) = 1.0;  // picks the |s><t| coefficient
      r(s, t) = contract_product(rho, ops);
    }
  return r;
}

RVec collective_marginal(const MatrixProductOperatorState& rho, Axis axis) {
  const int n = rho.n_spins;
  const int m = n + 1;
  const Eigen::Matrix2cd sig = pauli(axis);
  CVec chi(m);
  for (int j = 0; j < m; ++j) {
    const double phi = 2.0 * kPi * j / m;
    const Eigen::Matrix2cd o =
        std::cos(0.5 * phi) * Eigen::Matrix2cd::Identity() + kI * std::sin(0.5 * phi) * sig;
    chi(j) = contract_product(rho, std::vector<Eigen::Matrix2cd>(n, o));
  }
  RVec p(m);
  for (int k = 0; k < m; ++k) {
    cplx acc = 0.0;
    for (int j = 0; j < m; ++j) {
      const double phi = 2.0 * kPi * j / m;
      acc += chi(j) * std::exp(-kI * phi * (0.5 * n - k));
    }
    p(k) = acc.real() / m;
  }
  return p;
}

RVec dense_collective_marginal(const SymmetricState& psi, const SiteNoiseProfile& profile,
                               Axis axis) {
  const int n = psi.n_spins;
  if (n > 10) fail(ErrorKind::kResourceLimit, "dense oracle limited to N <= 10");
  if (profile.n_spins != n) fail(ErrorKind::kInvalidArgument, "profile length does not match the state");
  const CVec v = embed_dicke_state(psi);
  CMat rho = v * v.adjoint();
  const Eigen::Index dim = rho.rows();

  // Single-qubit map X -> (u X u^dag) applied to one tensor factor.
  auto local = [&](const CMat& r, int site, const Eigen::Matrix2cd& u) {
    const Eigen::Index bit = Eigen::Index(1) << site;
    CMat tmp = CMat::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x)
      for (int a = 0; a < 2; ++a) {
        const Eigen::Index x2 = a ? (x | bit) : (x & ~bit);
        const cplx c = u(a, (x & bit) ? 1 : 0);
        if (c != 0.0) tmp.row(x2) += c * r.row(x);
      }
    CMat out = CMat::Zero(dim, dim);
    for (Eigen::Index y = 0; y < dim; ++y)
      for (int a = 0; a < 2; ++a) {
        const Eigen::Index y2 = a ? (y | bit) : (y & ~bit);
        const cplx c = std::conj(u(a, (y & bit) ? 1 : 0));
        if (c != 0.0) out.col(y2) += c * tmp.col(y);
      }
    return out;
  };

  for (int site = 0; site < n; ++site) {
    const double p = profile.p[site];
    CMat next = (1.0 - 0.75 * p) * rho;
    for (Axis a : {Axis::kX, Axis::kY, Axis::kZ}) next += 0.25 * p * local(rho, site, pauli(a));
    rho = std::move(next);
  }
  // Rows of u are the eigenvectors of sigma_axis (eigenvalue +1 first), conjugated.
  Eigen::Matrix2cd u;
  const double r = std::sqrt(0.5);
  switch (axis) {
    case Axis::kX:
      u << r, r, r, -r;
      break;
    case Axis::kY:
      u << r, -kI * r, r, kI * r;
      break;
    default:
      u = Eigen::Matrix2cd::Identity();
      break;
  }
  for (int site = 0; site < n; ++site) rho = local(rho, site, u);
  RVec p = RVec::Zero(n + 1);
  for (Eigen::Index x = 0; x < dim; ++x) p(std::popcount(std::uint64_t(x))) += rho(x, x).real();
  return p;
}

}  // namespace hpspin
