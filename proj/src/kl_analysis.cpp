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

#include "hpspin/kl_analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace hpspin {

namespace {

constexpr int kMaxBruteForce = 12;

double levi_civita(int i, int j, int k) {
  return 0.5 * (i - j) * (j - k) * (k - i);
}

// Local operators on one qubit: 0 = x, 1 = y, 2 = z, 3 = s+, 4 = s-,
// 5 = (I+sz)/2, 6 = (I-sz)/2. Qubit value 0 is spin up.
CVec apply_local(const CVec& v, int site, int op) {
  const std::size_t mask = std::size_t{1} << site;
  CVec out = CVec::Zero(v.size());
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    const bool down = (std::size_t(x) & mask) != 0;
    const Eigen::Index flip = Eigen::Index(std::size_t(x) ^ mask);
    switch (op) {
      case 0:
        out(flip) += v(x);
        break;
      case 1:
        out(flip) += (down ? -kI : kI) * v(x);
        break;
      case 2:
        out(x) += down ? -v(x) : v(x);
        break;
      case 3:
        if (down) out(flip) += v(x);
        break;
      case 4:
        if (!down) out(flip) += v(x);
        break;
      case 5:
        if (!down) out(x) += v(x);
        break;
      case 6:
        if (down) out(x) += v(x);
        break;
      default:
        break;
    }
  }
  return out;
}

void check_brute_force_size(int n) {
  if (n > kMaxBruteForce)
    fail(ErrorKind::kResourceLimit, "brute-force KL oracle limited to N <= 12");
  if (n < 2) fail(ErrorKind::kInvalidArgument, "local KL needs N >= 2");
}

}  // namespace

double KLReport::delta_norm(int mu, int nu) const {
  return delta[mu][nu].norm();
}

KLReport kl_collective(const CodePair& code) {
  const int n = code.n_spins;
  if (code.zero.amp.size() != code.one.amp.size() || code.zero.amp.size() != n + 1)
    fail(ErrorKind::kInvalidArgument, "codeword dimension mismatch");
  const SpinOperators ops = spin_operators(n);
  const std::array<CMat, 4> e{CMat::Identity(n + 1, n + 1), ops.jx, ops.jy, ops.jz};
  KLReport r;
  r.n_spins = n;
  for (int mu = 0; mu < 2; ++mu) {
    for (int nu = 0; nu < 2; ++nu) {
      const CVec& bra = code.logical(mu).amp;
      const CVec& ket = code.logical(nu).amp;
      for (int b = 0; b < 4; ++b) {
        const CVec eb = e[b] * ket;
        for (int a = 0; a < 4; ++a) r.moments[mu][nu](a, b) = (e[a] * bra).dot(eb);
      }
    }
  }
  r.c_matrix = 0.5 * (r.moments[0][0] + r.moments[1][1]);
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu)
      r.delta[mu][nu] = r.moments[mu][nu] - (mu == nu ? r.c_matrix : Eigen::Matrix4cd::Zero());
  local_kl_from_collective(r);
  return r;
}

namespace {

Eigen::Matrix3cd local_from(const Eigen::Matrix4cd& c, int n) {
  Eigen::Matrix3cd d;
  const double norm = double(n) * (n - 1);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      cplx eps = 0.0;
      for (int k = 0; k < 3; ++k) eps += levi_civita(i, j, k) * c(0, k + 1);
      d(i, j) = (4.0 * c(i + 1, j + 1) - 2.0 * kI * eps) / norm;
    }
  }
  return d;
}

}  // namespace

void local_kl_from_collective(KLReport& r) {
  if (r.n_spins < 2) fail(ErrorKind::kInvalidArgument, "local KL needs N >= 2");
  r.d_matrix = local_from(r.c_matrix, r.n_spins);
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu) r.d_tilde[mu][nu] = local_from(r.delta[mu][nu], r.n_spins);
}

cplx predicted_one_body(const KLReport& r, int mu, int nu, int i) {
  const double kd = mu == nu ? 1.0 : 0.0;
  return 2.0 / r.n_spins * (kd * r.c_matrix(0, i + 1) + r.delta[mu][nu](0, i + 1));
}

cplx predicted_two_body(const KLReport& r, int mu, int nu, int i, int j) {
  const double kd = mu == nu ? 1.0 : 0.0;
  const double dij = i == j ? 1.0 : 0.0;
  const double inv = 1.0 / (r.n_spins - 1);
  return kd * (r.d_matrix(i, j) - dij * r.c_matrix(0, 0) * inv) +
         r.d_tilde[mu][nu](i, j) - dij * r.delta[mu][nu](0, 0) * inv;
}

CVec embed_dicke_state(const SymmetricState& psi) {
  const int n = psi.n_spins;
  if (n > 20) fail(ErrorKind::kResourceLimit, "tensor embedding limited to N <= 20");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> norm(n + 1);
  for (int k = 0; k <= n; ++k) norm[k] = 1.0 / std::sqrt(binomial(n, k));
  CVec v(static_cast<Eigen::Index>(dim));
  for (std::size_t x = 0; x < dim; ++x) {
    const int k = std::popcount(x);
    v(Eigen::Index(x)) = psi.amp(k) * norm[k];
  }
  return v;
}

LocalKLDirect local_kl_direct(const CodePair& code) {
  const int n = code.n_spins;
  check_brute_force_size(n);
  const std::array<CVec, 2> v{embed_dicke_state(code.zero), embed_dicke_state(code.one)};
  LocalKLDirect out;
  out.n_spins = n;
  for (int site = 0; site < n; ++site) {
    for (int i = 0; i < 3; ++i) {
      for (int nu = 0; nu < 2; ++nu) {
        const CVec w = apply_local(v[nu], site, i);
        for (int mu = 0; mu < 2; ++mu) {
          const cplx val = v[mu].dot(w);
          if (site == 0)
            out.one_body[mu][nu](i) = val;
          else
            out.site_spread = std::max(out.site_spread, std::abs(val - out.one_body[mu][nu](i)));
        }
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      for (int j = 0; j < 3; ++j) {
        for (int nu = 0; nu < 2; ++nu) {
          const CVec wj = apply_local(v[nu], b, j);
          for (int i = 0; i < 3; ++i) {
            const CVec w = apply_local(wj, a, i);
            for (int mu = 0; mu < 2; ++mu) {
              const cplx val = v[mu].dot(w);
              if (a == 0 && b == 1)
                out.two_body[mu][nu](i, j) = val;
              else
                out.site_spread = std::max(out.site_spread, std::abs(val - out.two_body[mu][nu](i, j)));
            }
          }
        }
      }
    }
  }
  return out;
}

LeakageReport leakage_kl_check(const CodePair& code, double tol) {
  const int n = code.n_spins;
  check_brute_force_size(n);
  LeakageReport rep;
  Eigen::Matrix2d e0, e1;
  e0 << 1, 0, 0, 0;  // <0| embedded as a row
  e1 << 0, 1, 0, 0;  // <1|
  const Eigen::Matrix2d sum = e0.transpose() * e0 + e1.transpose() * e1;
  rep.complete = (sum - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() == 0.0;

  const std::array<CVec, 2> v{embed_dicke_state(code.zero), embed_dicke_state(code.one)};
  const std::array<int, 4> products{5, 6, 3, 4};
  for (int p = 0; p < 4; ++p) {
    double worst = 0.0;
    for (int site = 0; site < n; ++site) {
      Eigen::Matrix2cd g;
      for (int nu = 0; nu < 2; ++nu) {
        const CVec w = apply_local(v[nu], site, products[p]);
        for (int mu = 0; mu < 2; ++mu) g(mu, nu) = v[mu].dot(w);
      }
      worst = std::max({worst, std::abs(g(0, 1)), std::abs(g(1, 0)),
                        0.5 * std::abs(g(0, 0) - g(1, 1))});
    }
    rep.residuals[p] = worst;
    rep.max_residual = std::max(rep.max_residual, worst);
  }
  rep.pass = rep.complete && rep.max_residual < tol;
  return rep;
}

}  // namespace hpspin
