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


#include "hpspin/magic_prep.hpp"

#include <cmath>

namespace hpspin {

namespace {

double lattice_step(int n) { return std::sqrt(2.0 * kPi / n); }

void check(const DampedProjectorParams& p) {
  if (p.n_spins < 2) fail(ErrorKind::kInvalidArgument, "needs N >= 2");
  if (!(p.damping >= 0.0)) fail(ErrorKind::kInvalidArgument, "damping must be non-negative");
  if (p.m_max < 0) fail(ErrorKind::kInvalidArgument, "m_max must be non-negative");
}

bool in_disk(int n, int m, int mp) {
  return 2.0 * std::hypot(double(m), double(mp)) * lattice_step(n) <= kPi + 1e-12;
}

}  // namespace

RVec damping_diagonal(const DampedProjectorParams& p) {
  check(p);
  RVec d(p.n_spins + 1);
  for (int k = 0; k <= p.n_spins; ++k) d(k) = std::exp(-p.damping * p.damping * k);
  return d;
}

CMat damping_operator(const DampedProjectorParams& p) {
  return damping_diagonal(p).cast<cplx>().asDiagonal();
}

DampedProjectors damped_projectors(const DampedProjectorParams& p) {
  const RVec e = damping_diagonal(p);
  DampedProjectors out;
  out.condition = e(0) / e(p.n_spins);
  if (!(out.condition <= 1e12)) fail(ErrorKind::kNumeric, "damping operator is ill-conditioned");
  const GkpStabilizers st = gkp_stabilizers(p.n_spins);
  auto sum = [&](const CMat& t) {
    const int d = p.n_spins + 1;
    CMat acc = CMat::Identity(d, d), fwd = acc, back = acc;
    const CMat ti = t.adjoint();
    for (int m = 1; m <= p.m_max; ++m) {
      fwd = fwd * t;
      back = back * ti;
      acc += fwd + back;
    }
    return CMat(e.cast<cplx>().asDiagonal() * acc * e.cwiseInverse().cast<cplx>().asDiagonal());
  };
  out.pi_q = sum(st.tz);
  out.pi_p = sum(st.tx);
  out.hermiticity_q = (out.pi_q - out.pi_q.adjoint()).norm();
  out.hermiticity_p = (out.pi_p - out.pi_p.adjoint()).norm();
  return out;
}

ResourceState prepare_resource_state(const DampedProjectorParams& p) {
  const RVec e = damping_diagonal(p);
  const int n = p.n_spins;
  const SpinOperators ops = spin_operators(n);
  const double s = lattice_step(n);
  // T_X^m' = exp(-i 2 s m' Jy), T_Z^m = exp(i 2 s m Jx).
  const HermitianExp gy(ops.jy), gx(ops.jx);
  const CVec top = highest_weight(n);
  CVec acc = CVec::Zero(n + 1);
  ResourceState r;
  for (int mp = -p.m_max; mp <= p.m_max; ++mp) {
    const CVec vx = gy.apply(-2.0 * s * mp, top);
    // Coordinates in the Jx eigenbasis let each T_Z power cost one product.
    const CVec cx = gx.vectors().adjoint() * vx;
    CVec phased = CVec::Zero(n + 1);
    for (int m = -p.m_max; m <= p.m_max; ++m) {
      if (p.clip_to_disk && !in_disk(n, m, mp)) continue;
      for (int k = 0; k <= n; ++k) phased(k) += std::exp(kI * (2.0 * s * m * gx.values()(k))) * cx(k);
      ++r.terms;
    }
    acc += gx.vectors() * phased;
  }
  acc = e.cast<cplx>().asDiagonal() * acc;
  r.norm = acc.norm();
  if (!(r.norm >= 1e-14)) fail(ErrorKind::kNumeric, "post-selected state has vanishing norm");
  r.state = make_state(n, acc);
  return r;
}

SymmetricState magic_target(const CodePair& code) {
  const CVec h = std::cos(kPi / 8) * code.zero.amp + std::sin(kPi / 8) * code.one.amp;
  const SymmetricState t = make_state(code.n_spins, h);
  if (std::abs(t.amp.squaredNorm() - 1.0) >= 1e-12) fail(ErrorKind::kNumeric, "target not normalized");
  return t;
}

std::vector<MagicPoint> magic_infidelity_curve(const std::vector<int>& n_grid,
                                               const MagicPreset& preset) {
  std::vector<MagicPoint> out;
  const double scale = preset.damping_scale > 0.0 ? preset.damping_scale : 0.5 * std::sqrt(kPi);
  for (int n : n_grid) {
    MagicPoint pt;
    pt.n_spins = n;
    pt.delta = preset.delta;
    pt.damping = scale * preset.delta;
    pt.truncation = gkp_auto_truncation(n, preset.delta);
    const CodePair code = build_gkp_pair(n, preset.delta, pt.truncation, pt.truncation);
    const SymmetricState target = magic_target(code);
    DampedProjectorParams p{n, pt.damping, preset.m_max, preset.clip_to_disk};
    const ResourceState r = prepare_resource_state(p);
    pt.infidelity = 1.0 - std::norm(target.amp.dot(r.state.amp));
    pt.preselection_norm_sq = r.norm * r.norm;
    if (preset.sensitivity_m_max > 0) {
      p.m_max = preset.sensitivity_m_max;
      const ResourceState r2 = prepare_resource_state(p);
      pt.sensitivity = std::abs(1.0 - std::norm(target.amp.dot(r2.state.amp)) - pt.infidelity);
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace hpspin
