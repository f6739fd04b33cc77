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

#include "hpspin/codes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hpspin {

namespace {

double lattice_step(int n_spins) { return std::sqrt(2.0 * kPi / n_spins); }

double lattice_radius(int t1, int t2, int mu) {
  return std::hypot(2.0 * t1 + mu, double(t2));
}

double envelope_g(int n_spins, double delta, double radius) {
  return 0.5 * delta * std::sqrt(n_spins * kPi) * radius;
}

void check_gkp(const GkpCodeParams& p) {
  if (p.n_spins < 2) fail(ErrorKind::kInvalidArgument, "GKP needs N >= 2");
  if (!(p.delta > 0.0)) fail(ErrorKind::kInvalidArgument, "delta must be > 0");
  if (p.t1_max < 0 || p.t2_max < 0)
    fail(ErrorKind::kInvalidArgument, "truncation must be non-negative");
  if (p.mu != 0 && p.mu != 1) fail(ErrorKind::kInvalidArgument, "mu in {0,1}");
  const double s = lattice_step(p.n_spins);
  for (int t1 = -p.t1_max; t1 <= p.t1_max; ++t1) {
    for (int t2 = -p.t2_max; t2 <= p.t2_max; ++t2) {
      const double r = lattice_radius(t1, t2, p.mu);
      if (r * s > kPi)
        fail(ErrorKind::kInvalidArgument,
             "lattice point beyond the sphere (rotation angle > pi)");
      if (0.5 * p.n_spins - envelope_g(p.n_spins, p.delta, r) + 1.0 <= 0.0)
        fail(ErrorKind::kInvalidArgument,
             "envelope argument leaves the Gamma-function domain");
    }
  }
}

struct LatticeTerm {
  double log_beta;
  CVec vec;
};

std::vector<LatticeTerm> lattice_terms(const GkpCodeParams& p) {
  check_gkp(p);
  const int n = p.n_spins;
  const SpinOperators ops = spin_operators(n);
  const HermitianExp ex(ops.jx), ey(ops.jy);
  const double s = lattice_step(n);
  const CVec top = highest_weight(n);
  std::vector<LatticeTerm> out;
  for (int t1 = -p.t1_max; t1 <= p.t1_max; ++t1) {
    for (int t2 = -p.t2_max; t2 <= p.t2_max; ++t2) {
      CVec v = ex.apply(t2 * s, top);
      v = ey.apply(-(2.0 * t1 + p.mu) * s, v);
      out.push_back({gkp_log_beta(n, p.delta, t1, t2, p.mu), std::move(v)});
    }
  }
  return out;
}

double max_log_beta(const std::vector<LatticeTerm>& terms) {
  double m = -1e300;
  for (const auto& t : terms) m = std::max(m, t.log_beta);
  return m;
}

}  // namespace

SymmetricState make_state(int n_spins, CVec amp) {
  if (amp.size() != n_spins + 1)
    fail(ErrorKind::kInvalidArgument, "amplitude length must be N+1");
  const double nrm = amp.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    fail(ErrorKind::kNumeric, "state has zero or non-finite norm");
  return {n_spins, amp / nrm};
}

double expectation(const SymmetricState& psi, const CMat& op) {
  return psi.amp.dot(op * psi.amp).real();
}

double mean_jz(const SymmetricState& psi) {
  double acc = 0.0;
  for (int k = 0; k < psi.amp.size(); ++k)
    acc += std::norm(psi.amp(k)) * (0.5 * psi.n_spins - k);
  return acc;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::kSpinGkp:
      return "spin_gkp";
    case Family::kSpinCat:
      return "spin_cat";
    case Family::kSpinBinomial:
      return "spin_binomial";
    case Family::kReference:
      break;
  }
  return "reference";
}

Family parse_family(const std::string& s) {
  if (s == "spin_gkp") return Family::kSpinGkp;
  if (s == "spin_cat") return Family::kSpinCat;
  if (s == "spin_binomial") return Family::kSpinBinomial;
  if (s == "reference") return Family::kReference;
  fail(ErrorKind::kConfig, "unknown code family '" + s + "'");
}

CVec ScsDecomposition::reconstruct() const {
  CVec v = CVec::Zero(n_spins + 1);
  for (const auto& t : terms) v += t.beta * scs_state(n_spins, t.omega);
  return v / v.norm();
}

bool gkp_lattice_valid(int n_spins, double delta, int t1_max, int t2_max) {
  try {
    for (int mu = 0; mu < 2; ++mu) check_gkp({n_spins, delta, t1_max, t2_max, mu});
  } catch (const Error&) {
    return false;
  }
  return true;
}

int gkp_auto_truncation(int n_spins, double delta, int cap) {
  const double d = delta > 0.0 ? delta : 1e-300;
  for (int t = cap; t > 0; --t)
    if (gkp_lattice_valid(n_spins, d, t, t)) return t;
  return 0;
}

double gkp_log_beta(int n_spins, double delta, int t1, int t2, int mu) {
  const double g = envelope_g(n_spins, delta, lattice_radius(t1, t2, mu));
  const double h = 0.5 * n_spins;
  return std::lgamma(n_spins + 1.0) - std::lgamma(h + g + 1.0) -
         std::lgamma(h - g + 1.0);
}

SymmetricState build_spin_gkp(const GkpCodeParams& p) {
  const auto terms = lattice_terms(p);
  const double m = max_log_beta(terms);
  CVec acc = CVec::Zero(p.n_spins + 1);
  for (const auto& t : terms) acc += std::exp(t.log_beta - m) * t.vec;
  return make_state(p.n_spins, acc);
}

ScsDecomposition gkp_scs_decomposition(const GkpCodeParams& p) {
  const auto terms = lattice_terms(p);
  const double m = max_log_beta(terms);
  const int n = p.n_spins;
  const SpinOperators ops = spin_operators(n);
  ScsDecomposition dec{n, {}};
  for (const auto& t : terms) {
    const double jn = 0.5 * n;
    Eigen::Vector3d b(t.vec.dot(ops.jx * t.vec).real() / jn,
                      t.vec.dot(ops.jy * t.vec).real() / jn,
                      t.vec.dot(ops.jz * t.vec).real() / jn);
    b /= b.norm();
    SCSParams om{std::acos(std::clamp(b.z(), -1.0, 1.0)),
                 std::atan2(b.y(), b.x())};
    om = canonicalize(om);
    const cplx phase = scs_state(n, om).dot(t.vec);
    if (std::abs(std::abs(phase) - 1.0) > 1e-8)
      fail(ErrorKind::kNumeric, "composed rotation is not a coherent state");
    dec.terms.push_back({std::exp(t.log_beta - m) * phase, om});
  }
  return dec;
}

SCSParams gkp_asymptotic_angles(int n_spins, int t1, int t2, int mu) {
  const double a = std::sqrt(2.0 * kPi) * t1 + mu * std::sqrt(0.5 * kPi);
  const double b = std::sqrt(0.5 * kPi) * t2;
  const double theta = 2.0 / std::sqrt(double(n_spins)) * std::hypot(a, b);
  return canonicalize({theta, std::atan2(b, a)});
}

CodePair build_gkp_pair(int n_spins, double delta, int t1_max, int t2_max) {
  CodePair c;
  c.family = Family::kSpinGkp;
  c.n_spins = n_spins;
  c.zero = build_spin_gkp({n_spins, delta, t1_max, t2_max, 0});
  c.one = build_spin_gkp({n_spins, delta, t1_max, t2_max, 1});
  c.params.delta = delta;
  c.params.t1_max = t1_max;
  c.params.t2_max = t2_max;
  c.overlap = c.zero.amp.dot(c.one.amp);
  c.zero_decomp = gkp_scs_decomposition({n_spins, delta, t1_max, t2_max, 0});
  c.one_decomp = gkp_scs_decomposition({n_spins, delta, t1_max, t2_max, 1});
  return c;
}

CodePair build_spin_binomial(int n_spins) {
  if (n_spins < 4) fail(ErrorKind::kInvalidArgument, "binomial code needs N >= 4");
  CodePair c;
  c.family = Family::kSpinBinomial;
  c.n_spins = n_spins;
  CVec z = CVec::Zero(n_spins + 1), o = CVec::Zero(n_spins + 1);
  z(0) = z(4) = 1.0;
  o(2) = 1.0;
  c.zero = make_state(n_spins, z);
  c.one = make_state(n_spins, o);
  c.overlap = c.zero.amp.dot(c.one.amp);
  return c;
}

ScsDecomposition cat_decomposition(int n_spins, double theta, int mu) {
  const double sign = mu == 0 ? 1.0 : -1.0;
  return {n_spins, {{1.0, {theta, 0.0}}, {sign, {theta, kPi}}}};
}

CodePair build_spin_cat(int n_spins, double theta) {
  if (!(theta >= 1e-3 && theta < 0.5 * kPi))
    fail(ErrorKind::kInvalidArgument, "cat angle must lie in [1e-3, pi/2)");
  CodePair c;
  c.family = Family::kSpinCat;
  c.n_spins = n_spins;
  const CVec a = scs_state(n_spins, {theta, 0.0});
  const CVec b = scs_state(n_spins, {theta, kPi});
  CVec z = a + b, o = a - b;
  // Exact parity: the even lobe sum only populates even n, the odd one odd n.
  for (int k = 0; k <= n_spins; ++k) (k % 2 ? z(k) : o(k)) = 0.0;
  c.zero = make_state(n_spins, z);
  c.one = make_state(n_spins, o);
  c.params.theta = theta;
  c.overlap = c.zero.amp.dot(c.one.amp);
  c.zero_decomp = cat_decomposition(n_spins, theta, 0);
  c.one_decomp = cat_decomposition(n_spins, theta, 1);
  return c;
}

CodePair build_reference_pair(int n_spins) {
  CodePair c;
  c.family = Family::kReference;
  c.n_spins = n_spins;
  c.zero = make_state(n_spins, dicke(n_spins, 0));
  c.one = make_state(n_spins, dicke(n_spins, n_spins));
  c.overlap = c.zero.amp.dot(c.one.amp);
  return c;
}

SymmetricState ghz_state(int n_spins) {
  if (n_spins < 1) fail(ErrorKind::kInvalidArgument, "n_spins must be >= 1");
  CVec v = CVec::Zero(n_spins + 1);
  v(0) = 1.0;
  v(n_spins) = 1.0;
  return make_state(n_spins, v);
}

ScsDecomposition ghz_decomposition(int n_spins) {
  const double w = 1.0 / std::sqrt(2.0);
  return {n_spins, {{w, {0.0, 0.0}}, {w, {kPi, 0.0}}}};
}

SymmetricState coherent_state(int n_spins, const SCSParams& omega) {
  return make_state(n_spins, scs_state(n_spins, omega));
}

GkpStabilizers gkp_stabilizers(int n_spins) {
  if (n_spins < 2) fail(ErrorKind::kInvalidArgument, "stabilizers need N >= 2");
  const SpinOperators ops = spin_operators(n_spins);
  const double s = lattice_step(n_spins);
  return {expi_hermitian(ops.jy, -2.0 * s), expi_hermitian(ops.jx, 2.0 * s)};
}

GkpCliffords gkp_cliffords(int n_spins) {
  if (n_spins < 2) fail(ErrorKind::kInvalidArgument, "Cliffords need N >= 2");
  const SpinOperators ops = spin_operators(n_spins);
  const double s = lattice_step(n_spins);
  GkpCliffords g;
  g.x = expi_hermitian(ops.jy, -s);
  g.z = expi_hermitian(ops.jx, -s);
  g.h = expi_hermitian(ops.jz, 0.5 * kPi);
  g.s = expi_hermitian(ops.jx * ops.jx, 1.0 / n_spins);
  g.cnot_coupling = 2.0 / n_spins;
  return g;
}

double stabilizer_commutator_norm(const SymmetricState& psi) {
  const GkpStabilizers st = gkp_stabilizers(psi.n_spins);
  const CVec c = st.tx * (st.tz * psi.amp) - st.tz * (st.tx * psi.amp);
  return c.squaredNorm();
}

namespace {

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double target) {
  double flo = f(lo), fhi = f(hi);
  if ((flo - target) * (fhi - target) > 0.0)
    fail(ErrorKind::kInvalidArgument,
         "calibration target outside the achievable range");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm - target) * (flo - target) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  const double x = 0.5 * (lo + hi);
  if (std::abs(f(x) - target) > 1e-6)
    fail(ErrorKind::kNumeric, "calibration did not converge");
  return x;
}

}  // namespace

double calibrate_code(Family family, int n_spins, double target_jz, int t_max) {
  switch (family) {
    case Family::kSpinBinomial: {
      const double jz = mean_jz(build_spin_binomial(n_spins).zero);
      if (std::abs(jz - target_jz) > 1e-6)
        fail(ErrorKind::kInvalidArgument, "binomial code has no free parameter");
      return 0.0;
    }
    case Family::kSpinCat: {
      auto f = [&](double th) { return mean_jz(build_spin_cat(n_spins, th).zero); };
      return bisect(f, 1e-3, 0.5 * kPi - 1e-9, target_jz);
    }
    case Family::kSpinGkp: {
      const int t = t_max >= 0 ? t_max : gkp_auto_truncation(n_spins, 0.0);
      // Largest delta keeping the envelope inside the Gamma domain.
      const double rmax = lattice_radius(t, t, 1);
      double hi = 1.0;
      if (rmax > 0)
        hi = std::min(hi, (0.5 * n_spins + 1.0) /
                              (0.5 * std::sqrt(n_spins * kPi) * rmax) *
                              (1.0 - 1e-9));
      auto f = [&](double d) {
        return mean_jz(build_spin_gkp({n_spins, d, t, t, 0}));
      };
      return bisect(f, 0.02, hi, target_jz);
    }
    case Family::kReference:
      break;
  }
  fail(ErrorKind::kInvalidArgument, "family has no calibration parameter");
}

}  // namespace hpspin
