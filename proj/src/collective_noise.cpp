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

#include "hpspin/collective_noise.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include <Eigen/LU>
#include <Eigen/QR>

#include "hpspin/kl_analysis.hpp"

namespace hpspin {

double CollectiveDensity::trace() const {
  double t = 0.0;
  for (const auto& [tj, b] : blocks) t += b.trace().real();
  return t;
}

const CMat* CollectiveDensity::block(int two_j) const {
  auto it = blocks.find(two_j);
  return it == blocks.end() ? nullptr : &it->second;
}

CollectiveDensity embed_symmetric(const SymmetricState& psi) {
  CollectiveDensity rho;
  rho.n_spins = psi.n_spins;
  rho.blocks[psi.n_spins] = psi.amp * psi.amp.adjoint();
  return rho;
}

namespace {

// Coupled-basis amplitudes of |J, M> in (spin j) x (spin 1/2):
// |J,M> = up * |j, M-1/2>|up> + dn * |j, M+1/2>|down>.
double cg_up(int two_big, int two_j, double m) {
  const double j = 0.5 * two_j;
  if (two_big == two_j + 1) return std::sqrt(std::max(0.0, (j + m + 0.5) / (2 * j + 1)));
  return -std::sqrt(std::max(0.0, (j - m + 0.5) / (2 * j + 1)));
}

double cg_dn(int two_big, int two_j, double m) {
  const double j = 0.5 * two_j;
  if (two_big == two_j + 1) return std::sqrt(std::max(0.0, (j - m + 0.5) / (2 * j + 1)));
  return std::sqrt(std::max(0.0, (j + m + 0.5) / (2 * j + 1)));
}

void fnv_mix(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
}

}  // namespace

DepolarizingGenerator::DepolarizingGenerator(int n_spins, int band, int cap)
    : n_spins_(n_spins) {
  if (n_spins < 2) fail(ErrorKind::kInvalidArgument, "generator needs N >= 2");
  if (n_spins > cap)
    fail(ErrorKind::kResourceLimit, "N exceeds the collective-noise cap");
  const int floor_two_j = n_spins % 2;
  lowest_two_j_ = band < 0 ? floor_two_j : std::max(floor_two_j, n_spins - 2 * band);
  const int n = n_spins;
  for (int src = n; src >= lowest_two_j_; src -= 2) {
    const double d_src = degeneracy(n, src);
    for (int tj : {src - 1, src + 1}) {
      if (tj < 0 || tj > n - 1) continue;
      const double ratio = n * degeneracy(n - 1, tj) / d_src;
      for (int dst : {tj - 1, tj + 1}) {
        if (dst < lowest_two_j_ || dst > n) continue;
        for (int q : {0, 1, -1}) {
          Transfer tr;
          tr.src_two_j = src;
          tr.dst_two_j = dst;
          tr.shift = (src - dst) / 2 + q;
          tr.first = std::max(0, -tr.shift);
          const int last = std::min(dst, src - tr.shift);
          if (last < tr.first) continue;
          tr.weight = ratio * (q == 0 ? 1.0 : 2.0);
          tr.coef.resize(last - tr.first + 1);
          for (int kp = tr.first; kp <= last; ++kp) {
            const double mp = 0.5 * dst - kp;
            const double m = mp - q;
            double c = 0.0;
            if (q == 0)
              c = cg_up(dst, tj, mp) * cg_up(src, tj, m) - cg_dn(dst, tj, mp) * cg_dn(src, tj, m);
            else if (q == 1)
              c = cg_up(dst, tj, mp) * cg_dn(src, tj, m);
            else
              c = cg_dn(dst, tj, mp) * cg_up(src, tj, m);
            tr.coef(kp - tr.first) = c;
          }
          if (tr.coef.cwiseAbs().maxCoeff() == 0.0) continue;
          transfers_.push_back(std::move(tr));
        }
      }
    }
  }
}

bool DepolarizingGenerator::tracks_all() const {
  return lowest_two_j_ == n_spins_ % 2;
}

CollectiveDensity DepolarizingGenerator::jump(const CollectiveDensity& rho) const {
  CollectiveDensity out;
  out.n_spins = n_spins_;
  for (int tj = n_spins_; tj >= lowest_two_j_; tj -= 2)
    out.blocks[tj] = CMat::Zero(tj + 1, tj + 1);
  for (const Transfer& tr : transfers_) {
    const CMat* src = rho.block(tr.src_two_j);
    if (!src) continue;
    const auto len = tr.coef.size();
    const auto c = tr.coef.cast<cplx>().asDiagonal();
    out.blocks[tr.dst_two_j].block(tr.first, tr.first, len, len) +=
        tr.weight * (c * src->block(tr.first + tr.shift, tr.first + tr.shift, len, len) * c);
  }
  return out;
}

CollectiveDensity DepolarizingGenerator::apply(const CollectiveDensity& rho,
                                               double gamma) const {
  CollectiveDensity out = jump(rho);
  for (auto& [tj, b] : out.blocks) {
    b *= 0.25 * gamma;
    if (const CMat* r = rho.block(tj)) b -= 0.75 * n_spins_ * gamma * (*r);
  }
  return out;
}

std::uint64_t DepolarizingGenerator::fingerprint() const {
  std::uint64_t h = 1469598103934665603ull;
  fnv_mix(h, &n_spins_, sizeof n_spins_);
  fnv_mix(h, &lowest_two_j_, sizeof lowest_two_j_);
  for (const Transfer& tr : transfers_) {
    fnv_mix(h, &tr.src_two_j, sizeof tr.src_two_j);
    fnv_mix(h, &tr.dst_two_j, sizeof tr.dst_two_j);
    fnv_mix(h, &tr.shift, sizeof tr.shift);
    fnv_mix(h, &tr.weight, sizeof tr.weight);
    fnv_mix(h, tr.coef.data(), sizeof(double) * tr.coef.size());
  }
  return h;
}

namespace {

void axpy(CollectiveDensity& acc, double a, const CollectiveDensity& x) {
  for (const auto& [tj, b] : x.blocks) {
    auto it = acc.blocks.find(tj);
    if (it == acc.blocks.end())
      acc.blocks[tj] = a * b;
    else
      it->second += a * b;
  }
}

void scale(CollectiveDensity& x, double a) {
  for (auto& [tj, b] : x.blocks) b *= a;
}

// exp(t L) = exp(-3 N gamma t / 4) exp((gamma t / 4) jump); every Taylor term
// of the second factor is positive, so the series has no cancellation.
CollectiveDensity taylor_evolve(const DepolarizingGenerator& gen,
                                const CollectiveDensity& rho,
                                const NoiseSchedule& s, EvolveDiagnostics& d) {
  const int n = gen.n_spins();
  const double total = 0.75 * n * s.gamma * s.t;
  const int nsub = std::max(1, int(std::ceil(total)));
  const double tau = 0.25 * s.gamma * s.t / nsub;
  const double decay = std::exp(-total / nsub);
  CollectiveDensity cur = rho;
  d.substeps = nsub;
  for (int step = 0; step < nsub; ++step) {
    CollectiveDensity acc = cur;
    CollectiveDensity term = cur;
    const double ref = std::max(cur.trace(), 1e-300);
    int k = 1;
    for (;; ++k) {
      if (k > 400) fail(ErrorKind::kNumeric, "Taylor series failed to converge");
      term = gen.jump(term);
      scale(term, tau / k);
      axpy(acc, 1.0, term);
      if (std::abs(term.trace()) < 1e-18 * ref) break;
    }
    d.max_terms = std::max(d.max_terms, k);
    scale(acc, decay);
    cur = std::move(acc);
  }
  return cur;
}

}  // namespace

CollectiveDensity evolve(const CollectiveDensity& rho, const NoiseSchedule& s,
                         const EvolveOptions& opt, EvolveDiagnostics* diag) {
  if (s.gamma < 0 || s.t < 0)
    fail(ErrorKind::kInvalidArgument, "rate and duration must be non-negative");
  int band = opt.band;
  const int n = rho.n_spins;
  for (;;) {
    DepolarizingGenerator gen(n, band);
    EvolveDiagnostics d;
    d.band_used = band;
    d.fingerprint = gen.fingerprint();
    CollectiveDensity out = s.t == 0.0 ? rho : taylor_evolve(gen, rho, s, d);
    d.trace_deficit = std::abs(rho.trace() - out.trace());
    if (!gen.tracks_all()) {
      const CMat* low = out.block(gen.lowest_two_j());
      d.lowest_population = low ? low->trace().real() : 0.0;
    }
    const bool widen = !gen.tracks_all() && opt.auto_widen &&
                       (d.trace_deficit > opt.tolerance || d.lowest_population > opt.tail_threshold);
    if (widen) {
      band += std::max(4, band);
      continue;
    }
    if (d.trace_deficit > opt.tolerance && gen.tracks_all())
      fail(ErrorKind::kNumeric, "trace not preserved by the evolution");
    if (diag) *diag = d;
    return out;
  }
}

std::vector<std::pair<int, double>> irrep_populations(const CollectiveDensity& rho) {
  std::vector<std::pair<int, double>> out;
  for (const auto& [tj, b] : rho.blocks) out.emplace_back(tj, b.trace().real());
  return out;
}

RVec irrep_marginal(const CollectiveDensity& rho, int two_j, Axis axis) {
  const CMat* b = rho.block(two_j);
  if (!b) fail(ErrorKind::kInvalidArgument, "no block for the requested irrep");
  if (axis == Axis::kZ) return b->diagonal().real();
  const CMat r = axis_basis(two_j, axis);
  return (r.adjoint() * (*b) * r).diagonal().real();
}

RVec total_marginal(const CollectiveDensity& rho, Axis axis) {
  RVec out = RVec::Zero(rho.n_spins + 1);
  for (const auto& [tj, b] : rho.blocks) {
    const int off = (rho.n_spins - tj) / 2;
    out.segment(off, tj + 1) += irrep_marginal(rho, tj, axis);
  }
  return out;
}

// --- brute-force oracle ---------------------------------------------------

namespace {

constexpr int kMaxFull = 8;

void check_full(int n) {
  if (n > kMaxFull) fail(ErrorKind::kResourceLimit, "full-space oracle limited to N <= 8");
}

// out += s * P rho P^dag for P = sigma_{x,y,z} on one site (0 = up).
void add_pauli_conjugation(const CMat& rho, int site, int op, double s, CMat& out) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index m = Eigen::Index(1) << site;
  auto sign = [&](Eigen::Index x) { return (x & m) ? -1.0 : 1.0; };
  auto ph = [&](Eigen::Index x) { return (x & m) ? -kI : kI; };
  for (Eigen::Index y = 0; y < dim; ++y) {
    for (Eigen::Index x = 0; x < dim; ++x) {
      switch (op) {
        case 0:
          out(x ^ m, y ^ m) += s * rho(x, y);
          break;
        case 1:
          out(x ^ m, y ^ m) += s * ph(x) * std::conj(ph(y)) * rho(x, y);
          break;
        default:
          out(x, y) += s * sign(x) * sign(y) * rho(x, y);
          break;
      }
    }
  }
}

CVec collective_lower(const CVec& v, int n) {
  CVec out = CVec::Zero(v.size());
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    if (v(x) == 0.0) continue;
    for (int site = 0; site < n; ++site) {
      const Eigen::Index m = Eigen::Index(1) << site;
      if (!(x & m)) out(x | m) += v(x);
    }
  }
  return out;
}

}  // namespace

CMat full_density(const SymmetricState& psi) {
  check_full(psi.n_spins);
  const CVec v = embed_dicke_state(psi);
  return v * v.adjoint();
}

CMat brute_force_jump(const CMat& rho, int n) {
  check_full(n);
  CMat out = CMat::Zero(rho.rows(), rho.cols());
  for (int site = 0; site < n; ++site)
    for (int op = 0; op < 3; ++op) add_pauli_conjugation(rho, site, op, 1.0, out);
  return out;
}

CMat brute_force_evolve(const CMat& rho, int n, const NoiseSchedule& s) {
  check_full(n);
  // The generator is a sum of commuting single-site terms, each solved by
  // rho -> a rho + (1 - a) (I/2) tr_site(rho), a = exp(-gamma t).
  const double a = std::exp(-s.gamma * s.t);
  CMat cur = rho;
  for (int site = 0; site < n; ++site) {
    CMat next = (a + 0.25 * (1.0 - a)) * cur;
    for (int op = 0; op < 3; ++op) add_pauli_conjugation(cur, site, op, 0.25 * (1.0 - a), next);
    cur = std::move(next);
  }
  return cur;
}

CollectiveDensity compress_to_collective(const CMat& rho, int n) {
  check_full(n);
  const Eigen::Index dim = Eigen::Index(1) << n;
  if (rho.rows() != dim) fail(ErrorKind::kInvalidArgument, "density dimension mismatch");
  CollectiveDensity out;
  out.n_spins = n;
  for (int tj = n; tj >= 0; tj -= 2) {
    const int k = (n - tj) / 2;
    std::vector<Eigen::Index> hi, lo;
    for (Eigen::Index x = 0; x < dim; ++x) {
      const int pc = std::popcount(std::uint64_t(x));
      if (pc == k) hi.push_back(x);
      if (pc == k - 1) lo.push_back(x);
    }
    // Highest-weight vectors: kernel of J+ restricted to M = J.
    RMat hw;
    if (k == 0) {
      hw = RMat::Ones(1, 1);
    } else {
      RMat jp = RMat::Zero(lo.size(), hi.size());
      for (std::size_t c = 0; c < hi.size(); ++c)
        for (int site = 0; site < n; ++site) {
          const Eigen::Index m = Eigen::Index(1) << site;
          if (!(hi[c] & m)) continue;
          const auto it = std::lower_bound(lo.begin(), lo.end(), hi[c] & ~m);
          jp(it - lo.begin(), c) = 1.0;
        }
      const RMat ker = Eigen::FullPivLU<RMat>(jp).kernel();
      Eigen::HouseholderQR<RMat> qr(ker);
      hw = qr.householderQ() * RMat::Identity(ker.rows(), ker.cols());
    }
    const double d = degeneracy(n, tj);
    if (hw.cols() != Eigen::Index(std::llround(d)))
      fail(ErrorKind::kNumeric, "highest-weight space has the wrong dimension");
    CMat block = CMat::Zero(tj + 1, tj + 1);
    for (Eigen::Index lam = 0; lam < hw.cols(); ++lam) {
      CMat ladder(dim, tj + 1);
      CVec v = CVec::Zero(dim);
      for (std::size_t c = 0; c < hi.size(); ++c) v(hi[c]) = hw(c, lam);
      for (int kk = 0; kk <= tj; ++kk) {
        ladder.col(kk) = v / v.norm();
        if (kk < tj) v = collective_lower(ladder.col(kk), n);
      }
      block += ladder.adjoint() * rho * ladder;
    }
    out.blocks[tj] = block;
  }
  return out;
}

// --- short-time jump analytics ------------------------------------------

namespace {

std::vector<ScsTerm> normalized_terms(const ScsDecomposition& dec) {
  std::vector<ScsTerm> t = dec.terms;
  cplx nrm2 = 0.0;
  for (const auto& a : t)
    for (const auto& b : t) nrm2 += std::conj(a.beta) * b.beta * scs_overlap(a.omega, b.omega, dec.n_spins);
  if (!(nrm2.real() > 0.0)) fail(ErrorKind::kInvalidArgument, "decomposition has zero norm");
  for (auto& a : t) a.beta /= std::sqrt(nrm2.real());
  return t;
}

CMat top_projection(const ScsDecomposition& dec, const std::vector<ScsTerm>& t,
                    double gamma) {
  const int n = dec.n_spins;
  CVec psi = CVec::Zero(n + 1);
  for (const auto& a : t) psi += a.beta * scs_state(n, a.omega);
  const CMat rho0 = psi * psi.adjoint();
  const SpinOperators ops = spin_operators(n);
  return gamma / n * (ops.jx * rho0 * ops.jx + ops.jy * rho0 * ops.jy + ops.jz * rho0 * ops.jz);
}

void check_reconstruction(const ScsDecomposition& dec) {
  for (const auto& a : dec.terms)
    if (!std::isfinite(std::abs(a.beta)) || !std::isfinite(a.omega.theta))
      fail(ErrorKind::kInvalidArgument, "decomposition has non-finite entries");
}

}  // namespace

JumpProjection jump_projection_analytic(const ScsDecomposition& dec, double gamma) {
  check_reconstruction(dec);
  const int n = dec.n_spins;
  if (n < 2) fail(ErrorKind::kInvalidArgument, "needs N >= 2");
  const auto t = normalized_terms(dec);
  JumpProjection out;
  out.top = top_projection(dec, t, gamma);
  out.lower = CMat::Zero(n - 1, n - 1);
  std::vector<CVec> u;
  for (const auto& a : t) u.push_back(scs_state(n - 2, a.omega));
  for (std::size_t k = 0; k < t.size(); ++k)
    for (std::size_t l = 0; l < t.size(); ++l) {
      const cplx f = std::conj(single_spin_overlap(t[k].omega, t[l].omega));
      out.lower += (t[k].beta * std::conj(t[l].beta) * f * f) * (u[k] * u[l].adjoint());
    }
  out.lower *= 0.5 * gamma * (n - 1);
  return out;
}

JumpProjection jump_projection_cos2_form(const ScsDecomposition& dec, double gamma) {
  check_reconstruction(dec);
  const int n = dec.n_spins;
  if (n < 2) fail(ErrorKind::kInvalidArgument, "needs N >= 2");
  const auto t = normalized_terms(dec);
  JumpProjection out;
  out.top = top_projection(dec, t, gamma);
  out.lower = CMat::Zero(n - 1, n - 1);
  std::vector<CVec> u;
  for (const auto& a : t) u.push_back(scs_state(n - 2, a.omega));
  for (std::size_t k = 0; k < t.size(); ++k)
    for (std::size_t l = 0; l < t.size(); ++l) {
      const double c = std::cos(0.5 * angular_separation(t[k].omega, t[l].omega));
      out.lower += (t[k].beta * std::conj(t[l].beta) * c * c) * (u[k] * u[l].adjoint());
    }
  out.lower *= 0.25 * gamma * (n - 1);
  return out;
}

// --- distribution diagnostics -----------------------------------------------

double self_similarity_score(const RVec& pa, int two_ja, const RVec& pb,
                             int two_jb, int max_shift, int* best_shift) {
  const double sa = pa.sum(), sb = pb.sum();
  if (!(sa > 0.0) || !(sb > 0.0)) fail(ErrorKind::kInvalidArgument, "zero-mass distribution");
  if ((two_ja - two_jb) % 2) fail(ErrorKind::kInvalidArgument, "irreps differ by a half-integer");
  double best = -1.0;
  int arg = 0;
  for (int s = -max_shift; s <= max_shift; ++s) {
    double acc = 0.0;
    for (Eigen::Index ka = 0; ka < pa.size(); ++ka) {
      const Eigen::Index kb = (two_jb - two_ja) / 2 + ka - s;
      if (kb < 0 || kb >= pb.size()) continue;
      acc += std::sqrt(std::max(0.0, pa(ka) / sa) * std::max(0.0, pb(kb) / sb));
    }
    if (acc > best) {
      best = acc;
      arg = s;
    }
  }
  if (best_shift) *best_shift = arg;
  return best;
}

double parity_contrast(const RVec& p) {
  double alt = 0.0, tot = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    alt += (k % 2 ? -1.0 : 1.0) * p(k);
    tot += p(k);
  }
  if (!(tot > 0.0)) fail(ErrorKind::kInvalidArgument, "zero-mass distribution");
  return std::abs(alt) / tot;
}

std::vector<int> find_peaks(const RVec& p, double frac) {
  std::vector<int> out;
  const double thr = frac * p.maxCoeff();
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    const bool left = k == 0 || p(k) > p(k - 1);
    const bool right = k + 1 == p.size() || p(k) >= p(k + 1);
    if (left && right && p(k) > thr) out.push_back(int(k));
  }
  return out;
}

}  // namespace hpspin
