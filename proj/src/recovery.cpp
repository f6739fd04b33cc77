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


#include "hpspin/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <unsupported/Eigen/KroneckerProduct>

namespace hpspin {

namespace {

double coupling(int two_j1, int two_j2) {
  if (two_j1 < 1 || two_j2 < 1) fail(ErrorKind::kInvalidArgument, "both spins must be at least 1/2");
  return 1.0 / std::sqrt(0.25 * two_j1 * two_j2);
}

}  // namespace

CMat cross_irrep_cnot(int two_j1, int two_j2, int max_dim) {
  const double c = coupling(two_j1, two_j2);
  if (long(two_j1 + 1) * (two_j2 + 1) > max_dim)
    fail(ErrorKind::kResourceLimit, "product dimension exceeds the dense cap");
  const CMat h = Eigen::kroneckerProduct(spin_operators(two_j1).jx, spin_operators(two_j2).jy).eval();
  return expi_hermitian(h, -c);
}

CMat apply_cross_irrep_cnot(int two_j1, int two_j2, const CMat& psi, long max_dim) {
  const double c = coupling(two_j1, two_j2);
  if (long(two_j1 + 1) * (two_j2 + 1) > max_dim)
    fail(ErrorKind::kResourceLimit, "product dimension exceeds the cap");
  if (psi.rows() != two_j1 + 1 || psi.cols() != two_j2 + 1)
    fail(ErrorKind::kInvalidArgument, "state shape does not match the irreps");
  const HermitianExp ex(spin_operators(two_j1).jx);
  const HermitianExp ey(spin_operators(two_j2).jy);
  CMat phi = ex.vectors().adjoint() * psi * ey.vectors().conjugate();
  for (Eigen::Index a = 0; a < phi.rows(); ++a)
    for (Eigen::Index b = 0; b < phi.cols(); ++b)
      phi(a, b) *= std::exp(-kI * c * ex.values()(a) * ey.values()(b));
  return ex.vectors() * phi * ey.vectors().transpose();
}

MflerResult idealized_mfler(const CollectiveDensity& rho, const SymmetricState& reference) {
  const int n = rho.n_spins;
  if (reference.n_spins != n) fail(ErrorKind::kInvalidArgument, "reference size mismatch");
  MflerResult r;
  r.trace_in = rho.trace();
  CMat top = CMat::Zero(n + 1, n + 1);
  // Index k <-> M = J - k in block J maps to M + (N/2 - J) = N/2 - k.
  for (const auto& [tj, b] : rho.blocks) top.topLeftCorner(tj + 1, tj + 1) += b;
  if (const CMat* t = rho.block(n)) r.fidelity_raw = reference.amp.dot(*t * reference.amp).real();
  r.fidelity_recovered = reference.amp.dot(top * reference.amp).real();
  r.recovered.n_spins = n;
  r.recovered.blocks[n] = std::move(top);
  r.trace_out = r.recovered.trace();
  return r;
}

std::vector<RecoveryPoint> recovery_fidelity_curve(const SymmetricState& codeword,
                                                   const std::vector<double>& grid,
                                                   const EvolveOptions& options,
                                                   EvolveDiagnostics* diag) {
  if (!std::is_sorted(grid.begin(), grid.end()) || (!grid.empty() && grid.front() < 0.0))
    fail(ErrorKind::kInvalidArgument, "grid must be sorted and non-negative");
  std::vector<RecoveryPoint> out;
  CollectiveDensity rho = embed_symmetric(codeword);
  double t = 0.0;
  EvolveDiagnostics worst;
  for (double gt : grid) {
    EvolveDiagnostics d;
    rho = evolve(rho, NoiseSchedule{1.0, gt - t}, options, &d);
    t = gt;
    worst.band_used = std::max(worst.band_used, d.band_used);
    worst.substeps += d.substeps;
    worst.max_terms = std::max(worst.max_terms, d.max_terms);
    worst.trace_deficit = std::max(worst.trace_deficit, d.trace_deficit);
    worst.lowest_population = std::max(worst.lowest_population, d.lowest_population);
    worst.fingerprint = d.fingerprint;
    const MflerResult m = idealized_mfler(rho, codeword);
    out.push_back({gt, m.fidelity_raw, m.fidelity_recovered});
  }
  if (diag) *diag = worst;
  return out;
}

// --- swap gadget ------------------------------------------------------------

namespace {

using RowMajorCMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

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

// Data space qubit0 (x) Sym(N-1), index q * N + k'; ancilla Sym(N).
struct GadgetSpaces {
  int n = 0;
  CMat embed;                 // Sym(N) -> data space
  std::array<CMat, 3> sigma;  // Pauli on qubit 0
  CMat unitary;               // e^A e^B on data (x) ancilla
  CVec zero, one, plus;
};

GadgetSpaces make_spaces(int n, const GadgetOptions& opt) {
  if (n < 2 || n > 8) fail(ErrorKind::kResourceLimit, "swap gadget limited to 2 <= N <= 8");
  GadgetSpaces g;
  g.n = n;
  g.embed = CMat::Zero(2 * n, n + 1);
  for (int k = 0; k <= n; ++k) {
    if (k <= n - 1) g.embed(k, k) = std::sqrt(binomial(n - 1, k) / binomial(n, k));
    if (k >= 1) g.embed(n + k - 1, k) = std::sqrt(binomial(n - 1, k - 1) / binomial(n, k));
  }
  const SpinOperators rest = spin_operators(n - 1);
  const SpinOperators anc = spin_operators(n);
  const CMat id2 = CMat::Identity(2, 2), idn = CMat::Identity(n, n);
  std::array<CMat, 3> jd;
  for (int a = 0; a < 3; ++a) {
    const Axis ax = static_cast<Axis>(a);
    const CMat p = pauli(ax);
    g.sigma[a] = Eigen::kroneckerProduct(p, idn).eval();
    jd[a] = Eigen::kroneckerProduct(0.5 * p, idn).eval() +
            Eigen::kroneckerProduct(id2, rest.component(ax)).eval();
  }
  const CMat ha = Eigen::kroneckerProduct(jd[0], anc.jy).eval();
  const CMat hb = Eigen::kroneckerProduct(jd[1], anc.jx).eval();
  g.unitary = expi_hermitian(ha, -2.0 / n) * expi_hermitian(hb, -2.0 / n);

  const int t = opt.truncation >= 0 ? opt.truncation : gkp_auto_truncation(n, opt.delta);
  const CodePair code = build_gkp_pair(n, opt.delta, t, t);
  g.zero = code.zero.amp;
  g.one = code.one.amp;
  g.plus = (g.zero + g.one).normalized();
  return g;
}

CMat reshape(const CVec& v, int rows, int cols) {
  return Eigen::Map<const RowMajorCMat>(v.data(), rows, cols);
}

KrausSet extract(const GadgetSpaces& g, Axis axis, const std::vector<CMat>& cols,
                 const GadgetOptions& opt) {
  const int n = g.n;
  KrausSet ks;
  ks.n_spins = n;
  ks.axis = axis;
  CMat r = CMat::Zero(2 * n, 2 * n);
  for (const CMat& c : cols) r += c * c.adjoint();
  Eigen::SelfAdjointEigenSolver<CMat> es(r);
  const RVec w = es.eigenvalues().reverse();
  const CMat u = es.eigenvectors().rowwise().reverse();
  const double total = w.sum();
  int keep = 0;
  double acc = 0.0;
  while (keep < w.size() && acc < opt.keep_weight * total) acc += w(keep++);

  const SpinOperators ops = spin_operators(n);
  const std::array<CMat, 4> basis{CMat::Identity(n + 1, n + 1), ops.jx, ops.jy, ops.jz};
  RVec low = RVec::Zero(n + 1);
  low.head(std::min(n, opt.low_excitation) + 1).setOnes();
  auto fit = [&](const CMat& k, const RVec& mask, Eigen::Vector4cd* coef) {
    const Eigen::Index d2 = k.size();
    CMat b(d2, 4);
    for (int i = 0; i < 4; ++i) {
      const CMat bm = basis[i] * mask.cast<cplx>().asDiagonal();
      b.col(i) = Eigen::Map<const CVec>(bm.data(), d2);
    }
    const CMat km = k * mask.cast<cplx>().asDiagonal();
    const CVec y = Eigen::Map<const CVec>(km.data(), d2);
    const Eigen::Vector4cd c = b.colPivHouseholderQr().solve(y);
    if (coef) *coef = c;
    return std::pair{(y - b * c).norm() / std::max(y.norm(), 1e-300), y.squaredNorm()};
  };

  CMat comp = CMat::Zero(n + 1, n + 1);
  double num = 0.0, den = 0.0;
  for (int m = 0; m < keep; ++m) {
    CMat k(n + 1, n + 1);
    for (int col = 0; col <= n; ++col) k.col(col) = (u.col(m).adjoint() * cols[col]).transpose();
    comp += k.adjoint() * k;
    Eigen::Vector4cd coef;
    const auto [res, wt] = fit(k, RVec::Ones(n + 1), &coef);
    const auto [lres, lwt] = fit(k, low, nullptr);
    num += lres * lres * lwt;
    den += lwt;
    ks.operators.push_back(std::move(k));
    ks.weights.push_back(w(m));
    ks.span_coefficients.push_back(coef);
    ks.span_residuals.push_back(res);
    ks.max_residual = std::max(ks.max_residual, res);
  }
  ks.completeness_error = (comp - CMat::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff();
  ks.low_excitation_rms = den > 0.0 ? std::sqrt(num / den) : 0.0;
  return ks;
}

}  // namespace

KrausSet swap_gadget_smallN(int n, Axis axis, const GadgetOptions& opt) {
  const GadgetSpaces g = make_spaces(n, opt);
  const CMat s = g.sigma[int(axis)] * g.embed;
  std::vector<CMat> cols;
  for (int k = 0; k <= n; ++k) {
    const CVec v = Eigen::kroneckerProduct(s.col(k), g.plus).eval();
    cols.push_back(reshape(g.unitary * v, 2 * n, n + 1));
  }
  return extract(g, axis, cols, opt);
}

KrausSet conjugated_error_kraus(int n, Axis axis, const GadgetOptions& opt) {
  const GadgetSpaces g = make_spaces(n, opt);
  const CMat iden = CMat::Identity(n + 1, n + 1);
  const CMat op = g.unitary * Eigen::kroneckerProduct(g.sigma[int(axis)], iden).eval() *
                  g.unitary.adjoint();
  const CVec data = g.embed * g.plus;
  std::vector<CMat> cols;
  for (int k = 0; k <= n; ++k) {
    const CVec v = Eigen::kroneckerProduct(data, iden.col(k)).eval();
    cols.push_back(reshape(op * v, 2 * n, n + 1));
  }
  return extract(g, axis, cols, opt);
}

std::array<double, 3> gadget_swap_infidelity(int n, const GadgetOptions& opt) {
  const GadgetSpaces g = make_spaces(n, opt);
  std::array<double, 3> out{};
  const std::array<const CVec*, 3> states{&g.zero, &g.one, &g.plus};
  for (int i = 0; i < 3; ++i) {
    const CVec data = g.embed * *states[i];
    const CVec v = Eigen::kroneckerProduct(data, g.plus).eval();
    const CMat psi = reshape(g.unitary * v, 2 * n, n + 1);
    const CMat rho_a = psi.transpose() * psi.conjugate();
    out[i] = 1.0 - states[i]->dot(rho_a * *states[i]).real();
  }
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) fail(ErrorKind::kInvalidArgument, "need at least two points");
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) fail(ErrorKind::kInvalidArgument, "log of non-positive value");
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace hpspin
