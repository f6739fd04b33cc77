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

#include "hpspin/su2_core.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace hpspin {

Axis parse_axis(const std::string& s) {
  if (s == "x") return Axis::kX;
  if (s == "y") return Axis::kY;
  if (s == "z") return Axis::kZ;
  fail(ErrorKind::kInvalidArgument, "unknown axis '" + s + "'");
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r < 9.0e15 ? std::round(r) : r;
}

double degeneracy(int n_spins, int two_j) {
  if (n_spins < 1 || two_j < 0 || two_j > n_spins || (n_spins - two_j) % 2)
    fail(ErrorKind::kInvalidArgument, "no such irrep");
  const int k = (n_spins - two_j) / 2;
  return binomial(n_spins, k) - binomial(n_spins, k - 1);
}

std::vector<IrrepLabel> irrep_table(int n_spins) {
  if (n_spins < 1) fail(ErrorKind::kInvalidArgument, "n_spins must be >= 1");
  std::vector<IrrepLabel> out;
  for (int tj = n_spins; tj >= 0; tj -= 2)
    out.push_back({n_spins, tj, degeneracy(n_spins, tj)});
  return out;
}

const CMat& SpinOperators::component(Axis a) const {
  switch (a) {
    case Axis::kX:
      return jx;
    case Axis::kY:
      return jy;
    case Axis::kZ:
      break;
  }
  return jz;
}

SpinOperators spin_operators(int two_j) {
  if (two_j < 0) fail(ErrorKind::kInvalidArgument, "2J must be non-negative");
  const int d = two_j + 1;
  const double j = 0.5 * two_j;
  SpinOperators ops;
  ops.two_j = two_j;
  ops.jplus = CMat::Zero(d, d);
  ops.jz = CMat::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double m = j - k;
    ops.jz(k, k) = m;
    if (k > 0) ops.jplus(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  ops.jminus = ops.jplus.adjoint();
  ops.jx = 0.5 * (ops.jplus + ops.jminus);
  ops.jy = (ops.jplus - ops.jminus) / (2.0 * kI);
  return ops;
}

HermitianExp::HermitianExp(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  if (es.info() != Eigen::Success)
    fail(ErrorKind::kNumeric, "Hermitian eigendecomposition failed");
  vectors_ = es.eigenvectors();
  values_ = es.eigenvalues();
}

CMat HermitianExp::matrix(double t) const {
  CVec phase = (kI * t * values_.cast<cplx>()).array().exp();
  return vectors_ * phase.asDiagonal() * vectors_.adjoint();
}

CVec HermitianExp::apply(double t, const CVec& v) const {
  CVec phase = (kI * t * values_.cast<cplx>()).array().exp();
  CVec w = vectors_.adjoint() * v;
  return vectors_ * (phase.array() * w.array()).matrix();
}

CMat expi_hermitian(const CMat& h, double t) {
  return HermitianExp(h).matrix(t);
}

SCSParams canonicalize(SCSParams o) {
  const double two_pi = 2.0 * kPi;
  o.theta = std::fmod(o.theta, two_pi);
  if (o.theta < 0) {
    o.theta = -o.theta;
    o.phi += kPi;
  }
  if (o.theta > kPi) {
    o.theta = two_pi - o.theta;
    o.phi += kPi;
  }
  o.phi = std::fmod(o.phi, two_pi);
  if (o.phi < 0) o.phi += two_pi;
  if (o.phi >= two_pi) o.phi -= two_pi;
  if (o.theta == 0.0) o.phi = 0.0;
  return o;
}

Eigen::Vector3d bloch_vector(const SCSParams& o) {
  return {std::sin(o.theta) * std::cos(o.phi),
          std::sin(o.theta) * std::sin(o.phi), std::cos(o.theta)};
}

CMat rotation(int two_j, const SCSParams& o) {
  const SpinOperators ops = spin_operators(two_j);
  CMat gen = std::sin(o.phi) * ops.jx - std::cos(o.phi) * ops.jy;
  return expi_hermitian(gen, o.theta);
}

CVec highest_weight(int two_j) { return dicke(two_j, 0); }

CVec dicke(int two_j, int n) {
  if (n < 0 || n > two_j) fail(ErrorKind::kInvalidArgument, "Dicke index");
  CVec v = CVec::Zero(two_j + 1);
  v(n) = 1.0;
  return v;
}

CVec scs_state(int two_j, const SCSParams& o) {
  // Binomial expansion of the product state, evaluated in log space.
  const double c = std::cos(0.5 * o.theta);
  const double s = std::sin(0.5 * o.theta);
  CVec v = CVec::Zero(two_j + 1);
  const double lc = std::log(std::abs(c));
  const double ls = std::log(std::abs(s));
  const double lg = std::lgamma(two_j + 1.0);
  for (int n = 0; n <= two_j; ++n) {
    double mag;
    if (s == 0.0) {
      mag = n == 0 ? std::pow(c, two_j) : 0.0;
    } else if (c == 0.0) {
      mag = n == two_j ? std::pow(s, two_j) : 0.0;
    } else {
      const double lb = 0.5 * (lg - std::lgamma(n + 1.0) -
                               std::lgamma(two_j - n + 1.0));
      mag = std::exp(lb + (two_j - n) * lc + n * ls);
      if (c < 0 && (two_j - n) % 2) mag = -mag;
      if (s < 0 && n % 2) mag = -mag;
    }
    v(n) = mag * std::exp(kI * (n * o.phi));
  }
  return v;
}

cplx single_spin_overlap(const SCSParams& a, const SCSParams& b) {
  const double ca = std::cos(0.5 * a.theta), sa = std::sin(0.5 * a.theta);
  const double cb = std::cos(0.5 * b.theta), sb = std::sin(0.5 * b.theta);
  return ca * cb + std::exp(kI * (b.phi - a.phi)) * sa * sb;
}

cplx scs_overlap(const SCSParams& a, const SCSParams& b, int n_spins) {
  return std::pow(single_spin_overlap(a, b), n_spins);
}

double angular_separation(const SCSParams& a, const SCSParams& b) {
  const double f = std::min(1.0, std::abs(single_spin_overlap(a, b)));
  return 2.0 * std::acos(f);
}

SCSParams glauber_to_scs(cplx alpha, int n_spins) {
  if (n_spins < 1) fail(ErrorKind::kInvalidArgument, "n_spins must be >= 1");
  const double theta = 2.0 * std::abs(alpha) / std::sqrt(double(n_spins));
  if (theta > kPi)
    fail(ErrorKind::kInvalidArgument,
         "displacement exceeds the sphere: theta > pi");
  return canonicalize({theta, std::arg(alpha)});
}

CMat axis_basis(int two_j, Axis axis) {
  switch (axis) {
    case Axis::kX:
      return rotation(two_j, {0.5 * kPi, 0.0});
    case Axis::kY:
      return rotation(two_j, {0.5 * kPi, 0.5 * kPi});
    case Axis::kZ:
      break;
  }
  return CMat::Identity(two_j + 1, two_j + 1);
}

double commutator_residual(const SpinOperators& o) {
  const double a = (o.jx * o.jy - o.jy * o.jx - kI * o.jz).cwiseAbs().maxCoeff();
  const double b = (o.jy * o.jz - o.jz * o.jy - kI * o.jx).cwiseAbs().maxCoeff();
  const double c = (o.jz * o.jx - o.jx * o.jz - kI * o.jy).cwiseAbs().maxCoeff();
  return std::max({a, b, c});
}

}  // namespace hpspin
