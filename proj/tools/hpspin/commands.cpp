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


#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "hpspin/collective_noise.hpp"
#include "hpspin/kl_analysis.hpp"
#include "hpspin/magic_prep.hpp"
#include "hpspin/recovery.hpp"
#include "hpspin/tn_noise.hpp"

namespace hpspin::cli {

namespace {

using ojson = nlohmann::ordered_json;

// Runs fn(0..n-1) on up to `threads` workers. Results must be written by
// index; the lowest-index exception is rethrown.
template <typename Fn>
void parallel_for(int n, int threads, Fn fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min(threads, n));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string m_value(int two_j, int k) { return format_double(0.5 * two_j - k); }

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

RVec marginal(const SymmetricState& psi, Axis a) {
  const CVec c = axis_basis(psi.n_spins, a).adjoint() * psi.amp;
  return c.cwiseAbs2();
}

const std::vector<std::string> kAxes{"x", "y", "z"};

std::vector<Axis> parse_axes(const std::vector<std::string>& names) {
  std::vector<Axis> out;
  for (const auto& s : names) out.push_back(parse_axis(s));
  return out;
}

int resolve_truncation(int t, int n, double delta) {
  return t >= 0 ? t : gkp_auto_truncation(n, delta);
}

EvolveOptions evolve_options(const CommonOptions& c) {
  EvolveOptions o;
  o.band = c.band;
  o.tolerance = c.tolerance;
  return o;
}

ojson complex_matrix(const Eigen::MatrixXcd& m) {
  ojson re = ojson::array(), im = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ojson r = ojson::array(), c = ojson::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      r.push_back(m(i, j).real());
      c.push_back(m(i, j).imag());
    }
    re.push_back(r);
    im.push_back(c);
  }
  return {{"re", re}, {"im", im}};
}

// --- fig1 -------------------------------------------------------------------

void run_fig1(Context& ctx) {
  auto& f = ctx.fields;
  const int n = f.get_int("n_spins", 160, 2, 400);
  const double delta = f.get_double("delta", 0.4, 1e-3, 5.0);
  const int t = resolve_truncation(f.get_int("truncation", 5, -1, 20), n, delta);
  f.finish();
  const CodePair code = build_gkp_pair(n, delta, t, t);
  for (int a = 0; a < 3; ++a) {
    CsvTable csv({"mu", "M", "p"});
    for (int mu = 0; mu < 2; ++mu) {
      const RVec p = marginal(code.logical(mu), static_cast<Axis>(a));
      for (int k = 0; k <= n; ++k) {
        csv.cell(mu).cell(m_value(n, k)).cell(p(k));
        csv.end_row();
      }
    }
    ctx.stage.write_csv("fig1_" + kAxes[a] + ".csv", csv);
  }
  ctx.stage.write_json("fig1_summary.json",
                       {{"n_spins", n},
                        {"delta", delta},
                        {"truncation", t},
                        {"mean_jz", {mean_jz(code.zero), mean_jz(code.one)}},
                        {"overlap_abs", std::abs(code.overlap)}});
}

// --- fig2 -------------------------------------------------------------------

void run_fig2(Context& ctx) {
  auto& f = ctx.fields;
  const int n = f.get_int("n_spins", 100, 2, 200);
  const double delta = f.get_double("delta", 0.4, 1e-3, 5.0);
  const int t = resolve_truncation(f.get_int("truncation", -1, -1, 20), n, delta);
  const double gt_max = f.get_double("gamma_t_max", 0.05, 0.0, 10.0);
  const int steps = f.get_int("gamma_t_steps", 20, 1, 10000);
  const double snap = f.get_double("snapshot_gamma_t", 0.025, 0.0, 10.0);
  const Axis axis = parse_axis(f.get_string("axis", "y", kAxes));
  f.finish();
  const EvolveOptions opt = evolve_options(ctx.common);
  const CodePair code = build_gkp_pair(n, delta, t, t);

  CsvTable pops({"gamma_t", "J", "p_J"});
  CollectiveDensity rho = embed_symmetric(code.zero);
  double now = 0.0;
  EvolveDiagnostics diag;
  for (int i = 0; i <= steps; ++i) {
    const double gt = gt_max * i / steps;
    rho = evolve(rho, {1.0, gt - now}, opt, &diag);
    now = gt;
    for (const auto& [tj, p] : irrep_populations(rho)) {
      pops.cell(gt).cell(format_double(0.5 * tj)).cell(p);
      pops.end_row();
    }
  }
  ctx.stage.write_csv("fig2_populations.csv", pops);

  const std::vector<std::pair<std::string, SymmetricState>> states{
      {"spin_gkp", code.zero}, {"scs", coherent_state(n, {0.0, 0.0})}, {"ghz", ghz_state(n)}};
  std::vector<std::array<RVec, 2>> res(states.size());
  std::vector<EvolveDiagnostics> diags(states.size());
  parallel_for(int(states.size()), ctx.common.threads, [&](int i) {
    const CollectiveDensity r0 = embed_symmetric(states[i].second);
    res[i][0] = total_marginal(r0, axis);
    res[i][1] = total_marginal(evolve(r0, {1.0, snap}, opt, &diags[i]), axis);
  });
  CsvTable marg({"state", "gamma_t", "M", "p"});
  for (std::size_t i = 0; i < states.size(); ++i)
    for (int s = 0; s < 2; ++s)
      for (int k = 0; k <= n; ++k) {
        marg.cell(states[i].first).cell(s ? snap : 0.0).cell(m_value(n, k)).cell(res[i][s](k));
        marg.end_row();
      }
  ctx.stage.write_csv("fig2_marginals.csv", marg);
  ctx.extra["generator_fingerprint"] = hex64(diag.fingerprint);
  ctx.extra["band_used"] = diag.band_used;
}

// --- fig3 -------------------------------------------------------------------

void run_fig3(Context& ctx) {
  auto& f = ctx.fields;
  const int n = f.get_int("n_spins", 100, 4, 200);
  const double gt = f.get_double("gamma_t", 0.025, 0.0, 10.0);
  const double target = f.get_double("target_jz", 0.5 * n - 2.0, 0.0, 0.5 * n);
  const auto names = f.get_string_list("states", {"spin_gkp", "spin_cat", "spin_binomial", "scs", "ghz"},
                                       {"spin_gkp", "spin_cat", "spin_binomial", "scs", "ghz"});
  const auto axes = parse_axes(f.get_string_list("axes", {"x", "y"}, kAxes));
  const double min_pop = f.get_double("min_population", 1e-12, 0.0, 1.0);
  f.finish();
  const EvolveOptions opt = evolve_options(ctx.common);

  struct Result {
    SymmetricState psi;
    double parameter = 0.0;
    CollectiveDensity rho;
    EvolveDiagnostics diag;
  };
  std::vector<Result> res(names.size());
  parallel_for(int(names.size()), ctx.common.threads, [&](int i) {
    Result& r = res[i];
    const std::string& s = names[i];
    if (s == "spin_gkp") {
      const int t = gkp_auto_truncation(n, 0.0);
      r.parameter = calibrate_code(Family::kSpinGkp, n, target, t);
      r.psi = build_gkp_pair(n, r.parameter, t, t).zero;
    } else if (s == "spin_cat") {
      r.parameter = calibrate_code(Family::kSpinCat, n, target);
      r.psi = build_spin_cat(n, r.parameter).zero;
    } else if (s == "spin_binomial") {
      r.psi = build_spin_binomial(n).zero;
    } else if (s == "scs") {
      r.psi = coherent_state(n, {0.0, 0.0});
    } else {
      r.psi = ghz_state(n);
    }
    r.rho = evolve(embed_symmetric(r.psi), {1.0, gt}, opt, &r.diag);
  });

  ojson summary = {{"n_spins", n}, {"gamma_t", gt}, {"target_jz", target}};
  ojson per = ojson::object();
  for (std::size_t i = 0; i < names.size(); ++i) {
    const Result& r = res[i];
    CsvTable csv({"axis", "J", "M", "p"});
    ojson pops = ojson::array();
    int arg = n;
    double best = -1.0;
    for (const auto& [tj, p] : irrep_populations(r.rho)) {
      pops.push_back({{"J", 0.5 * tj}, {"p", p}});
      if (p > best) {
        best = p;
        arg = tj;
      }
      if (p < min_pop) continue;
      for (Axis a : axes) {
        const RVec m = irrep_marginal(r.rho, tj, a);
        for (int k = 0; k <= tj; ++k) {
          csv.cell(axis_name(a)).cell(format_double(0.5 * tj)).cell(m_value(tj, k)).cell(m(k));
          csv.end_row();
        }
      }
    }
    ctx.stage.write_csv("fig3_" + names[i] + ".csv", csv);
    int shift = 0;
    const double score = self_similarity_score(irrep_marginal(r.rho, n, Axis::kY), n,
                                               irrep_marginal(r.rho, n - 2, Axis::kY), n - 2, 2, &shift);
    per[names[i]] = {{"parameter", r.parameter},
                     {"mean_jz", mean_jz(r.psi)},
                     {"argmax_J", 0.5 * arg},
                     {"self_similarity_y", score},
                     {"self_similarity_shift", shift},
                     {"band_used", r.diag.band_used},
                     {"populations", pops}};
  }
  summary["states"] = per;
  ctx.stage.write_json("fig3_summary.json", summary);
  if (!res.empty()) ctx.extra["generator_fingerprint"] = hex64(res.front().diag.fingerprint);
}

// --- fig4 -------------------------------------------------------------------

void run_fig4(Context& ctx) {
  auto& f = ctx.fields;
  const int n = f.get_int("n_spins", 60, 2, 200);
  const double delta = f.get_double("delta", 0.4, 1e-3, 5.0);
  const int t = resolve_truncation(f.get_int("truncation", -1, -1, 20), n, delta);
  const double zeta = f.get_double("zeta", 1.0, 0.0, 1e6);
  const auto p0s = f.get_double_list("p0", {0.0, 0.25, 0.5, 0.75, 1.0}, 0.0, 1.0);
  const auto axes = parse_axes(f.get_string_list("axes", {"y"}, kAxes));
  const double peak_frac = f.get_double("peak_fraction", 0.1, 0.0, 1.0);
  f.finish();

  const CodePair code = build_gkp_pair(n, delta, t, t);
  const std::vector<std::pair<std::string, SymmetricState>> states{{"spin_gkp", code.zero},
                                                                   {"ghz", ghz_state(n)}};
  const int jobs = int(states.size() * p0s.size() * axes.size());
  std::vector<RVec> res(jobs);
  std::vector<int> bond(states.size());
  parallel_for(jobs, ctx.common.threads, [&](int j) {
    const int a = j % int(axes.size());
    const int p = (j / int(axes.size())) % int(p0s.size());
    const int s = j / int(axes.size() * p0s.size());
    const auto mpo = symmetric_state_to_mpo(states[s].second);
    if (p == 0 && a == 0) bond[s] = mpo.max_bond();
    res[j] = collective_marginal(apply_site_depolarizing(mpo, noise_profile(p0s[p], zeta, n)), axes[a]);
  });

  ojson summary = {{"n_spins", n}, {"zeta", zeta}, {"delta", delta}, {"truncation", t}};
  ojson per = ojson::object();
  for (std::size_t s = 0; s < states.size(); ++s) {
    CsvTable csv({"p0", "zeta", "axis", "M", "p"});
    ojson pts = ojson::array();
    for (std::size_t p = 0; p < p0s.size(); ++p)
      for (std::size_t a = 0; a < axes.size(); ++a) {
        const RVec& m = res[(s * p0s.size() + p) * axes.size() + a];
        for (int k = 0; k <= n; ++k) {
          csv.cell(p0s[p]).cell(zeta).cell(axis_name(axes[a])).cell(m_value(n, k)).cell(m(k));
          csv.end_row();
        }
        ojson peaks = ojson::array();
        for (int k : find_peaks(m, peak_frac)) peaks.push_back(0.5 * n - k);
        pts.push_back({{"p0", p0s[p]},
                       {"axis", axis_name(axes[a])},
                       {"parity_contrast", parity_contrast(m)},
                       {"peaks_M", peaks}});
      }
    ctx.stage.write_csv("fig4_" + states[s].first + ".csv", csv);
    per[states[s].first] = {{"max_mpo_bond", bond[s]}, {"points", pts}};
  }
  CsvTable prof({"n", "p_n"});
  const SiteNoiseProfile pr = noise_profile(1.0, zeta, n);
  for (int i = 0; i < n; ++i) {
    prof.cell(i + 1).cell(pr.p[i]);
    prof.end_row();
  }
  ctx.stage.write_csv("fig4_profile.csv", prof);
  summary["states"] = per;
  ctx.stage.write_json("fig4_summary.json", summary);
}

// --- fig5 -------------------------------------------------------------------

void run_fig5(Context& ctx) {
  auto& f = ctx.fields;
  const int n = f.get_int("n_spins", 60, 2, 200);
  const double delta = f.get_double("delta", 0.4, 1e-3, 5.0);
  const int t = resolve_truncation(f.get_int("truncation", -1, -1, 20), n, delta);
  std::vector<double> def;
  for (int i = 0; i <= 10; ++i) def.push_back(0.01 * i);
  auto grid = f.get_double_list("gamma_t", def, 0.0, 10.0);
  f.finish();
  if (!std::is_sorted(grid.begin(), grid.end()))
    fail(ErrorKind::kConfig, "fig5.gamma_t: grid must be ascending");
  const CodePair code = build_gkp_pair(n, delta, t, t);
  EvolveDiagnostics diag;
  const auto curve = recovery_fidelity_curve(code.zero, grid, evolve_options(ctx.common), &diag);
  CsvTable csv({"gamma_t", "fidelity_raw", "fidelity_recovered"});
  for (const auto& p : curve) {
    csv.cell(p.gamma_t).cell(p.fidelity_raw).cell(p.fidelity_recovered);
    csv.end_row();
  }
  ctx.stage.write_csv("fig5.csv", csv);
  ctx.extra["generator_fingerprint"] = hex64(diag.fingerprint);
  ctx.extra["band_used"] = diag.band_used;
}

// --- fig6 -------------------------------------------------------------------

void run_fig6(Context& ctx) {
  auto& f = ctx.fields;
  const auto grid = f.get_int_list("n_spins", {40, 80, 120, 160}, 4, 400);
  MagicPreset preset;
  preset.delta = f.get_double("delta", 0.5, 1e-3, 5.0);
  preset.damping_scale = f.get_double("damping_scale", 0.5 * std::sqrt(kPi), 1e-6, 10.0);
  preset.m_max = f.get_int("m_max", 5, 0, 50);
  preset.clip_to_disk = f.get_bool("clip_to_disk", true);
  preset.sensitivity_m_max = f.get_int("sensitivity_m_max", 10, 0, 100);
  f.finish();

  std::vector<MagicPoint> pts(grid.size());
  parallel_for(int(grid.size()), ctx.common.threads, [&](int i) {
    pts[i] = magic_infidelity_curve({grid[i]}, preset).front();
  });
  CsvTable csv({"N", "delta", "infidelity", "preselection_norm_sq"});
  ojson extra = ojson::array();
  for (const auto& p : pts) {
    csv.cell(p.n_spins).cell(p.delta).cell(p.infidelity).cell(p.preselection_norm_sq);
    csv.end_row();
    extra.push_back({{"N", p.n_spins},
                     {"damping", p.damping},
                     {"truncation", p.truncation},
                     {"m_max_sensitivity", p.sensitivity}});
  }
  ctx.stage.write_csv("fig6.csv", csv);

  // Transverse distributions of target and resource state at the largest N.
  const int nmax = *std::max_element(grid.begin(), grid.end());
  const int t = gkp_auto_truncation(nmax, preset.delta);
  const SymmetricState target = magic_target(build_gkp_pair(nmax, preset.delta, t, t));
  const ResourceState res = prepare_resource_state(
      {nmax, preset.damping_scale * preset.delta, preset.m_max, preset.clip_to_disk});
  CsvTable dist({"state", "axis", "M", "p"});
  for (const auto& [name, psi] : {std::pair{"target", &target}, std::pair{"resource", &res.state}})
    for (Axis a : {Axis::kX, Axis::kY}) {
      const RVec m = marginal(*psi, a);
      for (int k = 0; k <= nmax; ++k) {
        dist.cell(name).cell(axis_name(a)).cell(m_value(nmax, k)).cell(m(k));
        dist.end_row();
      }
    }
  ctx.stage.write_csv("fig6_distributions.csv", dist);
  ctx.stage.write_json("fig6_summary.json", {{"points", extra}});
}

// --- kl-report --------------------------------------------------------------

void run_kl_report(Context& ctx) {
  auto& f = ctx.fields;
  const Family fam = parse_family(f.get_string("family", "spin_gkp", {}));
  const int n = f.get_int("n_spins", 40, 2, 400);
  const double delta = f.get_double("delta", 0.4, 1e-3, 5.0);
  const int tr = f.get_int("truncation", -1, -1, 20);
  const double theta = f.get_double("theta", 0.5, 1e-3, 0.5 * kPi - 1e-9);
  const bool local = f.get_bool("local_check", n <= 12);
  f.finish();
  CodePair code;
  switch (fam) {
    case Family::kSpinGkp: {
      const int t = resolve_truncation(tr, n, delta);
      code = build_gkp_pair(n, delta, t, t);
      break;
    }
    case Family::kSpinCat:
      code = build_spin_cat(n, theta);
      break;
    case Family::kSpinBinomial:
      code = build_spin_binomial(n);
      break;
    case Family::kReference:
      code = build_reference_pair(n);
      break;
  }
  const KLReport r = kl_collective(code);
  ojson dn = ojson::array();
  for (int mu = 0; mu < 2; ++mu) dn.push_back({r.delta_norm(mu, 0), r.delta_norm(mu, 1)});
  ojson out = {{"family", family_name(fam)},
               {"n_spins", n},
               {"overlap_abs", std::abs(code.overlap)},
               {"c_matrix", complex_matrix(r.c_matrix)},
               {"delta_norms", dn},
               {"d_matrix", complex_matrix(r.d_matrix)}};
  if (local) {
    const LocalKLDirect d = local_kl_direct(code);
    double dev = 0.0;
    for (int mu = 0; mu < 2; ++mu)
      for (int nu = 0; nu < 2; ++nu)
        for (int i = 0; i < 3; ++i) {
          dev = std::max(dev, std::abs(d.one_body[mu][nu](i) - predicted_one_body(r, mu, nu, i)));
          for (int j = 0; j < 3; ++j)
            dev = std::max(dev, std::abs(d.two_body[mu][nu](i, j) - predicted_two_body(r, mu, nu, i, j)));
        }
    const LeakageReport lk = leakage_kl_check(code);
    out["local_max_deviation"] = dev;
    out["local_site_spread"] = d.site_spread;
    out["leakage"] = {{"pass", lk.pass},
                      {"complete", lk.complete},
                      {"max_residual", lk.max_residual},
                      {"residuals", lk.residuals}};
  }
  ctx.stage.write_json("kl_report.json", out);
}

// --- gadget-kraus -----------------------------------------------------------

void run_gadget_kraus(Context& ctx) {
  auto& f = ctx.fields;
  const auto grid = f.get_int_list("n_spins", {4, 6, 8}, 2, 8);
  GadgetOptions opt;
  opt.delta = f.get_double("delta", 0.4, 1e-3, 5.0);
  opt.truncation = f.get_int("truncation", -1, -1, 20);
  opt.keep_weight = f.get_double("keep_weight", 1.0 - 1e-10, 0.5, 1.0);
  opt.low_excitation = f.get_int("low_excitation", 2, 0, 8);
  f.finish();

  const int na = 3, nn = int(grid.size());
  std::vector<KrausSet> lit(na * nn), conj(na * nn);
  std::vector<std::array<double, 3>> infid(nn);
  parallel_for(na * nn + nn, ctx.common.threads, [&](int j) {
    if (j >= na * nn) {
      infid[j - na * nn] = gadget_swap_infidelity(grid[j - na * nn], opt);
      return;
    }
    const Axis a = static_cast<Axis>(j / nn);
    lit[j] = swap_gadget_smallN(grid[j % nn], a, opt);
    conj[j] = conjugated_error_kraus(grid[j % nn], a, opt);
  });
  std::vector<double> xs(grid.begin(), grid.end());
  ojson axes = ojson::object();
  for (int a = 0; a < na; ++a) {
    std::vector<double> r1, r2;
    ojson l = ojson::array(), c = ojson::array();
    for (int i = 0; i < nn; ++i) {
      const KrausSet& k = lit[a * nn + i];
      const KrausSet& q = conj[a * nn + i];
      r1.push_back(k.max_residual);
      r2.push_back(q.low_excitation_rms);
      l.push_back({{"n_spins", grid[i]},
                   {"operators", k.operators.size()},
                   {"completeness_error", k.completeness_error},
                   {"max_residual", k.max_residual}});
      c.push_back({{"n_spins", grid[i]},
                   {"operators", q.operators.size()},
                   {"completeness_error", q.completeness_error},
                   {"low_excitation_rms", q.low_excitation_rms}});
    }
    ojson entry = {{"literal", {{"points", l}}}, {"conjugated", {{"points", c}}}};
    if (nn >= 2) {
      entry["literal"]["slope"] = loglog_slope(xs, r1);
      entry["conjugated"]["slope"] = loglog_slope(xs, r2);
    }
    axes[axis_name(static_cast<Axis>(a))] = entry;
  }
  ojson sw = ojson::array();
  for (int i = 0; i < nn; ++i)
    sw.push_back({{"n_spins", grid[i]}, {"zero", infid[i][0]}, {"one", infid[i][1]}, {"plus", infid[i][2]}});
  ctx.stage.write_json("gadget_kraus.json", {{"axes", axes}, {"swap_infidelity", sw}});
}

}  // namespace

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> list{
      {"fig1", "codeword distributions along x, y, z", run_fig1},
      {"fig2", "irrep populations and marginals under symmetric depolarizing", run_fig2},
      {"fig3", "per-irrep marginals of several codes after noise", run_fig3},
      {"fig4", "inhomogeneous depolarizing via MPO", run_fig4},
      {"fig5", "fidelity with and without idealized recovery", run_fig5},
      {"fig6", "resource-state infidelity versus N", run_fig6},
      {"kl-report", "Knill-Laflamme data for a code", run_kl_report},
      {"gadget-kraus", "effective Kraus operators of the swap gadget", run_gadget_kraus},
  };
  return list;
}

}  // namespace hpspin::cli
