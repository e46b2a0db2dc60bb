#include "nlsim/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nlsim/config.hpp"
#include "nlsim/diagnostics.hpp"
#include "nlsim/inequality_lab.hpp"
#include "nlsim/morawetz.hpp"
#include "nlsim/report.hpp"

namespace nlsim {

namespace {

namespace fs = std::filesystem;

std::vector<double> logspace(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(count));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i)
    out.push_back(std::exp(llo + (lhi - llo) * i / (count - 1)));
  return out;
}

std::vector<double> default_N_list() {
  std::vector<double> out;
  for (int k = -4; k <= 10; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

CheckRow make_row(std::string name, std::map<std::string, std::string> params,
                  double lhs, double rhs, std::string bound, bool pass,
                  std::string detail = "") {
  CheckRow r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.bound = std::move(bound);
  r.pass = pass;
  r.detail = std::move(detail);
  return r;
}

CsvTable ratio_table(const std::string& name, const RatioReport& rep) {
  CsvTable t;
  t.name = name;
  t.header = {"sample_id", "param", "value", "lhs", "rhs", "ratio"};
  std::string params;
  for (const auto& [k, v] : rep.params) {
    if (!params.empty()) params += ";";
    params += k + "=" + render_real(v);
  }
  for (const auto& s : rep.samples)
    t.rows.push_back({std::to_string(s.sample_id), "params", params, render_real(s.lhs),
                      render_real(s.rhs), render_real(s.ratio)});
  t.rows.push_back({"summary", "sup_ratio", render_real(rep.sup_ratio), "", "", ""});
  return t;
}

void append_ratio_rows(CsvTable& t, const RatioReport& rep,
                       std::map<std::string, double> tag) {
  std::string params;
  for (const auto& [k, v] : rep.params) {
    if (!params.empty()) params += ";";
    params += k + "=" + render_real(v);
  }
  for (const auto& [k, v] : tag) params += ";" + k + "=" + render_real(v);
  for (const auto& s : rep.samples)
    t.rows.push_back({std::to_string(s.sample_id), "params", params, render_real(s.lhs),
                      render_real(s.rhs), render_real(s.ratio)});
}

struct CommandContext {
  Config cfg;
  std::string trajectory_path;
};

Trajectory run_simulation(const Config& cfg) {
  auto grid = build_grid(cfg);
  RadialField u0 = make_initial_data(cfg, grid);
  SolverConfig sc;
  sc.dt = cfg.solver_dt;
  sc.t_end = cfg.solver_t_end;
  sc.record_stride = cfg.solver_record_stride;
  sc.scheme = cfg.solver_scheme;
  sc.dealias = cfg.solver_dealias;
  return evolve(u0, sc, cfg.initial_profile);
}

int finish(const DiagnosticsReport& rep, const std::vector<CsvTable>& tables,
           const Config& cfg) {
  emit_report(rep, tables, cfg.output_dir, cfg.output_csv, cfg.output_json);
  for (const auto& r : rep.rows)
    if (!r.pass)
      std::cerr << "FAIL " << r.name << ": " << r.bound << " violated (lhs=" << r.lhs
                << ", rhs=" << r.rhs << ") " << r.detail << "\n";
  return rep.all_pass() ? 0 : 1;
}

int cmd_simulate(const CommandContext& ctx) {
  const Config& cfg = ctx.cfg;
  Trajectory traj = run_simulation(cfg);
  fs::create_directories(cfg.output_dir);
  save_trajectory(traj, (fs::path(cfg.output_dir) / "trajectory.bin").string());

  CsvTable cons;
  cons.name = "conservation";
  cons.header = {"t", "mass", "energy_kinetic", "energy_potential", "energy_total"};
  for (int i = 0; i < traj.size(); ++i) {
    const auto e = energy(traj.states[static_cast<size_t>(i)]);
    cons.rows.push_back({render_real(traj.times[static_cast<size_t>(i)]),
                         render_real(mass(traj.states[static_cast<size_t>(i)])),
                         render_real(e.kinetic), render_real(e.potential),
                         render_real(e.total)});
  }

  DiagnosticsReport rep;
  rep.suite = "simulate";
  rep.config_echo = cfg.echo();
  rep.add_row(make_row("mass_drift", {}, traj.provenance.mass_drift, cfg.solver_mass_tol,
                       "relative mass drift <= tolerance",
                       traj.provenance.mass_drift <= cfg.solver_mass_tol));
  rep.add_row(make_row("energy_drift", {}, traj.provenance.energy_drift,
                       cfg.solver_energy_tol, "relative energy drift <= tolerance",
                       traj.provenance.energy_drift <= cfg.solver_energy_tol));
  return finish(rep, {cons}, cfg);
}

int cmd_diagnose(const CommandContext& ctx) {
  const Config& cfg = ctx.cfg;
  std::string path = ctx.trajectory_path;
  if (path.empty()) path = (fs::path(cfg.output_dir) / "trajectory.bin").string();
  Trajectory traj = load_trajectory(path);
  const double eps = cfg.effective_epsilon();
  const auto N_list = cfg.verify_N_list.empty() ? default_N_list() : cfg.verify_N_list;
  const auto eta_grid = cfg.verify_eta_grid.empty()
                            ? std::vector<double>{0.5, 0.2, 0.1, 0.05, 0.01}
                            : cfg.verify_eta_grid;

  CsvTable norms;
  norms.name = "norms";
  norms.header = {"t", "mass", "energy_total", "frequency_scale"};
  for (int i = 0; i < traj.size(); ++i) {
    const auto& u = traj.states[static_cast<size_t>(i)];
    norms.rows.push_back({render_real(traj.times[static_cast<size_t>(i)]),
                          render_real(mass(u)), render_real(energy(u).total),
                          render_real(frequency_scale(u))});
  }

  CsvTable qtab;
  qtab.name = "q_functional";
  qtab.header = {"N", "Q"};
  for (double N : N_list)
    qtab.rows.push_back({render_real(N), render_real(q_functional(traj, N, eps))});

  CsvTable decay;
  decay.name = "s_decay";
  decay.header = {"N", "quantity", "value"};
  const auto table = high_freq_s_decay(traj, N_list, eps);
  for (const auto& row : table.rows)
    decay.rows.push_back(
        {render_real(row.params.at("N")), row.name, render_real(row.value)});

  const auto prof = concentration_profile(traj, eta_grid);
  CsvTable ap;
  ap.name = "almost_periodicity";
  ap.header = {"kind", "key", "value"};
  for (size_t i = 0; i < prof.times.size(); ++i)
    ap.rows.push_back({"N_of_t", render_real(prof.times[i]), render_real(prof.N_of_t[i])});
  for (size_t i = 0; i < prof.eta_grid.size(); ++i)
    ap.rows.push_back(
        {"C_of_eta", render_real(prof.eta_grid[i]), render_real(prof.C_of_eta[i])});

  DiagnosticsReport rep;
  rep.suite = "diagnose";
  rep.config_echo = cfg.echo();
  const double m0 = mass(traj.states[0]);
  rep.add_row(make_row("mass_t0", {}, m0, m0, "finite", std::isfinite(m0)));
  const double sn = s_norm(traj, eps);
  rep.add_row(make_row("s_norm", {}, sn, sn, "finite", std::isfinite(sn)));
  return finish(rep, {norms, qtab, decay, ap}, cfg);
}

int cmd_verify_weights(const CommandContext& ctx) {
  const Config& cfg = ctx.cfg;
  const auto dims =
      cfg.verify_dimensions.empty() ? std::vector<int>{3, 4, 5, 6} : cfg.verify_dimensions;
  const auto epss = cfg.verify_epsilons.empty() ? std::vector<double>{0.001, 0.01, 0.05}
                                                : cfg.verify_epsilons;
  const auto r_grid = logspace(1e-3, 1e3, 601);

  DiagnosticsReport rep;
  rep.suite = "verify-weights";
  rep.config_echo = cfg.echo();
  CsvTable tab;
  tab.name = "weights";
  tab.header = {"n",          "eps",        "floor_bilap", "floor_hessian",
                "floor_delta", "pass",      "first_violation"};
  for (int n : dims) {
    for (double eps : epss) {
      const auto b = verify_pointwise_bounds(eps, n, r_grid);
      tab.rows.push_back({std::to_string(n), render_real(eps), render_real(b.floor_bilap),
                          render_real(b.floor_hessian), render_real(b.floor_delta),
                          b.pass ? "true" : "false", b.first_violation});
      rep.add_row(make_row("pointwise_bounds",
                           {{"n", std::to_string(n)}, {"eps", render_real(eps)}},
                           std::min({b.floor_bilap, b.floor_hessian, b.floor_delta}), 0.0,
                           "scaled weight floors > 0", b.pass, b.first_violation));
    }
  }
  return finish(rep, {tab}, cfg);
}

int cmd_verify_morawetz(const CommandContext& ctx) {
  const Config& cfg = ctx.cfg;
  Trajectory traj;
  if (!ctx.trajectory_path.empty()) traj = load_trajectory(ctx.trajectory_path);
  else traj = run_simulation(cfg);
  const double eps = cfg.effective_epsilon();
  const auto mono = verify_monotonicity(traj, eps);

  CsvTable tab;
  tab.name = "morawetz";
  tab.header = {"t",        "M_a",          "bilap_term", "hessian_term",
                "nonlinear_term", "forcing_term", "fd_residual"};
  for (const auto& row : mono.rows)
    tab.rows.push_back({render_real(row.t), render_real(row.M_a),
                        render_real(row.bilap_term), render_real(row.hessian_term),
                        render_real(row.nonlinear_term), render_real(row.forcing_term),
                        render_real(row.fd_residual)});

  DiagnosticsReport rep;
  rep.suite = "verify-morawetz";
  rep.config_echo = cfg.echo();
  rep.add_row(make_row("virial_fd_match", {}, mono.max_fd_residual, 0.05,
                       "max interior |dM_a/dt - production| / |production| <= 0.05",
                       mono.fd_ok));
  rep.add_row(make_row("cauchy_schwarz", {}, 0.0, 0.0,
                       "|M_a(t)| <= 2 ||u||_2 ||grad u||_2 at all recorded t",
                       mono.cauchy_schwarz_ok));
  rep.add_row(make_row("spacetime_bound", {}, mono.lhs_total, mono.rhs,
                       "weighted spacetime LHS finite; constant recorded",
                       std::isfinite(mono.ratio),
                       "empirical C = " + render_real(mono.ratio)));
  return finish(rep, {tab}, cfg);
}

int cmd_verify_appendix(const CommandContext& ctx) {
  const Config& cfg = ctx.cfg;
  const int n = cfg.dimension;
  const double eps = cfg.effective_epsilon();
  auto grid = build_grid(cfg);
  const int count = cfg.verify_samples;

  DiagnosticsReport rep;
  rep.suite = "verify-appendix";
  rep.config_echo = cfg.echo();
  CsvTable bil = ratio_table("bilinear", RatioReport{});
  bil.rows.clear();
  CsvTable hls = bil;
  hls.name = "hls";
  CsvTable rs = bil;
  rs.name = "radial_sobolev";
  CsvTable unc = bil;
  unc.name = "uncertainty";

  // Admissible parameter points (regime x_small of the bilinear bound, the
  // classical fractional-integration point for the singular kernel, and the
  // weighted-to-Lebesgue embedding preset).
  const double bil_p = 2.0, bil_q = 2.0;
  const double bil_alpha = -0.5 * n + 0.25, bil_beta = -n - bil_alpha;
  const double hls_s = 1.0, hls_p = 2.0 * n / (n + 1.0);
  const double rs_s = 0.5 * (1.0 - eps), rs_alpha = 0.5 * (1.0 + eps), rs_beta = 0.0;
  const double rs_p = 2.0, rs_q = 2.0 * n / (n + 2.0);

  auto fam = random_radial_family(cfg.verify_seed, count, FamilyKind::gaussian_mix, grid);
  for (int i = 0; i < count; ++i) {
    const auto& f = fam.members[static_cast<size_t>(i)];
    const auto& g = fam.members[static_cast<size_t>((i + 1) % count)];
    auto rb = check_bilinear(f, g, bil_p, bil_q, bil_alpha, bil_beta,
                             BilinearRegime::x_small);
    append_ratio_rows(bil, rb, {{"sample", double(i)}});
    rep.add_row(make_row("bilinear_finite", {{"sample", std::to_string(i)}},
                         rb.sup_ratio, 0.0, "ratio finite and >= 0",
                         std::isfinite(rb.sup_ratio) && rb.sup_ratio >= 0.0));
    auto rh = check_hls(f, g, hls_p, hls_p, hls_s, 0.0, 0.0);
    append_ratio_rows(hls, rh, {{"sample", double(i)}});
    rep.add_row(make_row("hls_finite", {{"sample", std::to_string(i)}}, rh.sup_ratio,
                         0.0, "ratio finite, near-diagonal quadrature self-converged",
                         std::isfinite(rh.sup_ratio) && rh.note.empty(), rh.note));
    auto rr = check_radial_sobolev(f, rs_s, rs_alpha, rs_beta, rs_p, rs_q);
    append_ratio_rows(rs, rr, {{"sample", double(i)}});
    rep.add_row(make_row("radial_sobolev_finite", {{"sample", std::to_string(i)}},
                         rr.sup_ratio, 0.0, "ratio finite and >= 0",
                         std::isfinite(rr.sup_ratio)));
  }

  // Dilation invariance across the exact orbit lambda in {1/4, 1, 4}.
  auto orbit = random_radial_family(cfg.verify_seed + 1, count, FamilyKind::dilation_orbit,
                                    grid);
  for (int i = 0; i < count; ++i) {
    const size_t base = 3 * static_cast<size_t>(i);
    double bil_ref = 0.0, hls_ref = 0.0, rs_ref = 0.0;
    for (size_t k = 0; k < 3; ++k) {
      const auto& u = orbit.members[base + k];
      const double lam = orbit.metadata[base + k].at("lambda");
      const double rbil =
          check_bilinear(u, u, bil_p, bil_q, bil_alpha, bil_beta, BilinearRegime::x_small)
              .sup_ratio;
      const double rhls = check_hls(u, u, hls_p, hls_p, hls_s, 0.0, 0.0).sup_ratio;
      const double rrs =
          check_radial_sobolev(u, rs_s, rs_alpha, rs_beta, rs_p, rs_q).sup_ratio;
      if (lam == 1.0) {
        bil_ref = rbil;
        hls_ref = rhls;
        rs_ref = rrs;
      }
      bil.rows.push_back({std::to_string(i), "lambda", render_real(lam), "", "",
                          render_real(rbil)});
      hls.rows.push_back({std::to_string(i), "lambda", render_real(lam), "", "",
                          render_real(rhls)});
      rs.rows.push_back({std::to_string(i), "lambda", render_real(lam), "", "",
                         render_real(rrs)});
    }
    for (size_t k = 0; k < 3; ++k) {
      const auto& u = orbit.members[base + k];
      const double lam = orbit.metadata[base + k].at("lambda");
      if (lam == 1.0) continue;
      const double rbil =
          check_bilinear(u, u, bil_p, bil_q, bil_alpha, bil_beta, BilinearRegime::x_small)
              .sup_ratio;
      const double rhls = check_hls(u, u, hls_p, hls_p, hls_s, 0.0, 0.0).sup_ratio;
      const double rrs =
          check_radial_sobolev(u, rs_s, rs_alpha, rs_beta, rs_p, rs_q).sup_ratio;
      rep.add_row(make_row(
          "bilinear_dilation", {{"sample", std::to_string(i)}, {"lambda", render_real(lam)}},
          std::abs(rbil / bil_ref - 1.0), 1e-6, "dilation residual <= 1e-6",
          std::abs(rbil / bil_ref - 1.0) <= 1e-6));
      rep.add_row(make_row(
          "hls_dilation", {{"sample", std::to_string(i)}, {"lambda", render_real(lam)}},
          std::abs(rhls / hls_ref - 1.0), 1e-4, "dilation residual <= 1e-4",
          std::abs(rhls / hls_ref - 1.0) <= 1e-4));
      rep.add_row(make_row(
          "radial_sobolev_dilation",
          {{"sample", std::to_string(i)}, {"lambda", render_real(lam)}},
          std::abs(rrs / rs_ref - 1.0), 1e-5, "dilation residual <= 1e-5",
          std::abs(rrs / rs_ref - 1.0) <= 1e-5));
    }
  }

  // Uncertainty-principle N-sweep on a clean Gaussian.
  {
    const auto N_list = cfg.verify_N_list.empty() ? default_N_list() : cfg.verify_N_list;
    RadialField gauss = sample_field(grid, [](double r) { return std::exp(-r * r / 2.0); });
    auto sweep = uncertainty_sweep(gauss, 0.5, 2.0, N_list);
    append_ratio_rows(unc, sweep, {});
    double rmin = INFINITY, rmax = 0.0;
    for (const auto& s : sweep.samples) {
      rmin = std::min(rmin, s.ratio);
      rmax = std::max(rmax, s.ratio);
    }
    rep.add_row(make_row("uncertainty_bounded", {}, rmax / rmin, 10.0,
                         "max/min ratio over the N sweep <= 10", rmax / rmin <= 10.0));
    // top-decade slope of log-ratio vs log-N
    const double N_top = *std::max_element(N_list.begin(), N_list.end());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (size_t i = 0; i < N_list.size(); ++i) {
      if (N_list[i] < N_top / 10.0) continue;
      const double x = std::log(N_list[i]), y = std::log(sweep.samples[i].ratio);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++m;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    rep.add_row(make_row("uncertainty_slope", {}, slope, 0.05,
                         "top-decade slope of log-ratio vs log-N within +-0.05",
                         std::abs(slope) <= 0.05));
  }

  return finish(rep, {bil, hls, rs, unc}, cfg);
}

int cmd_verify_strichartz(const CommandContext& ctx) {
  const Config& cfg = ctx.cfg;
  const double eps = cfg.effective_epsilon();
  auto grid = build_grid(cfg);
  const auto T_list =
      cfg.verify_T_list.empty() ? std::vector<double>{1.0, 10.0, 100.0} : cfg.verify_T_list;

  DiagnosticsReport rep;
  rep.suite = "verify-strichartz";
  rep.config_echo = cfg.echo();

  auto sat = strichartz_saturation_sweep(grid, 1.0, 0.5, T_list, eps);
  CsvTable sat_tab;
  sat_tab.name = "strichartz_saturation";
  sat_tab.header = {"T", "lhs", "rhs", "ratio"};
  for (size_t i = 0; i < T_list.size(); ++i)
    sat_tab.rows.push_back({render_real(T_list[i]), render_real(sat.samples[i].lhs),
                            render_real(sat.samples[i].rhs),
                            render_real(sat.samples[i].ratio)});
  if (T_list.size() >= 2) {
    const double r_lo = sat.samples[T_list.size() - 2].ratio;
    const double r_hi = sat.samples[T_list.size() - 1].ratio;
    rep.add_row(make_row("strichartz_saturation", {}, r_hi / r_lo - 1.0, 0.05,
                         "free-flow S-norm ratio growth over the last horizon step < 5%",
                         r_hi / r_lo - 1.0 < 0.05));
  }

  // Forced case: band-limited profiles times a smooth time cutoff.
  CsvTable forced;
  forced.name = "strichartz_forced";
  forced.header = {"sample_id", "param", "value", "lhs", "rhs", "ratio"};
  auto fam = random_radial_family(cfg.verify_seed + 2, cfg.verify_samples,
                                  FamilyKind::band_limited, grid);
  RadialField zero(grid);
  for (int i = 0; i < cfg.verify_samples; ++i) {
    Trajectory G;
    const int M = 33;
    for (int m = 0; m < M; ++m) {
      const double t = m / (M - 1.0);
      G.times.push_back(t);
      const double cut = std::exp(-std::pow((t - 0.5) / 0.18, 2.0));
      RadialField s = fam.members[static_cast<size_t>(i)];
      s.values *= cut;
      G.states.push_back(std::move(s));
    }
    auto r = check_weighted_strichartz(zero, G, G.times, eps);
    append_ratio_rows(forced, r, {{"sample", double(i)}});
    rep.add_row(make_row("strichartz_forced", {{"sample", std::to_string(i)}},
                         r.sup_ratio, 0.0, "ratio finite and >= 0",
                         std::isfinite(r.sup_ratio) && r.sup_ratio >= 0.0));
  }

  // Nonlinear product estimates on short trajectories.
  CsvTable nl;
  nl.name = "nonlinear_estimates";
  nl.header = {"variant", "lhs", "rhs", "ratio"};
  {
    Trajectory gtraj;
    for (int m = 0; m <= 10; ++m) {
      gtraj.times.push_back(0.05 * m);
      gtraj.states.push_back(gaussian_free_state(grid, 1.0, 0.5, 0.05 * m));
    }
    auto basic = check_nonlinear_estimates(gtraj, gtraj, NonlinearVariant::basic, eps);
    nl.rows.push_back({"basic", render_real(basic.samples[0].lhs),
                       render_real(basic.samples[0].rhs),
                       render_real(basic.samples[0].ratio)});
    rep.add_row(make_row("nonlinear_basic", {}, basic.sup_ratio, 0.0,
                         "ratio finite and >= 0", std::isfinite(basic.sup_ratio)));

    auto band = random_radial_family(cfg.verify_seed + 3, 2, FamilyKind::band_limited, grid);
    Trajectory u_lo, v_hi;
    for (int m = 0; m <= 8; ++m) {
      const double t = 0.05 * m;
      u_lo.times.push_back(t);
      v_hi.times.push_back(t);
      u_lo.states.push_back(free_propagate(band.members[0], t));
      v_hi.states.push_back(free_propagate(band.members[1], t));
    }
    for (auto variant : {NonlinearVariant::refined_1, NonlinearVariant::refined_2}) {
      auto r = check_nonlinear_estimates(u_lo, v_hi, variant, eps);
      const std::string name =
          variant == NonlinearVariant::refined_1 ? "refined_1" : "refined_2";
      nl.rows.push_back({name, render_real(r.samples[0].lhs),
                         render_real(r.samples[0].rhs), render_real(r.samples[0].ratio)});
      rep.add_row(make_row("nonlinear_" + name, {}, r.sup_ratio, 0.0,
                           "ratio finite and >= 0", std::isfinite(r.sup_ratio)));
    }
  }

  return finish(rep, {sat_tab, forced, nl}, cfg);
}

int cmd_sweep(const CommandContext& ctx) {
  const Config& cfg = ctx.cfg;
  const auto dims =
      cfg.sweep_dimensions.empty() ? std::vector<int>{3, 4, 5} : cfg.sweep_dimensions;
  const auto epss =
      cfg.sweep_epsilons.empty() ? std::vector<double>{0.01, 0.05} : cfg.sweep_epsilons;

  struct Entry {
    int n;
    double eps;
    double floor_min = 0.0;
    double mass_drift = 0.0;
    bool pass = false;
  };
  std::vector<Entry> entries;
  for (int n : dims)
    for (double e : epss) entries.push_back({n, e});

  const auto r_grid = logspace(1e-3, 1e3, 301);
  auto work = [&](Entry& ent) {
    const auto b = verify_pointwise_bounds(ent.eps, ent.n, r_grid);
    ent.floor_min = std::min({b.floor_bilap, b.floor_hessian, b.floor_delta});
    Config c = cfg;
    c.dimension = ent.n;
    c.epsilon = ent.eps;
    c.epsilon_is_paper_preset = false;
    c.solver_t_end = std::min(cfg.solver_t_end, 0.05);
    Trajectory traj = run_simulation(c);
    ent.mass_drift = traj.provenance.mass_drift;
    ent.pass = b.pass && ent.mass_drift <= cfg.solver_mass_tol;
  };

  const int workers = std::max(1, cfg.workers);
  std::atomic<size_t> next{0};
  std::vector<std::future<void>> futs;
  for (int w = 0; w < workers; ++w)
    futs.push_back(std::async(std::launch::async, [&]() {
      for (size_t i = next.fetch_add(1); i < entries.size(); i = next.fetch_add(1))
        work(entries[i]);
    }));
  for (auto& f : futs) f.get();

  DiagnosticsReport rep;
  rep.suite = "sweep";
  rep.config_echo = cfg.echo();
  CsvTable tab;
  tab.name = "sweep";
  tab.header = {"n", "eps", "floor_min", "mass_drift", "pass"};
  for (const auto& ent : entries) {
    tab.rows.push_back({std::to_string(ent.n), render_real(ent.eps),
                        render_real(ent.floor_min), render_real(ent.mass_drift),
                        ent.pass ? "true" : "false"});
    rep.add_row(make_row("sweep_entry",
                         {{"n", std::to_string(ent.n)}, {"eps", render_real(ent.eps)}},
                         ent.mass_drift, cfg.solver_mass_tol,
                         "weight floors > 0 and mass drift <= tolerance", ent.pass));
  }
  return finish(rep, {tab}, cfg);
}

}  // namespace

int run_command(const std::vector<std::string>& argv) {
  CLI::App app{"radially symmetric mass-critical NLS simulator and inequality lab"};
  app.require_subcommand(1);

  std::string config_path, out_dir, trajectory_path;
  std::vector<std::string> overrides;
  long long seed = -1;
  int workers = 0;
  app.add_option("--config", config_path, "configuration file (block.key = value lines)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "verification seed override");
  app.add_option("--workers", workers, "parallel worker count");
  app.add_option("--set", overrides, "config override, e.g. --set grid.J=256");
  app.add_option("--trajectory", trajectory_path, "trajectory checkpoint path");

  const std::vector<std::string> names = {"simulate",        "diagnose",
                                          "verify-weights",  "verify-morawetz",
                                          "verify-appendix", "verify-strichartz",
                                          "sweep"};
  for (const auto& n : names) app.add_subcommand(n)->fallthrough();

  // CLI11 parses reversed argv without the program name.
  std::vector<std::string> rev(argv.rbegin(), argv.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    (void)app.exit(e, os, os);
    std::cerr << os.str();
    return 2;
  }

  try {
    CommandContext ctx;
    if (!config_path.empty()) ctx.cfg = load_config(config_path);
    for (const auto& ov : overrides) {
      const auto eq = ov.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("--set expects key=value, got '" + ov + "'");
      apply_config_entry(ctx.cfg, ov.substr(0, eq), ov.substr(eq + 1), "--set");
    }
    if (!out_dir.empty()) ctx.cfg.output_dir = out_dir;
    if (seed >= 0) ctx.cfg.verify_seed = static_cast<std::uint64_t>(seed);
    if (workers > 0) ctx.cfg.workers = workers;
    validate_config(ctx.cfg);
    ctx.trajectory_path = trajectory_path;

    const std::string cmd = app.get_subcommands().front()->get_name();
    const auto t0 = std::chrono::steady_clock::now();
    int rc = 2;
    if (cmd == "simulate") rc = cmd_simulate(ctx);
    else if (cmd == "diagnose") rc = cmd_diagnose(ctx);
    else if (cmd == "verify-weights") rc = cmd_verify_weights(ctx);
    else if (cmd == "verify-morawetz") rc = cmd_verify_morawetz(ctx);
    else if (cmd == "verify-appendix") rc = cmd_verify_appendix(ctx);
    else if (cmd == "verify-strichartz") rc = cmd_verify_strichartz(ctx);
    else if (cmd == "sweep") rc = cmd_sweep(ctx);
    const auto t1 = std::chrono::steady_clock::now();
    std::cerr << cmd << " finished in "
              << std::chrono::duration<double>(t1 - t0).count() << " s, exit " << rc
              << "\n";
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace nlsim
