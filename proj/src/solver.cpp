#include "nlsim/solver.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "nlsim/diagnostics.hpp"

namespace nlsim {

const RadialField& Trajectory::at_time(double t) const {
  const double tol = 1e-9 * (1.0 + std::abs(times.back()));
  for (int i = 0; i < size(); ++i)
    if (std::abs(times[i] - t) <= tol) return states[i];
  throw std::invalid_argument("Trajectory::at_time: t=" + std::to_string(t) + " not recorded");
}

RadialField nonlinearity(const RadialField& f) {
  const double q = 4.0 / f.grid->dimension;
  return map_field(f, [q](double, complexd u) { return std::pow(std::abs(u), q) * u; });
}

namespace {

RadialField nonlinear_phase(const RadialField& f, double dt) {
  const double q = 4.0 / f.grid->dimension;
  return map_field(f, [q, dt](double, complexd u) {
    return u * std::exp(complexd(0.0, -dt * std::pow(std::abs(u), q)));
  });
}

}  // namespace

RadialField strang_step(const RadialField& f, double dt, const SolverConfig& cfg,
                        bool* aliasing_warn) {
  RadialField u = f;
  if (cfg.scheme == SplitScheme::lie) {
    if (cfg.nonlinear) u = nonlinear_phase(u, dt);
    u = free_propagate(u, dt, aliasing_warn);
  } else {
    if (cfg.nonlinear) u = nonlinear_phase(u, 0.5 * dt);
    u = free_propagate(u, dt, aliasing_warn);
    if (cfg.nonlinear) u = nonlinear_phase(u, 0.5 * dt);
  }
  if (cfg.dealias) {
    const double rho_max = HankelPlan::get(f.grid)->dual()->max_radius;
    u = apply_multiplier(u, MultiplierSymbol::custom([rho_max](double rho) {
      return complexd(rho <= 2.0 / 3.0 * rho_max ? 1.0 : 0.0, 0.0);
    }));
  }
  return u;
}

Trajectory evolve(const RadialField& u0, const SolverConfig& cfg,
                  const std::string& initial_data_label) {
  if (!(cfg.dt > 0)) throw std::invalid_argument("evolve: dt must be positive");
  if (cfg.record_stride < 1) throw std::invalid_argument("evolve: record_stride must be >= 1");

  Trajectory traj;
  traj.provenance.config = cfg;
  traj.provenance.initial_data = initial_data_label;
  traj.provenance.boundary_decay_warned =
      std::abs(u0.values[u0.values.size() - 1]) > 1e-12 * (1.0 + lp_norm(u0, INFINITY));

  const int steps = static_cast<int>(std::llround(cfg.t_end / cfg.dt));
  const double m0 = mass(u0);
  const double e0 = energy(u0).total;

  RadialField u = u0;
  traj.times.push_back(0.0);
  traj.states.push_back(u);
  for (int s = 1; s <= steps; ++s) {
    bool warn = false;
    u = strang_step(u, cfg.dt, cfg, &warn);
    traj.provenance.aliasing_warned |= warn;
    if (m0 > 0 && boundary_mass_fraction(u) > cfg.boundary_mass_tol)
      throw std::runtime_error("evolve: boundary mass fraction exceeded " +
                               std::to_string(cfg.boundary_mass_tol) + " at t=" +
                               std::to_string(s * cfg.dt) + " (domain truncation breach)");
    if (s % cfg.record_stride == 0 || s == steps) {
      traj.times.push_back(s * cfg.dt);
      traj.states.push_back(u);
      if (m0 > 0)
        traj.provenance.mass_drift =
            std::max(traj.provenance.mass_drift, std::abs(mass(u) - m0) / m0);
      if (e0 > 0)
        traj.provenance.energy_drift =
            std::max(traj.provenance.energy_drift, std::abs(energy(u).total - e0) / e0);
    }
  }
  return traj;
}

double duhamel_residual(const Trajectory& traj, double t0, double t1) {
  if (!(t1 >= t0)) throw std::invalid_argument("duhamel_residual: t1 < t0");
  if (t1 == t0) return 0.0;

  int i0 = -1, i1 = -1;
  const double tol = 1e-9 * (1.0 + std::abs(traj.times.back()));
  for (int i = 0; i < traj.size(); ++i) {
    if (std::abs(traj.times[i] - t0) <= tol) i0 = i;
    if (std::abs(traj.times[i] - t1) <= tol) i1 = i;
  }
  if (i0 < 0 || i1 < 0) throw std::invalid_argument("duhamel_residual: endpoints not recorded");

  auto plan = HankelPlan::get(traj.states[0].grid);
  const auto& rho = plan->dual()->nodes;
  const int J = plan->dual()->node_count();

  // Everything in the spectral representation: one forward transform per
  // recorded state, exact free flow per mode.
  Eigen::VectorXcd target = plan->forward(traj.states[i1]).values;
  Eigen::VectorXcd free_part = plan->forward(traj.states[i0]).values;
  for (int k = 0; k < J; ++k)
    free_part[k] *= std::exp(complexd(0.0, -(t1 - t0) * rho[k] * rho[k]));

  Eigen::VectorXcd integral = Eigen::VectorXcd::Zero(J);
  const bool nl = traj.provenance.config.nonlinear;
  for (int i = i0; i <= i1; ++i) {
    const double s = traj.times[i];
    double w;  // trapezoid on the recorded (possibly nonuniform) times
    if (i == i0)
      w = 0.5 * (traj.times[i0 + 1] - traj.times[i0]);
    else if (i == i1)
      w = 0.5 * (traj.times[i1] - traj.times[i1 - 1]);
    else
      w = 0.5 * (traj.times[i + 1] - traj.times[i - 1]);
    if (!nl) continue;
    Eigen::VectorXcd Fs = plan->forward(nonlinearity(traj.states[i])).values;
    for (int k = 0; k < J; ++k)
      integral[k] += w * Fs[k] * std::exp(complexd(0.0, -(t1 - s) * rho[k] * rho[k]));
  }

  SpectralField resid(plan->dual());
  resid.values = target - free_part + complexd(0.0, 1.0) * integral;
  SpectralField tgt(plan->dual());
  tgt.values = target;
  const double denom = spectral_l2_norm(tgt);
  return denom > 0 ? spectral_l2_norm(resid) / denom : spectral_l2_norm(resid);
}

Trajectory rescale_trajectory(const Trajectory& traj, double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("rescale_trajectory: lambda must be positive");
  Trajectory out;
  out.provenance = traj.provenance;
  out.provenance.config.dt *= lambda * lambda;
  out.provenance.config.t_end *= lambda * lambda;
  out.provenance.initial_data += " [rescaled lambda=" + std::to_string(lambda) + "]";
  for (int i = 0; i < traj.size(); ++i) {
    RadialField g = dilate_field(traj.states[i], lambda);
    if (boundary_mass_fraction(g) > 1e-6)
      throw std::invalid_argument("rescale_trajectory: lambda=" + std::to_string(lambda) +
                                  " pushes support outside the grid");
    out.times.push_back(lambda * lambda * traj.times[i]);
    out.states.push_back(std::move(g));
  }
  return out;
}

namespace {
constexpr char kMagic[8] = {'N', 'L', 'S', 'T', 'R', 'J', '0', '1'};
}

void save_trajectory(const Trajectory& traj, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_trajectory: cannot open " + path);
  const auto& g = *traj.states.at(0).grid;
  os.write(kMagic, 8);
  auto put_i32 = [&](int32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); };
  auto put_f64 = [&](double v) { os.write(reinterpret_cast<const char*>(&v), 8); };
  put_i32(g.dimension);
  put_f64(g.max_radius);
  put_i32(g.node_count());
  put_i32(static_cast<int32_t>(g.scheme));
  put_i32(traj.size());
  put_f64(traj.provenance.mass_drift);
  put_f64(traj.provenance.energy_drift);
  const auto& label = traj.provenance.initial_data;
  put_i32(static_cast<int32_t>(label.size()));
  os.write(label.data(), static_cast<std::streamsize>(label.size()));
  for (double t : traj.times) put_f64(t);
  for (const auto& st : traj.states)
    os.write(reinterpret_cast<const char*>(st.values.data()),
             static_cast<std::streamsize>(st.values.size() * sizeof(complexd)));
  if (!os) throw std::runtime_error("save_trajectory: write failed for " + path);
}

Trajectory load_trajectory(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_trajectory: cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("load_trajectory: bad magic in " + path);
  auto get_i32 = [&] { int32_t v; is.read(reinterpret_cast<char*>(&v), 4); return v; };
  auto get_f64 = [&] { double v; is.read(reinterpret_cast<char*>(&v), 8); return v; };
  const int n = get_i32();
  const double R = get_f64();
  const int J = get_i32();
  const auto scheme = static_cast<GridScheme>(get_i32());
  const int M = get_i32();
  Trajectory traj;
  traj.provenance.mass_drift = get_f64();
  traj.provenance.energy_drift = get_f64();
  const int L = get_i32();
  traj.provenance.initial_data.resize(static_cast<size_t>(L));
  is.read(traj.provenance.initial_data.data(), L);
  auto grid = build_grid(n, R, J, scheme);
  traj.times.resize(static_cast<size_t>(M));
  for (int i = 0; i < M; ++i) traj.times[static_cast<size_t>(i)] = get_f64();
  for (int i = 0; i < M; ++i) {
    RadialField f(grid);
    is.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(J * sizeof(complexd)));
    traj.states.push_back(std::move(f));
  }
  if (!is) throw std::runtime_error("load_trajectory: truncated file " + path);
  return traj;
}

}  // namespace nlsim
