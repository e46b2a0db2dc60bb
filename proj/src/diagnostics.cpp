#include "nlsim/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace nlsim {

double mass(const RadialField& f) {
  double acc = 0.0;
  for (int j = 0; j < f.values.size(); ++j)
    acc += f.grid->weights[j] * std::norm(f.values[j]);
  return f.grid->surface_area * acc;
}

EnergyBreakdown energy(const RadialField& f) {
  EnergyBreakdown e;
  const int n = f.grid->dimension;
  RadialField du = gradient_radial(f);
  e.kinetic = 0.5 * std::pow(lp_norm(du, 2.0), 2);
  const double p = 2.0 * (n + 2.0) / n;
  e.potential = n / (2.0 * (n + 2.0)) * std::pow(lp_norm(f, p), p);
  e.total = e.kinetic + e.potential;
  return e;
}

std::vector<double> time_quadrature_weights(const std::vector<double>& times) {
  const int M = static_cast<int>(times.size());
  for (int i = 1; i < M; ++i) {
    if (!(times[static_cast<size_t>(i)] > times[static_cast<size_t>(i - 1)]))
      throw std::invalid_argument("time_quadrature_weights: times must be strictly increasing");
  }
  std::vector<double> w(static_cast<size_t>(M), 0.0);
  if (M == 1) {
    w[0] = 1.0;  // single snapshot: unit time weight
    return w;
  }
  if (M < 2) return w;
  for (int i = 0; i < M; ++i) {
    if (i == 0)
      w[0] = 0.5 * (times[1] - times[0]);
    else if (i == M - 1)
      w[i] = 0.5 * (times[i] - times[i - 1]);
    else
      w[i] = 0.5 * (times[i + 1] - times[i - 1]);
  }
  return w;
}

Trajectory apply_multiplier(const Trajectory& traj, const MultiplierSymbol& m) {
  Trajectory out;
  out.times = traj.times;
  out.provenance = traj.provenance;
  out.states.reserve(traj.states.size());
  for (const auto& st : traj.states) out.states.push_back(apply_multiplier(st, m));
  return out;
}

double spacetime_norm(const Trajectory& traj, double q, double r) {
  if (!(q >= 1.0) || !(r >= 1.0))
    throw std::invalid_argument("spacetime_norm: q, r must be in [1, inf]");
  if (traj.size() == 0) return 0.0;
  if (std::isinf(q)) {
    double m = 0.0;
    for (const auto& st : traj.states) m = std::max(m, lp_norm(st, r));
    return m;
  }
  auto w = time_quadrature_weights(traj.times);
  double acc = 0.0;
  for (int i = 0; i < traj.size(); ++i) acc += w[static_cast<size_t>(i)] * std::pow(lp_norm(traj.states[i], r), q);
  return std::pow(acc, 1.0 / q);
}

double s_norm(const Trajectory& traj, double eps) {
  if (traj.size() == 0) return 0.0;
  auto w = time_quadrature_weights(traj.times);
  double acc = 0.0, sup_l2 = 0.0;
  for (int i = 0; i < traj.size(); ++i) {
    RadialField g = fractional_derivative(traj.states[i], 0.5 * (1.0 - eps));
    const double slice = weighted_lp_norm(g, 2.0, -0.5 * (1.0 + eps));
    acc += w[static_cast<size_t>(i)] * slice * slice;
    sup_l2 = std::max(sup_l2, lp_norm(traj.states[i], 2.0));
  }
  return std::sqrt(acc) + sup_l2;
}

double n_norm(const Trajectory& G_traj, double eps) {
  if (G_traj.size() == 0) return 0.0;
  auto w = time_quadrature_weights(G_traj.times);
  double acc = 0.0;
  for (int i = 0; i < G_traj.size(); ++i) {
    RadialField g;
    try {
      g = fractional_derivative(G_traj.states[i], -0.5 * (1.0 - eps));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("n_norm: time slice " + std::to_string(i) + " (t=" +
                                  std::to_string(G_traj.times[i]) + "): " + e.what());
    }
    const double slice = weighted_lp_norm(g, 2.0, 0.5 * (1.0 + eps));
    acc += w[static_cast<size_t>(i)] * slice * slice;
  }
  return std::sqrt(acc);
}

double q_functional(const Trajectory& traj, double N, double eps) {
  if (!(N > 0)) throw std::invalid_argument("q_functional: N must be positive");
  if (traj.size() == 0) return 0.0;
  auto w = time_quadrature_weights(traj.times);
  auto lo = MultiplierSymbol::dyadic_lt(N);
  double acc = 0.0;
  for (int i = 0; i < traj.size(); ++i) {
    RadialField du = gradient_radial(apply_multiplier(traj.states[i], lo));
    const double slice = weighted_lp_norm(du, 2.0, -0.5 * (1.0 + eps));
    acc += w[static_cast<size_t>(i)] * slice * slice;
  }
  return std::pow(N, -(1.0 + eps)) * acc;
}

namespace {

// Radius below which `fraction` of the field's quadratic mass lies,
// linearly interpolated in the cumulative sum between nodes.
double mass_quantile_radius(const Eigen::VectorXd& nodes, const Eigen::VectorXd& weights,
                            const Eigen::VectorXcd& values, double fraction) {
  const int J = static_cast<int>(nodes.size());
  double total = 0.0;
  for (int j = 0; j < J; ++j) total += weights[j] * std::norm(values[j]);
  if (total <= 0.0) throw std::invalid_argument("mass quantile of a zero field");
  const double target = fraction * total;
  double cum = 0.0;
  for (int j = 0; j < J; ++j) {
    const double inc = weights[j] * std::norm(values[j]);
    if (cum + inc >= target) {
      const double lo = j == 0 ? 0.0 : nodes[j - 1];
      const double frac = inc > 0 ? (target - cum) / inc : 0.0;
      return lo + frac * (nodes[j] - lo);
    }
    cum += inc;
  }
  return nodes[J - 1];
}

}  // namespace

double frequency_scale(const RadialField& f) {
  if (mass(f) <= 0.0) throw std::invalid_argument("frequency_scale: zero field");
  SpectralField F = hankel_forward(f);
  return mass_quantile_radius(F.grid->nodes, F.grid->weights, F.values, 0.5);
}

AlmostPeriodicityProfile concentration_profile(const Trajectory& traj,
                                               const std::vector<double>& eta_grid) {
  AlmostPeriodicityProfile prof;
  prof.times = traj.times;
  prof.eta_grid = eta_grid;
  prof.C_of_eta.assign(eta_grid.size(), 0.0);
  for (int i = 0; i < traj.size(); ++i) {
    const auto& u = traj.states[i];
    const double Nt = frequency_scale(u);
    prof.N_of_t.push_back(Nt);
    SpectralField F = hankel_forward(u);
    for (size_t e = 0; e < eta_grid.size(); ++e) {
      const double eta = eta_grid[e];
      // smallest radius with relative tail mass <= eta, in space and frequency
      const double rx = mass_quantile_radius(u.grid->nodes, u.grid->weights, u.values, 1.0 - eta);
      const double rxi = mass_quantile_radius(F.grid->nodes, F.grid->weights, F.values, 1.0 - eta);
      prof.C_of_eta[e] = std::max(prof.C_of_eta[e], std::max(rx * Nt, rxi / Nt));
    }
  }
  return prof;
}

RadialField commutator(const RadialField& f, double N) {
  auto lo = MultiplierSymbol::dyadic_lt(N);
  RadialField a = apply_multiplier(nonlinearity(f), lo);
  RadialField b = nonlinearity(apply_multiplier(f, lo));
  RadialField out(f.grid);
  out.values = a.values - b.values;
  return out;
}

NormTable high_freq_s_decay(const Trajectory& traj, const std::vector<double>& N_list,
                            double eps) {
  NormTable table;
  for (double N : N_list) {
    Trajectory hi = apply_multiplier(traj, MultiplierSymbol::dyadic_ge(N));
    table.add("s_norm_high", {{"N", N}}, s_norm(hi, eps));
    // |grad|^{-(1-eps)/2} grad u_{<N} as the single symbol rho^{(1+eps)/2} P_{<N}
    auto sym = MultiplierSymbol::frac_power(0.5 * (1.0 + eps)).times(MultiplierSymbol::dyadic_lt(N));
    Trajectory lo = apply_multiplier(traj, sym);
    table.add("s_norm_low_scaled", {{"N", N}},
              std::pow(N, -0.5 * (1.0 + eps)) * s_norm(lo, eps));
    table.add("linf_l2_high", {{"N", N}}, spacetime_norm(hi, INFINITY, 2.0));
  }
  return table;
}

}  // namespace nlsim
