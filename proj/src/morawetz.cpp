#include "nlsim/morawetz.hpp"

#include <cmath>

namespace nlsim {

WeightEvaluation weight_eval(double r, double eps, int n) {
  if (r < 0) throw std::invalid_argument("weight_eval: r must be >= 0");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("weight_eval: eps must be in (0,1)");
  const double br = std::sqrt(1.0 + r * r);  // <r>
  const double e = eps;
  auto brp = [br](double p) { return std::pow(br, -p); };

  WeightEvaluation w;
  w.r = r;
  w.a = br - e * std::pow(br, 1.0 - e);
  // A and B from a_jk = A delta_jk + B x_j x_k
  const double A = brp(1) - e * (1 - e) * brp(1 + e);
  const double B = -brp(3) + e * (1 - e) * (1 + e) * brp(3 + e);
  w.a_prime = r * A;
  w.a_double_prime = A + r * r * B;
  w.tangential_eigenvalue = A;
  w.delta_a = n * A + r * r * B;
  w.neg_bilap_a = (n - 1.0) * (n - 3.0) * brp(3)
      - e * (1 - e) * (1 + e) * (n - 1 - e) * (n - 3 - e) * brp(3 + e)
      + 6.0 * (n - 3.0) * brp(5)
      - 2.0 * e * (1 - e) * (1 + e) * (3 + e) * (n - 3 - e) * brp(5 + e)
      + 15.0 * brp(7)
      - e * (1 - e) * (1 + e) * (3 + e) * (5 + e) * brp(7 + e);
  return w;
}

PointwiseBoundsReport verify_pointwise_bounds(double eps, int n,
                                              const std::vector<double>& r_grid) {
  PointwiseBoundsReport rep;
  rep.floor_bilap = rep.floor_hessian = rep.floor_delta = INFINITY;
  // Quantitative floors: the implicit constant in -LapLap a >= c_eps <r>^{-3-eps}
  // degenerates like eps^2 as eps -> 0 (for n = 3 the large-r coefficient is
  // eps^2(1-eps^2)(2-eps) ~ 2 eps^2), so the harness demands at least eps^2
  // there, and eps^2/2 for the Hessian (true floor eps^2(1-eps)) and Lap a
  // (true floor ~ n-1) quantities.  Large eps fails this requirement, which
  // reproduces the "eps sufficiently small" smallness constraint.
  const double req_bilap = eps * eps;
  const double req_other = 0.5 * eps * eps;
  for (double r : r_grid) {
    const auto w = weight_eval(r, eps, n);
    const double br = std::sqrt(1.0 + r * r);
    PointwiseBoundsReport::Row row;
    row.r = r;
    row.bilap_scaled = w.neg_bilap_a * std::pow(br, 3.0 + eps);
    row.hessian_scaled = std::min(w.a_double_prime, w.tangential_eigenvalue) * std::pow(br, 1.0 + eps);
    row.delta_scaled = w.delta_a * std::pow(br, 1.0 + eps);
    rep.floor_bilap = std::min(rep.floor_bilap, row.bilap_scaled);
    rep.floor_hessian = std::min(rep.floor_hessian, row.hessian_scaled);
    rep.floor_delta = std::min(rep.floor_delta, row.delta_scaled);
    rep.rows.push_back(row);
  }
  // Violations are reported in the order the three bounds are stated, each
  // with the smallest violating radius.
  auto locate = [&](auto member, double req) -> double {
    for (const auto& row : rep.rows)
      if (row.*member < req) return row.r;
    return -1.0;
  };
  if (rep.floor_bilap < req_bilap)
    rep.first_violation =
        "-LapLap a at r=" + std::to_string(locate(&PointwiseBoundsReport::Row::bilap_scaled, req_bilap));
  else if (rep.floor_hessian < req_other)
    rep.first_violation = "hessian min(a'',A) at r=" +
        std::to_string(locate(&PointwiseBoundsReport::Row::hessian_scaled, req_other));
  else if (rep.floor_delta < req_other)
    rep.first_violation =
        "Lap a at r=" + std::to_string(locate(&PointwiseBoundsReport::Row::delta_scaled, req_other));
  rep.pass = rep.first_violation.empty();
  return rep;
}

double morawetz_functional(const RadialField& f, double eps) {
  const auto& g = *f.grid;
  RadialField df = gradient_radial(f);
  double acc = 0.0;
  for (int j = 0; j < f.values.size(); ++j) {
    const auto w = weight_eval(g.nodes[j], eps, g.dimension);
    acc += g.weights[j] * w.a_prime * std::imag(std::conj(f.values[j]) * df.values[j]);
  }
  return 2.0 * g.surface_area * acc;
}

ProductionBreakdown morawetz_production(const RadialField& f, double eps,
                                        const RadialField* G) {
  const auto& g = *f.grid;
  const int n = g.dimension;
  const double pcrit = 2.0 * (n + 2.0) / n;
  RadialField df = gradient_radial(f);
  RadialField Fu = nonlinearity(f);
  RadialField dFu = gradient_radial(Fu);
  RadialField dG;
  if (G) dG = gradient_radial(*G);

  ProductionBreakdown out;
  for (int j = 0; j < f.values.size(); ++j) {
    const auto w = weight_eval(g.nodes[j], eps, n);
    const double wq = g.weights[j];
    const complexd u = f.values[j], du = df.values[j];
    out.bilap_term += wq * w.neg_bilap_a * std::norm(u);
    out.hessian_term += wq * 4.0 * w.a_double_prime * std::norm(du);
    out.nonlinear_term += wq * (4.0 / (n + 2.0)) * w.delta_a * std::pow(std::abs(u), pcrit);
    // bracket route: 2 a' {F(u), u}_p . x_hat = 2 a' Re(F(u) d_r conj(u) - u d_r conj(F(u)))
    out.nonlinear_term_bracket +=
        wq * 2.0 * w.a_prime *
        std::real(Fu.values[j] * std::conj(du) - u * std::conj(dFu.values[j]));
    if (G) {
      const complexd Gv = G->values[j];
      out.forcing_term += wq * 2.0 * w.a_prime *
                          std::real(Gv * std::conj(du) - u * std::conj(dG.values[j]));
      const double br = std::sqrt(1.0 + g.nodes[j] * g.nodes[j]);
      out.forcing_majorant += wq * (std::abs(Gv) * std::abs(du) + std::abs(Gv) * std::abs(u) / br);
    }
  }
  const double sa = g.surface_area;
  out.bilap_term *= sa;
  out.hessian_term *= sa;
  out.nonlinear_term *= sa;
  out.nonlinear_term_bracket *= sa;
  out.forcing_term *= sa;
  out.forcing_majorant *= sa;
  out.total = out.bilap_term + out.hessian_term + out.nonlinear_term + out.forcing_term;
  return out;
}

MonotonicityReport verify_monotonicity(const Trajectory& traj, double eps,
                                       const Trajectory* G_traj) {
  MonotonicityReport rep;
  const int M = traj.size();
  if (M == 0) {
    rep.cauchy_schwarz_ok = rep.fd_ok = rep.pass = true;
    return rep;
  }
  if (G_traj && G_traj->size() != M)
    throw std::invalid_argument("verify_monotonicity: G trajectory length mismatch");

  const int n = traj.states[0].grid->dimension;
  const double pcrit = 2.0 * (n + 2.0) / n;
  auto tw = time_quadrature_weights(traj.times);

  std::vector<double> Ma(static_cast<size_t>(M));
  rep.cauchy_schwarz_ok = true;
  double sup_rhs = 0.0, forcing_integral = 0.0;
  for (int i = 0; i < M; ++i) {
    const auto& u = traj.states[i];
    const RadialField* G = G_traj ? &G_traj->states[i] : nullptr;
    const auto prod = morawetz_production(u, eps, G);
    RadialField du = gradient_radial(u);
    Ma[static_cast<size_t>(i)] = morawetz_functional(u, eps);

    MonotonicityReport::Row row;
    row.t = traj.times[i];
    row.M_a = Ma[static_cast<size_t>(i)];
    row.bilap_term = prod.bilap_term;
    row.hessian_term = prod.hessian_term;
    row.nonlinear_term = prod.nonlinear_term;
    row.forcing_term = prod.forcing_term;
    rep.rows.push_back(row);

    const double l2 = lp_norm(u, 2.0), dl2 = lp_norm(du, 2.0);
    sup_rhs = std::max(sup_rhs, l2 * dl2);
    if (std::abs(row.M_a) > 2.0 * l2 * dl2 + 1e-10) rep.cauchy_schwarz_ok = false;

    const double w = tw[static_cast<size_t>(i)];
    rep.lhs_mass += w * std::pow(bracket_lp_norm(u, 2.0, -0.5 * (3.0 + eps)), 2);
    rep.lhs_potential += w * std::pow(bracket_lp_norm(u, pcrit, -1.0 / pcrit), pcrit);
    rep.lhs_gradient += w * std::pow(bracket_lp_norm(du, 2.0, -0.5 * (1.0 + eps)), 2);
    if (G) forcing_integral += w * prod.forcing_majorant;
  }
  rep.lhs_total = rep.lhs_mass + rep.lhs_potential + rep.lhs_gradient;
  rep.rhs = sup_rhs + forcing_integral;
  rep.ratio = rep.rhs > 0 ? rep.lhs_total / rep.rhs : 0.0;

  // centered-difference check of dM_a/dt against the production formula
  rep.max_fd_residual = 0.0;
  for (int i = 1; i + 1 < M; ++i) {
    const double fd = (Ma[static_cast<size_t>(i + 1)] - Ma[static_cast<size_t>(i - 1)]) /
                      (traj.times[i + 1] - traj.times[i - 1]);
    const double prod = rep.rows[static_cast<size_t>(i)].bilap_term +
                        rep.rows[static_cast<size_t>(i)].hessian_term +
                        rep.rows[static_cast<size_t>(i)].nonlinear_term +
                        rep.rows[static_cast<size_t>(i)].forcing_term;
    const double scale = std::max(std::abs(prod), 1e-300);
    const double resid = std::abs(fd - prod) / scale;
    rep.rows[static_cast<size_t>(i)].fd_residual = resid;
    rep.max_fd_residual = std::max(rep.max_fd_residual, resid);
  }
  rep.fd_ok = M < 3 || rep.max_fd_residual <= 0.05;
  rep.pass = rep.fd_ok && rep.cauchy_schwarz_ok && std::isfinite(rep.ratio);
  return rep;
}

}  // namespace nlsim
