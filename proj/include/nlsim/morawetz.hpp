#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlsim/diagnostics.hpp"

namespace nlsim {

/// The spatial weight a(x) = <x> - eps <x>^{1-eps} and its exact derivative
/// expressions.  The Hessian a_jk = A delta_jk + B x_j x_k has radial
/// eigenvalue a'' = A + B r^2 and tangential eigenvalue A.
struct WeightEvaluation {
  double r = 0.0;
  double a = 0.0;
  double a_prime = 0.0;
  double a_double_prime = 0.0;
  double delta_a = 0.0;
  double neg_bilap_a = 0.0;
  double tangential_eigenvalue = 0.0;  // A(r)
};

WeightEvaluation weight_eval(double r, double eps, int n);

struct PointwiseBoundsReport {
  struct Row {
    double r = 0.0;
    double bilap_scaled = 0.0;    // (-Lap Lap a) <r>^{3+eps}
    double hessian_scaled = 0.0;  // min(a'', A) <r>^{1+eps}
    double delta_scaled = 0.0;    // (Lap a) <r>^{1+eps}
  };
  std::vector<Row> rows;
  double floor_bilap = 0.0, floor_hessian = 0.0, floor_delta = 0.0;
  bool pass = false;
  std::string first_violation;  // empty on pass
};

/// Eq-level positivity of the three virial ingredients over r_grid.
PointwiseBoundsReport verify_pointwise_bounds(double eps, int n,
                                              const std::vector<double>& r_grid);

/// M_a = 2 int grad a . Im(conj(f) grad f) dx = 2 int a'(r) Im(conj(f) d_r f) dx.
double morawetz_functional(const RadialField& f, double eps);

struct ProductionBreakdown {
  double bilap_term = 0.0;      // int (-Lap Lap a) |phi|^2
  double hessian_term = 0.0;    // 4 int a'' |d_r phi|^2
  double nonlinear_term = 0.0;  // (4/(n+2)) int (Lap a) |phi|^{2(n+2)/n}
  double forcing_term = 0.0;    // 2 int grad a {G, phi}_p (0 without G)
  double total = 0.0;           // sum of the four

  // cross-checks
  double nonlinear_term_bracket = 0.0;  // 2 int grad a {F(phi), phi}_p, by quadrature
  double forcing_majorant = 0.0;        // int |G||grad phi| + |G||phi|/<x>
};

ProductionBreakdown morawetz_production(const RadialField& f, double eps,
                                        const RadialField* G = nullptr);

struct MonotonicityReport {
  struct Row {
    double t = 0.0;
    double M_a = 0.0;
    double bilap_term = 0.0, hessian_term = 0.0, nonlinear_term = 0.0, forcing_term = 0.0;
    double fd_residual = -1.0;  // relative |dM_a/dt - production|; -1 at endpoints
  };
  std::vector<Row> rows;
  // time-integrated left-hand side pieces and their sum
  double lhs_mass = 0.0, lhs_potential = 0.0, lhs_gradient = 0.0, lhs_total = 0.0;
  double rhs = 0.0;            // sup_t ||phi||_2 ||grad phi||_2 (+ G majorant integral)
  double ratio = 0.0;          // lhs_total / rhs
  double max_fd_residual = 0.0;
  bool cauchy_schwarz_ok = false;  // |M_a(t)| <= 2 ||phi||_2 ||grad phi||_2 at all t
  bool fd_ok = false;              // max interior residual <= 5%
  bool pass = false;
};

/// Checks dM_a/dt against the production formula along a trajectory and
/// reports the time-integrated Morawetz inequality.  G_traj, when present,
/// must be recorded at the same times (the forced-equation case, e.g.
/// phi = P_{<N} u with G the nonlinear commutator).
MonotonicityReport verify_monotonicity(const Trajectory& traj, double eps,
                                       const Trajectory* G_traj = nullptr);

}  // namespace nlsim
