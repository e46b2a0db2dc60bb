#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlsim/spectral.hpp"

namespace nlsim {

enum class SplitScheme { strang, lie };

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 0.5;
  int record_stride = 1;
  SplitScheme scheme = SplitScheme::strang;
  bool nonlinear = true;   // disable for free-flow references
  bool dealias = false;    // sharp cutoff at 2/3 of the dual band after each step
  double boundary_mass_tol = 1e-6;  // abort threshold on the outermost 5% of nodes
};

struct TrajectoryProvenance {
  SolverConfig config;
  std::string initial_data;
  double mass_drift = 0.0;    // max relative deviation from the initial mass
  double energy_drift = 0.0;  // max relative deviation from the initial energy
  bool aliasing_warned = false;
  bool boundary_decay_warned = false;  // u0 above 1e-12 at the boundary
};

/// Time-ordered states of one evolution; all fields share one grid.
struct Trajectory {
  std::vector<double> times;
  std::vector<RadialField> states;
  TrajectoryProvenance provenance;

  int size() const { return static_cast<int>(times.size()); }
  const RadialField& at_time(double t) const;
};

/// F(u) = |u|^{4/n} u.
RadialField nonlinearity(const RadialField& f);

/// One Strang step: half nonlinear phase, full linear flow, half nonlinear
/// phase.  The nonlinear substep is the exact pointwise solution
/// u e^{-i |u|^{4/n} dt} of i u_t = |u|^{4/n} u.
RadialField strang_step(const RadialField& f, double dt, const SolverConfig& cfg = {},
                        bool* aliasing_warn = nullptr);

Trajectory evolve(const RadialField& u0, const SolverConfig& cfg,
                  const std::string& initial_data_label = "");

/// || u(t1) - e^{i(t1-t0)Delta} u(t0) + i int_{t0}^{t1} e^{i(t1-s)Delta}
/// F(u(s)) ds ||_2 / ||u(t1)||_2, time integral by trapezoid over the
/// recorded states.
double duhamel_residual(const Trajectory& traj, double t0, double t1);

/// u^lambda(t,x) = lambda^{-n/2} u(t/lambda^2, x/lambda), resampled onto the
/// original grid.  Rejects lambda pushing support outside [0,R].
Trajectory rescale_trajectory(const Trajectory& traj, double lambda);

void save_trajectory(const Trajectory& traj, const std::string& path);
Trajectory load_trajectory(const std::string& path);

}  // namespace nlsim
