#pragma once

#include <map>
#include <string>
#include <vector>

#include "nlsim/solver.hpp"

namespace nlsim {

struct EnergyBreakdown {
  double kinetic = 0.0;    // 1/2 int |grad u|^2
  double potential = 0.0;  // n/(2(n+2)) int |u|^{2(n+2)/n}
  double total = 0.0;
};

struct NormRow {
  std::string name;
  std::map<std::string, double> params;
  double value = 0.0;
};

struct NormTable {
  std::vector<NormRow> rows;
  void add(std::string name, std::map<std::string, double> params, double value) {
    rows.push_back({std::move(name), std::move(params), value});
  }
};

/// Frequency scale N(t) and concentration function C(eta) of a trajectory,
/// quantifying almost-periodicity modulo scaling.  eta is a mass fraction
/// of the state's total (so the profile is dilation-quotient data).
struct AlmostPeriodicityProfile {
  std::vector<double> times;
  std::vector<double> N_of_t;
  std::vector<double> eta_grid;
  std::vector<double> C_of_eta;
};

double mass(const RadialField& f);
EnergyBreakdown energy(const RadialField& f);

/// L^q_t L^r_x over the recorded states (trapezoid in time).
double spacetime_norm(const Trajectory& traj, double q, double r);

/// || |x|^{-(1+eps)/2} |grad|^{(1-eps)/2} u ||_{L^2_{t,x}} + ||u||_{L^inf_t L^2_x}.
double s_norm(const Trajectory& traj, double eps);

/// || |x|^{(1+eps)/2} |grad|^{-(1-eps)/2} G ||_{L^2_{t,x}}.
double n_norm(const Trajectory& G_traj, double eps);

/// int_I int |grad u_{<N}|^2 / |N x|^{1+eps} dx dt.
double q_functional(const Trajectory& traj, double N, double eps);

/// Median spectral radius: half the spectral mass of u_hat lies below it.
double frequency_scale(const RadialField& f);

AlmostPeriodicityProfile concentration_profile(const Trajectory& traj,
                                               const std::vector<double>& eta_grid);

/// Nonlinear commutator G = P_{<N} F(u) - F(P_{<N} u).
RadialField commutator(const RadialField& f, double N);

/// Table of ||u_{>=N}||_S, N^{-(1+eps)/2} || |grad|^{-(1-eps)/2} grad u_{<N} ||_S,
/// and ||u_{>=N}||_{L^inf_t L^2_x} over N_list.
NormTable high_freq_s_decay(const Trajectory& traj, const std::vector<double>& N_list,
                            double eps);

/// Trapezoid weights for a strictly increasing time sequence.
std::vector<double> time_quadrature_weights(const std::vector<double>& times);

/// Applies a multiplier to every state.
Trajectory apply_multiplier(const Trajectory& traj, const MultiplierSymbol& m);

}  // namespace nlsim
