#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "nlsim/diagnostics.hpp"
#include "nlsim/solver.hpp"

using namespace nlsim;

namespace {
RadialField gaussian_data(const GridPtr& g, double amp = 2.0) {
  return sample_field(g, [amp](double r) { return amp * std::exp(-r * r); });
}

Trajectory short_run(double dt = 1e-3, double t_end = 0.1, int stride = 1) {
  auto g = build_grid(3, 20.0, 256, GridScheme::bessel_zeros);
  SolverConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.record_stride = stride;
  return evolve(gaussian_data(g), cfg, "gaussian");
}
}  // namespace

TEST_CASE("single Strang step conserves mass to transform round-off") {
  auto g = build_grid(3, 20.0, 256, GridScheme::bessel_zeros);
  auto u = gaussian_data(g);
  auto v = strang_step(u, 1e-3);
  CHECK(mass(v) == doctest::Approx(mass(u)).epsilon(1e-12));
}

TEST_CASE("evolution drift stays within stated tolerances") {
  auto traj = short_run();
  CHECK(traj.provenance.mass_drift < 1e-9);
  CHECK(traj.provenance.energy_drift < 1e-4);
  CHECK(traj.size() == 101);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("linear-only evolution reproduces the free propagator") {
  auto g = build_grid(3, 20.0, 256, GridScheme::bessel_zeros);
  auto u0 = gaussian_data(g, 0.5);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.05;
  cfg.nonlinear = false;
  auto traj = evolve(u0, cfg, "gaussian");
  auto exact = free_propagate(u0, 0.05);
  CHECK((traj.states.back().values - exact.values).norm() /
            exact.values.norm() < 1e-10);
}

TEST_CASE("time reversal returns the initial data") {
  auto traj = short_run(1e-3, 0.1);
  const auto& u0 = traj.states.front();
  auto uT = traj.states.back();
  uT.values = uT.values.conjugate();
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.1;
  auto back = evolve(uT, cfg, "reversed");
  auto final = back.states.back();
  final.values = final.values.conjugate();
  CHECK((final.values - u0.values).norm() / u0.values.norm() < 1e-5);
}

TEST_CASE("Strang splitting is second order by Richardson extrapolation") {
  auto fine = short_run(0.25e-3, 0.05);   // reference
  auto mid = short_run(1e-3, 0.05);
  auto coarse = short_run(2e-3, 0.05);
  const auto& ref = fine.states.back().values;
  const double e_mid = (mid.states.back().values - ref).norm();
  const double e_coarse = (coarse.states.back().values - ref).norm();
  const double order = std::log2(e_coarse / e_mid);
  CHECK(order > 1.6);
  CHECK(order < 2.4);
}

TEST_CASE("Duhamel residual is small on a nonlinear run") {
  auto traj = short_run(1e-3, 0.1);
  CHECK(duhamel_residual(traj, 0.0, 0.1) < 1e-4);
}

TEST_CASE("trajectory rescaling preserves mass and the critical norm") {
  // J = 512: the rescaled states are interpolated onto a dilated grid, and
  // the interpolation error at J = 256 exceeds the 1e-6 mass tolerance
  auto g = build_grid(3, 20.0, 512, GridScheme::bessel_zeros);
  SolverConfig scfg;
  scfg.dt = 1e-3;
  scfg.t_end = 0.1;
  scfg.record_stride = 5;
  auto traj = evolve(gaussian_data(g), scfg, "gaussian");
  auto scaled = rescale_trajectory(traj, 2.0);
  const int n = traj.states.front().grid->dimension;
  const double pc = 2.0 * (n + 2.0) / n;
  for (size_t i = 0; i < scaled.states.size(); ++i)
    CHECK(mass(scaled.states[i]) ==
          doctest::Approx(mass(traj.states[i])).epsilon(1e-6));
  CHECK(spacetime_norm(scaled, pc, pc) ==
        doctest::Approx(spacetime_norm(traj, pc, pc)).epsilon(1e-4));
  // time axis dilates by lambda^2
  CHECK(scaled.times.back() == doctest::Approx(4.0 * traj.times.back()).epsilon(1e-12));
}

TEST_CASE("trajectory save/load round trip is exact") {
  auto traj = short_run(1e-3, 0.02, 2);
  const auto path = std::filesystem::temp_directory_path() / "nlsim_traj_test.bin";
  save_trajectory(traj, path.string());
  auto loaded = load_trajectory(path.string());
  REQUIRE(loaded.size() == traj.size());
  for (int i = 0; i < traj.size(); ++i) {
    CHECK(loaded.times[static_cast<size_t>(i)] == traj.times[static_cast<size_t>(i)]);
    CHECK((loaded.states[static_cast<size_t>(i)].values -
           traj.states[static_cast<size_t>(i)].values).norm() == 0.0);
  }
  CHECK(loaded.provenance.mass_drift == traj.provenance.mass_drift);
  std::remove(path.string().c_str());
}

TEST_CASE("nonlinearity is the stated power law") {
  auto g = build_grid(4, 20.0, 128, GridScheme::bessel_zeros);
  auto u = sample_field(g, [](double r) { return complexd(0.0, 2.0) * std::exp(-r * r); });
  auto F = nonlinearity(u);
  for (int j = 0; j < 128; j += 17) {
    const auto z = u.values[j];
    const auto expect = std::pow(std::abs(z), 4.0 / 4.0) * z;  // n = 4
    CHECK(std::abs(F.values[j] - expect) < 1e-14);
  }
}

TEST_CASE("boundary mass breach aborts the evolution") {
  auto g = build_grid(3, 6.0, 128, GridScheme::bessel_zeros);  // tight box
  auto u0 = sample_field(g, [](double r) { return 2.0 * std::exp(-r * r / 9.0); });
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 2.0;
  CHECK_THROWS(evolve(u0, cfg, "wide gaussian"));
}
