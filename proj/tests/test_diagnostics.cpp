#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlsim/diagnostics.hpp"

using namespace nlsim;

namespace {
constexpr double kPi = 3.14159265358979323846;

GridPtr grid3() { return build_grid(3, 20.0, 256, GridScheme::bessel_zeros); }

RadialField acceptance_data(const GridPtr& g) {
  return sample_field(g, [](double r) { return 2.0 * std::exp(-r * r); });
}

Trajectory constant_traj(const RadialField& u, const std::vector<double>& times) {
  Trajectory t;
  t.times = times;
  t.states.assign(times.size(), u);
  return t;
}
}  // namespace

TEST_CASE("mass and energy of the reference Gaussian match closed forms") {
  // u = 2 e^{-r^2} in R^3:
  //   mass = 4 (pi/2)^{3/2}
  //   kinetic = (1/2) * 16 * (3/4)(pi/2)^{3/2} = 6 (pi/2)^{3/2}
  //   potential = (3/10) * 2^{10/3} (3 pi/10)^{3/2}
  auto g = grid3();
  auto u = acceptance_data(g);
  const double m_exact = 4.0 * std::pow(kPi / 2.0, 1.5);
  const double k_exact = 6.0 * std::pow(kPi / 2.0, 1.5);
  const double p_exact = 0.3 * std::pow(2.0, 10.0 / 3.0) * std::pow(0.3 * kPi, 1.5);
  CHECK(mass(u) == doctest::Approx(m_exact).epsilon(1e-10));
  const auto e = energy(u);
  CHECK(e.kinetic == doctest::Approx(k_exact).epsilon(1e-8));
  CHECK(e.potential == doctest::Approx(p_exact).epsilon(1e-8));
  CHECK(e.total == doctest::Approx(e.kinetic + e.potential).epsilon(1e-14));
}

TEST_CASE("time quadrature weights reduce to known rules") {
  CHECK(time_quadrature_weights({0.7}) == std::vector<double>{1.0});
  auto w = time_quadrature_weights({0.0, 0.5, 1.0});
  REQUIRE(w.size() == 3);
  CHECK(w[0] == doctest::Approx(0.25));
  CHECK(w[1] == doctest::Approx(0.5));
  CHECK(w[2] == doctest::Approx(0.25));
  CHECK_THROWS(time_quadrature_weights({1.0, 0.5}));
}

TEST_CASE("spacetime norm of a static trajectory factorizes") {
  auto g = grid3();
  auto u = acceptance_data(g);
  auto traj = constant_traj(u, {0.0, 0.25, 0.5, 0.75, 1.0});
  // L^q_t L^r_x = |I|^{1/q} ||u||_r for constant-in-time data
  for (double q : {2.0, 4.0}) {
    const double expect = std::pow(1.0, 1.0 / q) * lp_norm(u, 3.0);
    CHECK(spacetime_norm(traj, q, 3.0) == doctest::Approx(expect).epsilon(1e-10));
  }
  CHECK(spacetime_norm(traj, INFINITY, 2.0) ==
        doctest::Approx(lp_norm(u, 2.0)).epsilon(1e-12));
}

TEST_CASE("s and n norms scale linearly in the field") {
  auto g = grid3();
  auto u = acceptance_data(g);
  auto traj = constant_traj(u, {0.0, 0.1, 0.2});
  auto scaled = traj;
  for (auto& s : scaled.states) s.values *= 3.0;
  const double eps = 0.01;
  CHECK(s_norm(scaled, eps) == doctest::Approx(3.0 * s_norm(traj, eps)).epsilon(1e-12));
  CHECK(n_norm(scaled, eps) == doctest::Approx(3.0 * n_norm(traj, eps)).epsilon(1e-12));
}

TEST_CASE("frequency scale tracks exact dilation") {
  auto g = grid3();
  auto u = sample_field(g, [](double r) { return std::exp(-r * r / 2.0); });
  const double N1 = frequency_scale(u);
  auto d = dilate_field_exact(u, 0.25);  // shrink in space -> 4x in frequency
  const double N2 = frequency_scale(d);
  CHECK(N2 / N1 == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("commutator vanishes when the projection is effectively identity") {
  auto g = grid3();
  auto u = acceptance_data(g);
  auto c = commutator(u, 1 << 12);
  CHECK(lp_norm(c, 2.0) < 1e-10 * lp_norm(u, 2.0));
  // at a frequency inside the data's spectrum the commutator is nontrivial
  auto c2 = commutator(u, 1.0);
  CHECK(lp_norm(c2, 2.0) > 1e-4);
}

TEST_CASE("q functional is zero on zero data and positive on real data") {
  auto g = grid3();
  RadialField zero(g);
  auto tz = constant_traj(zero, {0.0, 0.1});
  CHECK(q_functional(tz, 2.0, 0.01) == 0.0);
  auto tu = constant_traj(acceptance_data(g), {0.0, 0.1});
  CHECK(q_functional(tu, 2.0, 0.01) > 0.0);
}

TEST_CASE("high-frequency decay table falls for Gaussian data") {
  auto g = grid3();
  auto traj = constant_traj(acceptance_data(g), {0.0, 0.05, 0.1});
  std::vector<double> N_list;
  for (int k = 0; k <= 6; ++k) N_list.push_back(std::pow(2.0, k));
  auto table = high_freq_s_decay(traj, N_list, 0.01);
  double prev = INFINITY;
  for (const auto& row : table.rows) {
    if (row.name != "linf_l2_high") continue;
    CHECK(row.value <= prev * (1.0 + 1e-12));
    prev = row.value;
  }
  // tail mass above N = 64 is negligible for band-limited-by-decay data
  for (const auto& row : table.rows)
    if (row.name == "linf_l2_high" && row.params.at("N") >= 64.0)
      CHECK(row.value < 1e-6);
}

TEST_CASE("concentration profile reports positive scales and monotone C") {
  auto g = grid3();
  auto traj = constant_traj(acceptance_data(g), {0.0, 0.1});
  auto prof = concentration_profile(traj, {0.5, 0.2, 0.1, 0.05});
  REQUIRE(prof.times.size() == 2);
  for (double N : prof.N_of_t) CHECK(N > 0.0);
  // smaller eta needs a larger radius: C(eta) is non-increasing in eta,
  // so over our decreasing eta grid the values are non-decreasing
  for (size_t i = 1; i < prof.C_of_eta.size(); ++i)
    CHECK(prof.C_of_eta[i] >= prof.C_of_eta[i - 1] * (1.0 - 1e-12));
}
