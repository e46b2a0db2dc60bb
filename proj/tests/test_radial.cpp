#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlsim/radial.hpp"

using namespace nlsim;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("unit sphere areas match closed forms") {
  CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(unit_sphere_area(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
  CHECK(unit_sphere_area(6) == doctest::Approx(kPi * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("grid quadrature integrates Gaussians to analytic values") {
  // int_{R^n} e^{-r^2} dx = pi^{n/2}
  for (int n : {3, 4, 5, 6}) {
    for (auto scheme : {GridScheme::bessel_zeros, GridScheme::uniform}) {
      auto g = build_grid(n, 20.0, 256, scheme);
      auto f = sample_field(g, [](double r) { return std::exp(-r * r); });
      const double exact = std::pow(kPi, 0.5 * n);
      CHECK(std::real(integrate(f)) == doctest::Approx(exact).epsilon(5e-5));
      CHECK(std::abs(std::imag(integrate(f))) < 1e-12 * exact);
    }
  }
}

TEST_CASE("grid construction validates arguments") {
  CHECK_THROWS(build_grid(2, 20.0, 64, GridScheme::uniform));
  CHECK_THROWS(build_grid(3, -1.0, 64, GridScheme::uniform));
  CHECK_THROWS(build_grid(3, 20.0, 0, GridScheme::uniform));
  auto g = build_grid(3, 20.0, 64, GridScheme::bessel_zeros);
  CHECK(g->node_count() == 64);
  for (int j = 0; j < 64; ++j) {
    CHECK(g->nodes[j] > 0.0);
    CHECK(g->nodes[j] <= 20.0);
    CHECK(g->weights[j] > 0.0);
    if (j) CHECK(g->nodes[j] > g->nodes[j - 1]);
  }
}

TEST_CASE("weighted norms match Gamma-function oracle") {
  // || |x|^g f ||_p^p = omega * int r^{gp} e^{-p r^2} r^{n-1} dr
  //                   = omega/2 * Gamma((gp+n)/2) p^{-(gp+n)/2}
  const int n = 3;
  auto g = build_grid(n, 20.0, 512, GridScheme::bessel_zeros);
  auto f = sample_field(g, [](double r) { return std::exp(-r * r); });
  const double p = 2.0, gamma = -0.5;
  const double m = (gamma * p + n) / 2.0;
  const double exact =
      std::pow(unit_sphere_area(n) / 2.0 * std::tgamma(m) * std::pow(p, -m), 1.0 / p);
  CHECK(weighted_lp_norm(f, p, gamma) == doctest::Approx(exact).epsilon(5e-4));

  // p = infinity: sup of r^gamma |f|
  const double sup = weighted_lp_norm(f, INFINITY, 1.0);
  // max of r e^{-r^2} is at r = 1/sqrt(2)
  CHECK(sup == doctest::Approx(std::exp(-0.5) / std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("bracket norm bounded by homogeneous weight norm for negative powers") {
  auto g = build_grid(3, 20.0, 256, GridScheme::bessel_zeros);
  auto f = sample_field(g, [](double r) { return std::exp(-r * r / 2.0); });
  // <x>^gamma >= |x|^gamma for gamma < 0
  CHECK(bracket_lp_norm(f, 2.0, -1.0) <= weighted_lp_norm(f, 2.0, -1.0));
  CHECK(bracket_lp_norm(f, 2.0, 0.0) ==
        doctest::Approx(weighted_lp_norm(f, 2.0, 0.0)).epsilon(1e-14));
}

TEST_CASE("cubic interpolation is exact on cubics and reflects evenly") {
  auto g = build_grid(3, 10.0, 128, GridScheme::uniform);
  auto f = sample_field(g, [](double r) { return 1.0 + 2.0 * r * r - 0.1 * r * r * r; });
  for (double r : {0.37, 1.92, 5.5, 9.2}) {
    const double exact = 1.0 + 2.0 * r * r - 0.1 * r * r * r;
    CHECK(std::real(interpolate_radial(f, r)) == doctest::Approx(exact).epsilon(1e-10));
  }
  // beyond R the extension is zero
  CHECK(std::abs(interpolate_radial(f, 10.5)) == 0.0);
  // even extension keeps smooth even functions accurate near the origin
  auto h = sample_field(g, [](double r) { return std::cos(r); });
  CHECK(std::real(interpolate_radial(h, 0.01)) ==
        doctest::Approx(std::cos(0.01)).epsilon(1e-5));
}

TEST_CASE("interpolating dilation approximates the analytic dilate") {
  const int n = 3;
  auto g = build_grid(n, 20.0, 512, GridScheme::bessel_zeros);
  auto f = sample_field(g, [](double r) { return std::exp(-r * r); });
  const double lambda = 1.7;
  auto d = dilate_field(f, lambda);
  const double amp = std::pow(lambda, -0.5 * n);
  for (int j = 0; j < d.values.size(); j += 37) {
    const double r = g->nodes[j];
    const double exact = amp * std::exp(-(r / lambda) * (r / lambda));
    CHECK(std::abs(d.values[j] - exact) < 1e-5);
  }
  // mass invariance of the L^2-critical dilation
  CHECK(lp_norm(d, 2.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-6));
}

TEST_CASE("exact dilation rescales nodes and preserves mass to round-off") {
  const int n = 4;
  auto g = build_grid(n, 20.0, 256, GridScheme::bessel_zeros);
  auto f = sample_field(g, [](double r) { return std::exp(-r * r / 2.0); });
  for (double lambda : {0.25, 4.0}) {
    auto d = dilate_field_exact(f, lambda);
    CHECK(d.grid->max_radius == doctest::Approx(lambda * 20.0).epsilon(1e-15));
    for (int j = 0; j < d.grid->node_count(); j += 19)
      CHECK(d.grid->nodes[j] == doctest::Approx(lambda * g->nodes[j]).epsilon(1e-15));
    CHECK(lp_norm(d, 2.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-13));
  }
  CHECK_THROWS(dilate_field_exact(f, -1.0));
}

TEST_CASE("boundary mass fraction flags outer concentration") {
  auto g = build_grid(3, 20.0, 256, GridScheme::bessel_zeros);
  auto inner = sample_field(g, [](double r) { return std::exp(-r * r); });
  CHECK(boundary_mass_fraction(inner) < 1e-12);
  auto outer = sample_field(g, [](double r) {
    return std::exp(-(r - 19.8) * (r - 19.8) * 50.0);
  });
  CHECK(boundary_mass_fraction(outer) > 0.5);
}
