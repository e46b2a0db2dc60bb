#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlsim/spectral.hpp"

using namespace nlsim;

namespace {
constexpr double kPi = 3.14159265358979323846;

RadialField test_mix(const GridPtr& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  const double s1 = u(rng), s2 = u(rng);
  return sample_field(g, [s1, s2](double r) {
    return complexd(std::exp(-r * r / (2 * s1 * s1)),
                    0.5 * std::exp(-r * r / (2 * s2 * s2)));
  });
}
}  // namespace

TEST_CASE("Hankel round trip is near-exact on Bessel-zero grids") {
  for (int n : {3, 4, 5}) {
    auto g = build_grid(n, 20.0, 256, GridScheme::bessel_zeros);
    auto f = test_mix(g, 11 + static_cast<unsigned>(n));
    auto back = hankel_inverse(hankel_forward(f));
    CHECK((back.values - f.values).norm() / f.values.norm() < 1e-10);
  }
}

TEST_CASE("Plancherel identity holds through the transform") {
  auto g = build_grid(3, 20.0, 256, GridScheme::bessel_zeros);
  auto f = test_mix(g, 5);
  CHECK(spectral_l2_norm(hankel_forward(f)) ==
        doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-8));
}

TEST_CASE("Gaussian is an eigenfunction of the transform") {
  // FT of e^{-r^2/2} is (2 pi)^{n/2} e^{-rho^2/2}
  for (int n : {3, 5}) {
    auto g = build_grid(n, 25.0, 384, GridScheme::bessel_zeros);
    auto f = sample_field(g, [](double r) { return std::exp(-r * r / 2.0); });
    auto F = hankel_forward(f);
    const auto& dual = *F.grid;
    const double scale = std::pow(2.0 * kPi, 0.5 * n);
    double max_rel = 0.0;
    for (int k = 0; k < dual.node_count(); ++k) {
      const double rho = dual.nodes[k];
      if (rho > 8.0) break;
      const double exact = scale * std::exp(-rho * rho / 2.0);
      max_rel = std::max(max_rel, std::abs(F.values[k] - exact) / scale);
    }
    CHECK(max_rel < 1e-6);
  }
}

TEST_CASE("slow uniform-grid transform agrees with the fast path") {
  auto gb = build_grid(3, 20.0, 256, GridScheme::bessel_zeros);
  auto gu = build_grid(3, 20.0, 256, GridScheme::uniform);
  auto fb = sample_field(gb, [](double r) { return std::exp(-r * r); });
  auto fu = sample_field(gu, [](double r) { return std::exp(-r * r); });
  auto Fb = hankel_forward(fb);
  auto Fu = hankel_forward(fu);
  // compare at low shared frequencies by interpolation on the dual grids
  RadialField Fbr{Fb.grid, Fb.values}, Fur{Fu.grid, Fu.values};
  for (double rho : {0.5, 1.0, 2.0, 3.0}) {
    const auto a = interpolate_radial(Fbr, rho);
    const auto b = interpolate_radial(Fur, rho);
    // the uniform-grid path uses trapezoidal quadrature, so agreement is
    // limited by its O(h^2) error rather than round-off
    CHECK(std::abs(a - b) < 5e-4 * std::abs(a));
  }
}

TEST_CASE("dyadic symbols have the stated plateaus and partition unity") {
  auto le = MultiplierSymbol::dyadic_le(4.0);
  CHECK(std::real(le.eval(3.9)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::real(le.eval(4.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(le.eval(8.0)) < 1e-14);
  CHECK(std::abs(le.eval(12.0)) < 1e-14);

  // sum over dyadic bands telescopes to 1 for every rho > 0
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-4.0, 10.0);
  double max_res = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double rho = std::pow(2.0, u(rng));
    double acc = 0.0;
    for (int k = -12; k <= 18; ++k)
      acc += std::real(MultiplierSymbol::dyadic_band(std::pow(2.0, k)).eval(rho));
    max_res = std::max(max_res, std::abs(acc - 1.0));
  }
  CHECK(max_res < 1e-10);

  // free flow symbol is a pure phase
  auto fl = MultiplierSymbol::free_flow(0.3);
  for (double rho : {0.1, 1.0, 7.0})
    CHECK(std::abs(fl.eval(rho)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("fractional derivative matches the Laplacian on a Gaussian") {
  // |grad|^2 e^{-r^2/2} = -Lap e^{-r^2/2} = (n - r^2) e^{-r^2/2}
  const int n = 3;
  auto g = build_grid(n, 25.0, 384, GridScheme::bessel_zeros);
  auto f = sample_field(g, [](double r) { return std::exp(-r * r / 2.0); });
  auto d2 = fractional_derivative(f, 2.0);
  double max_err = 0.0;
  for (int j = 0; j < g->node_count(); ++j) {
    const double r = g->nodes[j];
    if (r > 10.0) break;
    max_err = std::max(max_err,
                       std::abs(d2.values[j] - (n - r * r) * std::exp(-r * r / 2.0)));
  }
  CHECK(max_err < 1e-6);
}

TEST_CASE("negative fractional powers invert positive ones on banded data") {
  auto g = build_grid(3, 20.0, 256, GridScheme::bessel_zeros);
  auto base = test_mix(g, 9);
  auto banded = apply_multiplier(base, MultiplierSymbol::dyadic_band(2.0));
  auto round = fractional_derivative(fractional_derivative(banded, 0.75), -0.75);
  CHECK((round.values - banded.values).norm() / banded.values.norm() < 1e-8);
}

TEST_CASE("fractional derivative rejects non-integrable negative powers") {
  auto g = build_grid(3, 20.0, 128, GridScheme::bessel_zeros);
  auto f = sample_field(g, [](double r) { return std::exp(-r * r); });
  CHECK_THROWS(fractional_derivative(f, -1.5));  // 2s + n = 0
  CHECK_THROWS(fractional_derivative(f, -2.0));
}

TEST_CASE("free propagation matches the closed-form Gaussian solution") {
  const int n = 3;
  auto g = build_grid(n, 25.0, 384, GridScheme::bessel_zeros);
  auto f = sample_field(g, [](double r) { return std::exp(-r * r); });
  const double t = 0.1;
  auto prop = free_propagate(f, t);
  // e^{itDelta} e^{-a r^2} = (1+4iat)^{-n/2} e^{-a r^2/(1+4iat)}, a = 1
  const complexd denom(1.0, 4.0 * t);
  const complexd pref = std::pow(denom, -0.5 * n);
  double max_err = 0.0;
  for (int j = 0; j < g->node_count(); ++j) {
    const double r = g->nodes[j];
    if (r > 12.0) break;
    const complexd exact = pref * std::exp(-r * r / denom);
    max_err = std::max(max_err, std::abs(prop.values[j] - exact));
  }
  CHECK(max_err < 1e-8);
  // unitarity
  CHECK(lp_norm(prop, 2.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-10));
}

TEST_CASE("spectral and finite-difference radial gradients agree") {
  auto g = build_grid(3, 20.0, 384, GridScheme::bessel_zeros);
  auto f = sample_field(g, [](double r) { return std::exp(-r * r / 2.0); });
  auto ds = gradient_radial(f, GradientMethod::spectral);
  auto dfd = gradient_radial(f, GradientMethod::finite_difference);
  double max_err = 0.0;
  for (int j = 2; j < g->node_count() - 2; ++j) {
    if (g->nodes[j] > 10.0) break;
    max_err = std::max(max_err, std::abs(ds.values[j] - dfd.values[j]));
  }
  CHECK(max_err < 1e-5);
  // oracle: d/dr e^{-r^2/2} = -r e^{-r^2/2}
  for (int j = 0; j < g->node_count(); j += 41) {
    const double r = g->nodes[j];
    if (r > 8.0) break;
    CHECK(std::abs(ds.values[j] + r * std::exp(-r * r / 2.0)) < 1e-7);
  }
}

TEST_CASE("spectral tail fraction detects under-resolved fields") {
  auto g = build_grid(3, 20.0, 256, GridScheme::bessel_zeros);
  auto smooth = sample_field(g, [](double r) { return std::exp(-r * r); });
  CHECK(spectral_tail_fraction(hankel_forward(smooth)) < 1e-6);
  auto spiky = sample_field(g, [](double r) { return std::exp(-800.0 * (r - 3.0) * (r - 3.0)); });
  CHECK(spectral_tail_fraction(hankel_forward(spiky)) > 1e-6);
}
