#include "nlsim/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <boost/math/special_functions/bessel.hpp>

namespace nlsim {

namespace {

// kappa(z) = z^{-nu} J_nu(z), the radial Fourier kernel of R^n (nu = n/2-1).
// Small-z series keeps the z -> 0 limit 2^{-nu}/Gamma(nu+1) stable.
double kernel_kappa(double nu, double z) {
  if (z < 1e-4) {
    const double c = std::pow(2.0, -nu) / std::tgamma(nu + 1.0);
    const double q = 0.25 * z * z;
    return c * (1.0 - q / (nu + 1.0) + 0.5 * q * q / ((nu + 1.0) * (nu + 2.0)));
  }
  return std::pow(z, -nu) * boost::math::cyl_bessel_j(nu, z);
}

// kappa_plus(z) = z^{-nu} J_{nu+1}(z) = -kappa'(z).
double kernel_kappa_plus(double nu, double z) {
  if (z < 1e-4) {
    const double c = std::pow(2.0, -nu - 1.0) / std::tgamma(nu + 2.0);
    const double q = 0.25 * z * z;
    return c * z * (1.0 - q / (nu + 2.0) + 0.5 * q * q / ((nu + 2.0) * (nu + 3.0)));
  }
  return std::pow(z, -nu) * boost::math::cyl_bessel_j(nu + 1.0, z);
}

Eigen::VectorXcd apply_real(const Eigen::MatrixXd& M, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out(M.rows());
  out.real() = M * v.real();
  out.imag() = M * v.imag();
  return out;
}

GridPtr make_dual_grid(const RadialGrid& g) {
  auto dual = std::make_shared<RadialGrid>();
  const int n = g.dimension;
  const int J = g.node_count();
  dual->dimension = n;
  dual->scheme = g.scheme;
  dual->surface_area = g.surface_area;
  dual->nodes.resize(J);
  dual->weights.resize(J);
  if (g.scheme == GridScheme::bessel_zeros) {
    const double nu = 0.5 * n - 1.0;
    const double R = g.max_radius;
    std::vector<double> zeros(J + 1);
    boost::math::cyl_bessel_j_zero(nu, 1, J + 1, zeros.begin());
    for (int k = 0; k < J; ++k) {
      const double rho = zeros[k] / R;
      const double jp = boost::math::cyl_bessel_j(nu + 1.0, zeros[k]);
      dual->nodes[k] = rho;
      dual->weights[k] = 2.0 * std::pow(rho, n - 2) / (R * R * jp * jp);
    }
    dual->max_radius = zeros[J] / R;  // bandwidth V = S/R
    dual->quad_tol = g.quad_tol;
  } else {
    // Half the Nyquist rate of the uniform sampling.
    const double rho_max = M_PI * J / (2.0 * g.max_radius);
    auto tmp = build_grid(n, rho_max, J, GridScheme::uniform);
    *dual = *tmp;
  }
  return dual;
}

}  // namespace

double lp_bump(double rho) {
  if (rho <= 1.0) return 1.0;
  if (rho >= 2.0) return 0.0;
  auto psi = [](double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; };
  const double a = psi(2.0 - rho), b = psi(rho - 1.0);
  return a / (a + b);
}

MultiplierSymbol MultiplierSymbol::dyadic_le(double N) {
  return {Kind::dyadic_le, N, [N](double rho) { return complexd(lp_bump(rho / N), 0.0); }, true};
}
MultiplierSymbol MultiplierSymbol::dyadic_lt(double N) {
  return {Kind::dyadic_lt, N, [N](double rho) { return complexd(lp_bump(2.0 * rho / N), 0.0); }, true};
}
MultiplierSymbol MultiplierSymbol::dyadic_band(double N) {
  return {Kind::dyadic_band, N,
          [N](double rho) { return complexd(lp_bump(rho / N) - lp_bump(2.0 * rho / N), 0.0); }, true};
}
MultiplierSymbol MultiplierSymbol::dyadic_gt(double N) {
  return {Kind::dyadic_gt, N, [N](double rho) { return complexd(1.0 - lp_bump(rho / N), 0.0); }, true};
}
MultiplierSymbol MultiplierSymbol::dyadic_ge(double N) {
  return {Kind::dyadic_ge, N, [N](double rho) { return complexd(1.0 - lp_bump(2.0 * rho / N), 0.0); }, true};
}
MultiplierSymbol MultiplierSymbol::frac_power(double s) {
  return {Kind::frac_power, s, [s](double rho) { return complexd(std::pow(rho, s), 0.0); }, false};
}
MultiplierSymbol MultiplierSymbol::free_flow(double t) {
  return {Kind::free_flow, t,
          [t](double rho) { return std::exp(complexd(0.0, -t * rho * rho)); }, false};
}
MultiplierSymbol MultiplierSymbol::identity() {
  return {Kind::identity, 0.0, [](double) { return complexd(1.0, 0.0); }, true};
}
MultiplierSymbol MultiplierSymbol::custom(std::function<complexd(double)> m, bool hm) {
  return {Kind::custom, 0.0, std::move(m), hm};
}
MultiplierSymbol MultiplierSymbol::times(const MultiplierSymbol& other) const {
  auto a = eval, b = other.eval;
  return {Kind::custom, 0.0, [a, b](double rho) { return a(rho) * b(rho); },
          hormander_mikhlin && other.hormander_mikhlin};
}

std::shared_ptr<const HankelPlan> HankelPlan::get(const GridPtr& grid) {
  using Key = std::tuple<int, double, int, int>;
  static std::map<Key, std::shared_ptr<const HankelPlan>> cache;
  static std::mutex mtx;
  Key key{grid->dimension, grid->max_radius, grid->node_count(), static_cast<int>(grid->scheme)};
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  auto plan = std::shared_ptr<HankelPlan>(new HankelPlan);
  plan->grid_ = grid;
  plan->dual_ = make_dual_grid(*grid);
  const int n = grid->dimension;
  const int J = grid->node_count();
  const double nu = 0.5 * n - 1.0;
  const double fnorm = std::pow(2.0 * M_PI, 0.5 * n);

  Eigen::MatrixXd kappa(J, J), kappa_p(J, J);
  for (int k = 0; k < J; ++k)
    for (int j = 0; j < J; ++j) {
      const double z = plan->dual_->nodes[k] * grid->nodes[j];
      kappa(k, j) = kernel_kappa(nu, z);
      kappa_p(k, j) = kernel_kappa_plus(nu, z);
    }
  plan->fwd_ = fnorm * kappa * grid->weights.asDiagonal();
  plan->inv_ = (1.0 / fnorm) * kappa.transpose() * plan->dual_->weights.asDiagonal();
  // d_r f from the spectral side: f'(r_j) = -(2pi)^{-n/2} sum_k w_k rho_k
  // kappa_plus(rho_k r_j) f_hat_k.
  plan->deriv_ = -(1.0 / fnorm) * kappa_p.transpose() *
                 (plan->dual_->weights.array() * plan->dual_->nodes.array()).matrix().asDiagonal();

  cache[key] = plan;
  return plan;
}

SpectralField HankelPlan::forward(const RadialField& f) const {
  SpectralField out(dual_);
  out.values = apply_real(fwd_, f.values);
  return out;
}

RadialField HankelPlan::inverse(const SpectralField& F) const {
  RadialField out(grid_);
  out.values = apply_real(inv_, F.values);
  return out;
}

RadialField HankelPlan::derivative(const RadialField& f) const {
  RadialField out(grid_);
  out.values = apply_real(deriv_, apply_real(fwd_, f.values));
  return out;
}

SpectralField hankel_forward(const RadialField& f) {
  return HankelPlan::get(f.grid)->forward(f);
}

RadialField hankel_inverse(const SpectralField& F) {
  // The plan is keyed by the physical grid; recover it through the cache
  // by matching the dual signature.
  // Spectral fields produced by hankel_forward carry the plan's dual grid,
  // so reconstruct the primal grid parameters from it.
  const auto& d = *F.grid;
  const int J = d.node_count();
  double R;
  if (d.scheme == GridScheme::bessel_zeros) {
    const double nu = 0.5 * d.dimension - 1.0;
    R = boost::math::cyl_bessel_j_zero(nu, 1) / d.nodes[0];
  } else {
    R = M_PI * J / (2.0 * d.max_radius);
  }
  auto grid = build_grid(d.dimension, R, J, d.scheme);
  return HankelPlan::get(grid)->inverse(F);
}

double spectral_tail_fraction(const SpectralField& F, double band_frac) {
  const auto& g = *F.grid;
  const double cut = (1.0 - band_frac) * g.nodes[g.node_count() - 1];
  double tail = 0.0, total = 0.0;
  for (int k = 0; k < F.values.size(); ++k) {
    const double m = g.weights[k] * std::norm(F.values[k]);
    total += m;
    if (g.nodes[k] >= cut) tail += m;
  }
  return total > 0 ? tail / total : 0.0;
}

SpectralField apply_symbol(const SpectralField& F, const MultiplierSymbol& m) {
  SpectralField out = F;
  for (int k = 0; k < out.values.size(); ++k) out.values[k] *= m.eval(F.grid->nodes[k]);
  return out;
}

RadialField apply_multiplier(const RadialField& f, const MultiplierSymbol& m) {
  auto plan = HankelPlan::get(f.grid);
  return plan->inverse(apply_symbol(plan->forward(f), m));
}

RadialField fractional_derivative(const RadialField& f, double s) {
  if (s == 0.0) return f;
  auto plan = HankelPlan::get(f.grid);
  SpectralField F = plan->forward(f);
  if (s < 0.0) {
    const int n = f.grid->dimension;
    if (2.0 * s + n <= 0.0)
      throw std::invalid_argument("fractional_derivative: rho^{2s} not integrable against rho^{n-1}");
    // Weighted spectral energy; the lowest dual node is the only place the
    // negative power can concentrate.
    double total = 0.0, lowest = 0.0;
    for (int k = 0; k < F.values.size(); ++k) {
      const double e = F.grid->weights[k] * std::pow(F.grid->nodes[k], 2.0 * s) * std::norm(F.values[k]);
      total += e;
      if (k == 0) lowest = e;
    }
    if (total > 0) {
      const double share = lowest / total;
      if (share < 1e-10) {
        F.values[0] = 0.0;  // negligible: excluded rather than amplified
      } else if (share > 0.5) {
        throw std::invalid_argument(
            "fractional_derivative: low-frequency energy fraction " + std::to_string(share) +
            " too large for negative power s=" + std::to_string(s));
      }
    }
  }
  return plan->inverse(apply_symbol(F, MultiplierSymbol::frac_power(s)));
}

RadialField free_propagate(const RadialField& f, double t, bool* aliasing_warn) {
  auto plan = HankelPlan::get(f.grid);
  const auto& rho = plan->dual()->nodes;
  const int J = plan->dual()->node_count();
  if (aliasing_warn) {
    const double dphase = std::abs(t) * (rho[J - 1] * rho[J - 1] - rho[J - 2] * rho[J - 2]);
    *aliasing_warn = dphase > M_PI;
  }
  return plan->inverse(apply_symbol(plan->forward(f), MultiplierSymbol::free_flow(t)));
}

namespace {

// Local five-point Lagrange differentiation on the (possibly nonuniform)
// radial nodes, with even extension below the first node.
RadialField fd_derivative(const RadialField& f) {
  const auto& nodes = f.grid->nodes;
  const int J = f.grid->node_count();
  RadialField out(f.grid);
  constexpr int W = 5;
  for (int j = 0; j < J; ++j) {
    int lo = j - W / 2;
    if (lo > J - W) lo = J - W;
    if (lo < -2) lo = -2;
    double xs[W];
    complexd ys[W];
    for (int k = 0; k < W; ++k) {
      int idx = lo + k;
      if (idx < 0) {
        xs[k] = -nodes[-idx - 1];
        ys[k] = f.values[-idx - 1];
      } else {
        xs[k] = nodes[idx];
        ys[k] = f.values[idx];
      }
    }
    const double x = nodes[j];
    complexd acc = 0.0;
    for (int k = 0; k < W; ++k) {
      // derivative of the k-th Lagrange basis at x
      double dL = 0.0;
      for (int m = 0; m < W; ++m) {
        if (m == k) continue;
        double term = 1.0 / (xs[k] - xs[m]);
        for (int q = 0; q < W; ++q)
          if (q != k && q != m) term *= (x - xs[q]) / (xs[k] - xs[q]);
        dL += term;
      }
      acc += dL * ys[k];
    }
    out.values[j] = acc;
  }
  return out;
}

}  // namespace

RadialField gradient_radial(const RadialField& f, GradientMethod method) {
  if (method == GradientMethod::finite_difference) return fd_derivative(f);
  return HankelPlan::get(f.grid)->derivative(f);
}

double spectral_l2_norm(const SpectralField& F) {
  double acc = 0.0;
  for (int k = 0; k < F.values.size(); ++k) acc += F.grid->weights[k] * std::norm(F.values[k]);
  acc *= F.grid->surface_area;
  return std::sqrt(acc) / std::pow(2.0 * M_PI, 0.5 * F.grid->dimension);
}

}  // namespace nlsim
