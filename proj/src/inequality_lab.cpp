#include "nlsim/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/special_functions/gamma.hpp>

namespace nlsim {

namespace {

double dual_exponent(double p) {
  if (p == 1.0) return INFINITY;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

// n / p' with the p = 1 (p' = inf) and p = inf (p' = 1) cases spelled out.
double n_over_dual(int n, double p) {
  if (p == 1.0) return 0.0;
  if (std::isinf(p)) return static_cast<double>(n);
  return n * (1.0 - 1.0 / p);
}

double field_peak(const RadialField& f) {
  double m = 0.0;
  for (int j = 0; j < f.values.size(); ++j) m = std::max(m, std::abs(f.values[j]));
  return m;
}

bool boundary_decayed(const RadialField& f) {
  const double peak = field_peak(f);
  if (peak == 0.0) return true;
  const int J = f.grid->node_count();
  return std::abs(f.values[J - 1]) <= 1e-12 * peak;
}

}  // namespace

void RatioReport::add(double lhs, double rhs) {
  RatioSample s;
  s.sample_id = static_cast<int>(samples.size());
  s.lhs = lhs;
  s.rhs = rhs;
  s.ratio = lhs == 0.0 ? 0.0 : lhs / rhs;
  sup_ratio = std::max(sup_ratio, s.ratio);
  samples.push_back(s);
}

TestFamily random_radial_family(std::uint64_t seed, int count, FamilyKind kind,
                                const GridPtr& grid) {
  if (count < 1) throw std::invalid_argument("random_radial_family: count must be >= 1");
  TestFamily fam;
  fam.seed = seed;
  fam.kind = kind;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double R = grid->max_radius;
  const int n = grid->dimension;

  auto draw_gaussian_mix = [&](double sigma_lo, double sigma_hi,
                               std::map<std::string, double>& meta) {
    const int terms = 2 + static_cast<int>(rng() % 3);
    RadialField f(grid);
    for (int t = 0; t < terms; ++t) {
      const complexd amp(2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0);
      const double sigma = sigma_lo + (sigma_hi - sigma_lo) * unit(rng);
      meta["sigma_" + std::to_string(t)] = sigma;
      meta["amp_re_" + std::to_string(t)] = amp.real();
      meta["amp_im_" + std::to_string(t)] = amp.imag();
      for (int j = 0; j < f.values.size(); ++j) {
        const double r = grid->nodes[j];
        f.values[j] += amp * std::exp(-r * r / (2.0 * sigma * sigma));
      }
    }
    return f;
  };

  auto emit = [&](RadialField f, std::map<std::string, double> meta) {
    if (!boundary_decayed(f))
      throw std::runtime_error("random_radial_family: member breaches boundary decay");
    fam.members.push_back(std::move(f));
    fam.metadata.push_back(std::move(meta));
  };

  for (int i = 0; i < count; ++i) {
    std::map<std::string, double> meta;
    switch (kind) {
      case FamilyKind::gaussian_mix:
        emit(draw_gaussian_mix(0.4, R / 12.0, meta), meta);
        break;
      case FamilyKind::radial_bumps: {
        const int terms = 2 + static_cast<int>(rng() % 2);
        RadialField f(grid);
        for (int t = 0; t < terms; ++t) {
          const complexd amp(2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0);
          const double w = R * (0.015 + 0.035 * unit(rng));
          const double r0 = 4.0 * w + (R / 4.0 - 4.0 * w) * unit(rng);
          meta["width_" + std::to_string(t)] = w;
          meta["center_" + std::to_string(t)] = r0;
          for (int j = 0; j < f.values.size(); ++j) {
            const double r = grid->nodes[j];
            f.values[j] += amp * std::exp(-(r - r0) * (r - r0) / (2.0 * w * w));
          }
        }
        emit(std::move(f), meta);
        break;
      }
      case FamilyKind::band_limited: {
        RadialField base = draw_gaussian_mix(0.4, R / 12.0, meta);
        const double rho0 = 1.0 + 4.0 * unit(rng);
        const double w = 0.7 + 0.5 * unit(rng);
        meta["band_center"] = rho0;
        meta["band_width"] = w;
        meta["band_lo"] = std::max(rho0 - 5.2 * w, 0.0);
        meta["band_hi"] = rho0 + 5.2 * w;
        auto sym = MultiplierSymbol::custom([rho0, w](double rho) -> complexd {
          const double z = (rho - rho0) / w;
          return std::exp(-z * z);
        });
        RadialField banded = apply_multiplier(base, sym);
        // The analytic field is Gaussian-small beyond a few base widths; the
        // discrete transform leaves a ~1e-12 relative noise floor there.
        // Zeroing it keeps the boundary-decay contract and perturbs the
        // spectral band mass at the square of that level.
        for (int j = 0; j < banded.values.size(); ++j)
          if (grid->nodes[j] > 0.8 * R) banded.values[j] = 0.0;
        emit(std::move(banded), meta);
        break;
      }
      case FamilyKind::dilation_orbit: {
        RadialField base = draw_gaussian_mix(0.8, std::min(1.6, R / 12.0), meta);
        for (double lambda : {0.25, 1.0, 4.0}) {
          auto m = meta;
          m["lambda"] = lambda;
          m["base_index"] = static_cast<double>(i);
          emit(dilate_field_exact(base, lambda), m);
        }
        break;
      }
    }
  }
  return fam;
}

RatioReport check_bilinear(const RadialField& f, const RadialField& g, double p,
                           double q, double alpha, double beta,
                           BilinearRegime regime, double cutoff) {
  const int n = f.grid->dimension;
  if (g.grid->dimension != n)
    throw std::invalid_argument("check_bilinear: dimension mismatch");
  if (!(p >= 1.0) || !(q >= 1.0))
    throw std::invalid_argument("check_bilinear: hypothesis 1 <= p,q <= inf violated");
  const double pd = n_over_dual(n, p), qd = n_over_dual(n, q);
  if (1.0 / p + 1.0 / q < 1.0 - 1e-12)
    throw std::invalid_argument("check_bilinear: hypothesis 1/p + 1/q >= 1 violated");
  if (std::abs(alpha + beta + pd + qd) > 1e-9)
    throw std::invalid_argument(
        "check_bilinear: scaling condition alpha + beta = -n/p' - n/q' violated");
  if (regime == BilinearRegime::x_small && !(alpha > -pd))
    throw std::invalid_argument("check_bilinear: hypothesis alpha > -n/p' violated");
  if (regime == BilinearRegime::y_small && !(alpha < -pd))
    throw std::invalid_argument("check_bilinear: hypothesis alpha < -n/p' violated");
  if (!(cutoff > 0)) throw std::invalid_argument("check_bilinear: cutoff must be positive");

  const auto& gf = *f.grid;
  const auto& gg = *g.grid;
  // Quadrature cells for the inner grid (midpoints between neighbours): a
  // cell straddling the region boundary contributes its overlap fraction, so
  // the sharp indicator costs O(h^2) instead of O(h) per outer node.
  const int K = static_cast<int>(g.values.size());
  std::vector<double> cell_lo(static_cast<size_t>(K)), cell_hi(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) {
    cell_lo[static_cast<size_t>(k)] =
        k ? 0.5 * (gg.nodes[k - 1] + gg.nodes[k]) : 0.0;
    cell_hi[static_cast<size_t>(k)] =
        k + 1 < K ? 0.5 * (gg.nodes[k] + gg.nodes[k + 1]) : gg.max_radius;
  }
  double lhs = 0.0;
  for (int j = 0; j < f.values.size(); ++j) {
    const double r = gf.nodes[j];
    const double xf = gf.weights[j] * std::pow(r, alpha) * std::abs(f.values[j]);
    if (xf == 0.0) continue;
    double inner = 0.0;
    for (int k = 0; k < K; ++k) {
      const double lo = cell_lo[static_cast<size_t>(k)];
      const double hi = cell_hi[static_cast<size_t>(k)];
      // x_small: integrate over s >= r / cutoff; y_small: over s <= cutoff r
      const double frac =
          regime == BilinearRegime::x_small
              ? std::clamp((hi - r / cutoff) / (hi - lo), 0.0, 1.0)
              : std::clamp((cutoff * r - lo) / (hi - lo), 0.0, 1.0);
      if (frac == 0.0) continue;
      inner += frac * gg.weights[k] * std::pow(gg.nodes[k], beta) * std::abs(g.values[k]);
    }
    lhs += xf * inner;
  }
  lhs *= gf.surface_area * gg.surface_area;

  RatioReport rep;
  rep.name = "bilinear";
  rep.params = {{"p", p}, {"q", q}, {"alpha", alpha}, {"beta", beta},
                {"cutoff", cutoff}, {"regime", regime == BilinearRegime::x_small ? 0.0 : 1.0}};
  rep.add(lhs, weighted_lp_norm(f, p, 0.0) * weighted_lp_norm(g, q, 0.0));
  return rep;
}

namespace {

// Angular kernel I(r, s) = int_0^pi (r^2 + s^2 - 2 r s cos t)^{-(n-sigma)/2}
// sin^{n-2} t dt.  Closed form in n = 3; graded Gauss-Legendre panels
// otherwise (the integrand peaks at t = 0 when r ~ s).
class AngularKernel {
 public:
  AngularKernel(int n, double sigma) : n_(n), sigma_(sigma) {}

  double operator()(double r, double s) const {
    const double d = std::abs(r - s);
    if (n_ == 3) {
      if (sigma_ == 1.0) return std::log((r + s) / d) / (r * s);
      return (std::pow(d, sigma_ - 1.0) - std::pow(r + s, sigma_ - 1.0)) /
             (r * s * (1.0 - sigma_));
    }
    const double theta_star = std::clamp(d / std::sqrt(r * s), 1e-14, M_PI);
    double acc = panel(r, s, 0.0, theta_star);
    double lo = theta_star;
    while (lo < M_PI) {
      const double hi = std::min(2.0 * lo, M_PI);
      acc += panel(r, s, lo, hi);
      lo = hi;
    }
    return acc;
  }

  // int_{r-delta}^{r+delta} I(r, s) ds to leading order in delta, using the
  // diagonal asymptotics I(r, r +- d) ~ coeff * d^{sigma-1} * r^{-(n-1)}
  // (sigma < 1; log form at sigma = 1, regular kernel for sigma > 1).
  double inner_diagonal(double r, double delta) const {
    if (sigma_ < 1.0) {
      const double coeff = 0.5 * boost::math::tgamma(0.5 * (n_ - 1)) *
                           boost::math::tgamma(0.5 * (1.0 - sigma_)) /
                           boost::math::tgamma(0.5 * (n_ - sigma_));
      return 2.0 * coeff * std::pow(r, 1.0 - n_) * std::pow(delta, sigma_) / sigma_;
    }
    if (sigma_ == 1.0 && n_ == 3)
      return 2.0 * delta * (std::log(2.0 * r / delta) + 1.0) / (r * r);
    return 2.0 * delta * (*this)(r, r + 0.5 * delta);
  }

 private:
  double panel(double r, double s, double a, double b) const {
    // 12-point Gauss-Legendre abscissae/weights on (0,1).
    static const double x[6] = {0.009219682876640378, 0.04794137181476257,
                                0.11504866290284765,  0.20634102285669127,
                                0.31608425050090994,  0.43738329574426554};
    static const double w[6] = {0.023587668193255914, 0.05346966299765922,
                                0.08003916427167311,  0.10158371336153296,
                                0.11674626826917740,  0.12457352290670139};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 6; ++i) {
      for (double u : {mid - half * (1.0 - 2.0 * x[i]), mid + half * (1.0 - 2.0 * x[i])}) {
        const double c = std::cos(u);
        const double q2 = r * r + s * s - 2.0 * r * s * c;
        acc += w[i] * std::pow(std::sin(u), n_ - 2) * std::pow(q2, -0.5 * (n_ - sigma_));
      }
    }
    return acc * half * 2.0;
  }

  int n_;
  double sigma_;
};

// int_0^{S} s^{beta+n-1} |g(s)| I(r, s) ds by graded panels: geometric
// refinement toward the kernel diagonal s = r and toward s = 0 (where the
// power weight may be singular), an analytic leading-order treatment of the
// innermost diagonal segment, and Gauss-Legendre inside each panel.  All
// breakpoints are scale-covariant multiples of r and S so that exact
// dilations of the inputs rescale the quadrature exactly.
double hls_inner(const AngularKernel& kern, const RadialField& g, double r,
                 double beta, int level) {
  const auto& gg = *g.grid;
  const int n = gg.dimension;
  const double S = gg.max_radius;
  const double delta0 = S * std::ldexp(1.0, -30 - 4 * level);
  const double win_lo = r - delta0, win_hi = r + delta0;
  std::vector<double> cuts{delta0};
  const int base_panels = 24 * level;
  for (int i = 1; i <= base_panels; ++i) cuts.push_back(S * i / base_panels);
  // grade toward s = 0
  for (double d = S / base_panels; d > 2.0 * delta0; d *= 0.5) cuts.push_back(d);
  // grade toward the kernel diagonal s = r
  if (r < S) {
    for (double d = S / base_panels; d > delta0; d *= 0.5) {
      if (r - d > delta0) cuts.push_back(r - d);
      if (r + d < S) cuts.push_back(r + d);
    }
    if (win_lo > delta0) cuts.push_back(win_lo);
    if (win_hi < S) cuts.push_back(win_hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  static const double gx[4] = {0.06943184420297371, 0.33000947820757187,
                               0.6699905217924281, 0.9305681557970262};
  static const double gw[4] = {0.17392742256872693, 0.3260725774312731,
                               0.3260725774312731, 0.17392742256872693};

  double acc = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b <= a) continue;
    if (a >= win_lo && b <= win_hi) continue;  // diagonal window, handled analytically
    for (int k = 0; k < 4; ++k) {
      const double s = a + (b - a) * gx[k];
      const double psi = std::pow(s, beta + n - 1) * std::abs(interpolate_radial(g, s));
      if (psi != 0.0) acc += gw[k] * (b - a) * psi * kern(r, s);
    }
  }

  // |s - r| <= delta0: psi ~ psi(r), kernel by its diagonal asymptotics.
  if (r < S && win_lo > delta0) {
    const double psi_r = std::pow(r, beta + n - 1) * std::abs(interpolate_radial(g, r));
    if (psi_r != 0.0) acc += psi_r * kern.inner_diagonal(r, delta0);
  }
  // s in [0, delta0]: psi ~ s^{beta+n-1} |g(0+)|, kernel frozen at s = delta0.
  {
    const double g0 = std::abs(interpolate_radial(g, delta0));
    if (g0 != 0.0 && beta + n > 0.0)
      acc += g0 * std::pow(delta0, beta + n) / (beta + n) * kern(r, delta0);
  }
  return acc;
}

}  // namespace

RatioReport check_hls(const RadialField& f, const RadialField& g, double p, double q,
                      double s, double alpha, double beta) {
  const int n = f.grid->dimension;
  if (g.grid->dimension != n) throw std::invalid_argument("check_hls: dimension mismatch");
  if (!(p >= 1.0) || !(q >= 1.0))
    throw std::invalid_argument("check_hls: hypothesis 1 <= p,q <= inf violated");
  if (!(s > 0.0 && s < n))
    throw std::invalid_argument("check_hls: hypothesis 0 < s < n violated");
  const double pd = n_over_dual(n, p), qd = n_over_dual(n, q);
  if (!(alpha > -pd - 1e-15))
    throw std::invalid_argument("check_hls: hypothesis alpha > -n/p' violated");
  if (!(beta > -qd - 1e-15))
    throw std::invalid_argument("check_hls: hypothesis beta > -n/q' violated");
  const double hsum = 1.0 / p + 1.0 / q;
  if (hsum < 1.0 - 1e-12 || hsum > 1.0 + s + 1e-12)
    throw std::invalid_argument("check_hls: hypothesis 1 <= 1/p + 1/q <= 1+s violated");
  if (std::abs(alpha + beta - n + s + pd + qd) > 1e-9)
    throw std::invalid_argument(
        "check_hls: scaling condition alpha + beta - n + s = -n/p' - n/q' violated");
  int equalities = 0;
  if (p == 1.0) ++equalities;
  if (std::isinf(p)) ++equalities;
  if (q == 1.0) ++equalities;
  if (std::isinf(q)) ++equalities;
  if (std::abs(hsum - (1.0 + s)) <= 1e-12) ++equalities;
  if (equalities > 1)
    throw std::invalid_argument(
        "check_hls: more than one boundary equality among p=1, p=inf, q=1, q=inf, "
        "1/p + 1/q = 1+s");

  const AngularKernel kern(n, s);
  auto lhs_at = [&](int level) {
    const auto& gf = *f.grid;
    double acc = 0.0;
    for (int j = 0; j < f.values.size(); ++j) {
      const double r = gf.nodes[j];
      const double xf = gf.weights[j] * std::pow(r, alpha) * std::abs(f.values[j]);
      if (xf != 0.0) acc += xf * hls_inner(kern, g, r, beta, level);
    }
    // surface areas of S^{n-1} (outer) and S^{n-2} (angular reduction)
    return acc * unit_sphere_area(n) * unit_sphere_area(n - 1);
  };
  const double lhs1 = lhs_at(1);
  const double lhs2 = lhs_at(2);

  RatioReport rep;
  rep.name = "hls";
  rep.params = {{"p", p}, {"q", q}, {"s", s}, {"alpha", alpha}, {"beta", beta}};
  rep.add(lhs2, weighted_lp_norm(f, p, 0.0) * weighted_lp_norm(g, q, 0.0));
  const double change = lhs2 == 0.0 ? 0.0 : std::abs(lhs2 - lhs1) / std::abs(lhs2);
  if (change > 0.01)
    rep.note = "near-diagonal refinement not self-converged (change " +
               std::to_string(change) + ")";
  return rep;
}

RatioReport check_radial_sobolev(const RadialField& u, double s, double alpha,
                                 double beta, double p, double q) {
  const int n = u.grid->dimension;
  // Same hypothesis block as check_hls (duality transfers it verbatim).
  if (!(p >= 1.0) || !(q >= 1.0))
    throw std::invalid_argument("check_radial_sobolev: hypothesis 1 <= p,q <= inf violated");
  if (!(s > 0.0 && s < n))
    throw std::invalid_argument("check_radial_sobolev: hypothesis 0 < s < n violated");
  const double pd = n_over_dual(n, p), qd = n_over_dual(n, q);
  if (!(alpha > -pd - 1e-15))
    throw std::invalid_argument("check_radial_sobolev: hypothesis alpha > -n/p' violated");
  if (!(beta > -qd - 1e-15))
    throw std::invalid_argument("check_radial_sobolev: hypothesis beta > -n/q' violated");
  const double hsum = 1.0 / p + 1.0 / q;
  if (hsum < 1.0 - 1e-12 || hsum > 1.0 + s + 1e-12)
    throw std::invalid_argument(
        "check_radial_sobolev: hypothesis 1 <= 1/p + 1/q <= 1+s violated");
  if (std::abs(alpha + beta - n + s + pd + qd) > 1e-9)
    throw std::invalid_argument(
        "check_radial_sobolev: scaling condition alpha + beta - n + s = -n/p' - n/q' "
        "violated");

  RatioReport rep;
  rep.name = "radial_sobolev";
  rep.params = {{"p", p}, {"q", q}, {"s", s}, {"alpha", alpha}, {"beta", beta}};
  const double lhs = weighted_lp_norm(u, dual_exponent(q), beta);
  const double rhs = weighted_lp_norm(fractional_derivative(u, s), p, -alpha);
  rep.add(lhs, rhs);
  return rep;
}

RatioReport check_uncertainty(const RadialField& f, double alpha, double p, double N) {
  const int n = f.grid->dimension;
  if (!(p > 1.0) || std::isinf(p))
    throw std::invalid_argument("check_uncertainty: hypothesis 1 < p < inf violated");
  if (!(alpha > 0.0 && alpha < n / p))
    throw std::invalid_argument("check_uncertainty: hypothesis 0 < alpha < n/p violated");
  if (!(N > 0.0)) throw std::invalid_argument("check_uncertainty: hypothesis N > 0 violated");

  RatioReport rep;
  rep.name = "uncertainty";
  rep.params = {{"alpha", alpha}, {"p", p}, {"N", N}};
  const double lhs =
      weighted_lp_norm(apply_multiplier(f, MultiplierSymbol::dyadic_lt(N)), p, -alpha);
  const double rhs =
      std::pow(std::hypot(1.0, N), alpha) * bracket_lp_norm(f, p, -alpha);
  rep.add(lhs, rhs);
  return rep;
}

RatioReport uncertainty_sweep(const RadialField& f, double alpha, double p,
                              const std::vector<double>& N_list) {
  RatioReport rep;
  rep.name = "uncertainty_sweep";
  rep.params = {{"alpha", alpha}, {"p", p}};
  // The sweep probes N-uniformity along the scaling family
  // f_N = N^{n/2} f(N x), which lives at spatial scale 1/N and frequency
  // scale N.  A fixed profile would trivially make the ratio decay like
  // N^{-alpha} once P_{<N} saturates; the adapted family keeps both sides
  // comparable across the whole sweep, which is what the estimate's
  // N-dependence actually claims.
  for (double N : N_list) {
    auto one = check_uncertainty(dilate_field_exact(f, 1.0 / N), alpha, p, N);
    rep.add(one.samples[0].lhs, one.samples[0].rhs);
  }
  return rep;
}

RadialField gaussian_free_state(const GridPtr& grid, double amplitude, double a,
                                double t) {
  const complexd denom(1.0, 4.0 * a * t);
  const complexd pref = amplitude * std::pow(denom, -0.5 * grid->dimension);
  return sample_field(grid, [&](double r) { return pref * std::exp(-a * r * r / denom); });
}

RatioReport check_weighted_strichartz(const RadialField& u0,
                                      const std::optional<Trajectory>& G_traj,
                                      const std::vector<double>& times, double eps) {
  const std::vector<double>& ts = G_traj ? G_traj->times : times;
  if (ts.size() < 2)
    throw std::invalid_argument("check_weighted_strichartz: need at least two times");
  auto plan = HankelPlan::get(u0.grid);
  const auto& rho = plan->dual()->nodes;
  const int J = u0.grid->node_count();
  const int M = static_cast<int>(ts.size());

  SpectralField U0 = plan->forward(u0);
  std::vector<Eigen::VectorXcd> Gh;
  if (G_traj) {
    Gh.reserve(static_cast<size_t>(M));
    for (const auto& st : G_traj->states) Gh.push_back(plan->forward(st).values);
  }

  Trajectory traj;
  traj.times = ts;
  for (int m = 0; m < M; ++m) {
    Eigen::VectorXcd uh(J);
    const std::vector<double> head(ts.begin(), ts.begin() + m + 1);
    const auto tw = time_quadrature_weights(head);
    for (int k = 0; k < J; ++k) {
      const double r2 = rho[k] * rho[k];
      complexd v = std::exp(complexd(0.0, -(ts[m] - ts[0]) * r2)) * U0.values[k];
      if (G_traj) {
        complexd duh = 0.0;
        for (int l = 0; l <= m; ++l)
          duh += tw[static_cast<size_t>(l)] *
                 std::exp(complexd(0.0, -(ts[m] - ts[l]) * r2)) * Gh[static_cast<size_t>(l)][k];
        v -= complexd(0.0, 1.0) * duh;
      }
      uh[k] = v;
    }
    SpectralField F(plan->dual());
    F.values = std::move(uh);
    traj.states.push_back(plan->inverse(F));
  }

  RatioReport rep;
  rep.name = "weighted_strichartz";
  rep.params = {{"eps", eps}, {"t0", ts.front()}, {"t1", ts.back()}};
  const double rhs = lp_norm(u0, 2.0) + (G_traj ? n_norm(*G_traj, eps) : 0.0);
  rep.add(s_norm(traj, eps), rhs);
  return rep;
}

RatioReport strichartz_saturation_sweep(const GridPtr& grid, double amplitude, double a,
                                        const std::vector<double>& T_list, double eps,
                                        int steps_per_dyad) {
  RatioReport rep;
  rep.name = "strichartz_saturation";
  rep.params = {{"amplitude", amplitude}, {"a", a}, {"eps", eps}};
  const RadialField u0 = gaussian_free_state(grid, amplitude, a, 0.0);
  const double u0_l2 = lp_norm(u0, 2.0);
  for (size_t i = 0; i < T_list.size(); ++i) {
    const double T = T_list[i];
    if (!(T > 0)) throw std::invalid_argument("strichartz_saturation_sweep: T must be > 0");
    std::vector<double> ts{0.0};
    const double t_min = std::min(0.05, 0.5 * T);
    const double ratio = std::pow(2.0, 1.0 / steps_per_dyad);
    for (double t = t_min; t < T; t *= ratio) ts.push_back(t);
    ts.push_back(T);
    Trajectory traj;
    traj.times = ts;
    for (double t : ts) traj.states.push_back(gaussian_free_state(grid, amplitude, a, t));
    rep.add(s_norm(traj, eps), u0_l2);
    rep.params["T_" + std::to_string(i)] = T;
  }
  return rep;
}

RatioReport check_nonlinear_estimates(const Trajectory& u_traj, const Trajectory& v_traj,
                                      NonlinearVariant variant, double eps) {
  if (u_traj.size() != v_traj.size())
    throw std::invalid_argument("check_nonlinear_estimates: trajectory length mismatch");
  const int M = u_traj.size();
  if (M == 0) throw std::invalid_argument("check_nonlinear_estimates: empty trajectories");
  const int n = u_traj.states[0].grid->dimension;
  const double pw = 4.0 / n;
  const double sD = 0.5 * (1.0 - eps);

  Trajectory lhs_traj;
  lhs_traj.times = u_traj.times;
  double u_factor = 0.0;
  Trajectory v_transformed;
  v_transformed.times = v_traj.times;

  for (int m = 0; m < M; ++m) {
    const auto& u = u_traj.states[m];
    const auto& v = v_traj.states[m];
    RadialField prod(u.grid);
    for (int j = 0; j < prod.values.size(); ++j)
      prod.values[j] = std::pow(std::abs(u.values[j]), pw) * std::abs(v.values[j]);
    switch (variant) {
      case NonlinearVariant::basic:
        lhs_traj.states.push_back(std::move(prod));
        u_factor = std::max(u_factor, lp_norm(u, 2.0));
        v_transformed.states.push_back(v);
        break;
      case NonlinearVariant::refined_1:
        lhs_traj.states.push_back(fractional_derivative(prod, sD));
        u_factor = std::max(u_factor, lp_norm(fractional_derivative(u, 0.25 * n * (1.0 - eps)), 2.0));
        v_transformed.states.push_back(fractional_derivative(v, -sD));
        break;
      case NonlinearVariant::refined_2:
        lhs_traj.states.push_back(fractional_derivative(prod, sD));
        u_factor = std::max(u_factor, lp_norm(fractional_derivative(u, 0.75 * (1.0 - eps)), 2.0));
        v_transformed.states.push_back(
            fractional_derivative(v, (1.0 - eps) * (0.5 - 3.0 / n)));
        break;
    }
  }

  RatioReport rep;
  rep.name = variant == NonlinearVariant::basic
                 ? "nonlinear_basic"
                 : (variant == NonlinearVariant::refined_1 ? "nonlinear_refined_1"
                                                           : "nonlinear_refined_2");
  rep.params = {{"eps", eps}};
  rep.add(n_norm(lhs_traj, eps), std::pow(u_factor, pw) * s_norm(v_transformed, eps));
  return rep;
}

}  // namespace nlsim
