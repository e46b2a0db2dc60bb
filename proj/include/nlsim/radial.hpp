#pragma once

#include <complex>
#include <memory>
#include <stdexcept>

#include <Eigen/Dense>

namespace nlsim {

using complexd = std::complex<double>;

enum class GridScheme { bessel_zeros, uniform };

/// Radial discretization of R^n restricted to spherically symmetric
/// functions.  Nodes live in (0, R]; weights realize the measure
/// r^{n-1} dr, so that surface_area * sum_j w_j f(r_j) ~ int_{R^n} f dx.
struct RadialGrid {
  int dimension = 3;
  double max_radius = 0.0;
  GridScheme scheme = GridScheme::uniform;
  Eigen::VectorXd nodes;    // strictly increasing, in (0, R]
  Eigen::VectorXd weights;  // strictly positive
  double surface_area = 0.0;  // omega_{n-1} = 2 pi^{n/2} / Gamma(n/2)
  double quad_tol = 0.0;      // stated quadrature tolerance for smooth fields

  int node_count() const { return static_cast<int>(nodes.size()); }
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Complex samples of a spherically symmetric function at the grid nodes.
struct RadialField {
  GridPtr grid;
  Eigen::VectorXcd values;

  RadialField() = default;
  explicit RadialField(GridPtr g) : grid(std::move(g)) {
    values = Eigen::VectorXcd::Zero(grid->node_count());
  }
  RadialField(GridPtr g, Eigen::VectorXcd v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid->node_count())
      throw std::invalid_argument("RadialField: values length != node count");
  }
};

double unit_sphere_area(int n);

/// Builds a radial grid.  `bessel_zeros` places nodes at scaled zeros of
/// J_{n/2-1} (pairs with the discrete Hankel transform); `uniform` places
/// midpoint nodes with endpoint-corrected composite weights (oracle path).
GridPtr build_grid(int n, double R, int J, GridScheme scheme);

/// omega_{n-1} * sum_j w_j f(r_j), approximating int_{R^n} f dx.
complexd integrate(const RadialField& f);

/// || |x|^gamma f ||_{L^p(R^n)} via the grid quadrature.  p = INFINITY
/// returns the node-wise sup of r^gamma |f|.
double weighted_lp_norm(const RadialField& f, double p, double gamma);

/// Same but with the inhomogeneous weight <x>^gamma = (1+|x|^2)^{gamma/2}.
double bracket_lp_norm(const RadialField& f, double p, double gamma);

inline double lp_norm(const RadialField& f, double p) {
  return weighted_lp_norm(f, p, 0.0);
}

/// Pointwise map helper: g(r_j) = fn(r_j, f(r_j)).
template <typename Fn>
RadialField map_field(const RadialField& f, Fn&& fn) {
  RadialField out(f.grid);
  for (int j = 0; j < f.values.size(); ++j)
    out.values[j] = fn(f.grid->nodes[j], f.values[j]);
  return out;
}

/// Samples a scalar function of radius onto a grid.
template <typename Fn>
RadialField sample_field(const GridPtr& grid, Fn&& fn) {
  RadialField out(grid);
  for (int j = 0; j < out.values.size(); ++j) out.values[j] = fn(grid->nodes[j]);
  return out;
}

/// Cubic (4-point Lagrange) interpolation of a radial field at radius r,
/// using an even extension below the first node and zero beyond R.
complexd interpolate_radial(const RadialField& f, double r);

/// lambda^{-n/2} f(r/lambda) resampled onto the same grid.
RadialField dilate_field(const RadialField& f, double lambda);

/// lambda^{-n/2} f(r/lambda) represented exactly on the dilated grid
/// (same scheme and node count, max_radius scaled by lambda).  No
/// interpolation: node j of the new grid sits at lambda * r_j, where the
/// dilated function equals lambda^{-n/2} f(r_j).  For power-of-two lambda
/// every node, weight, and value scales exactly in floating point, which
/// makes grid functionals of the dilate reproduce their scaling laws to
/// round-off.
RadialField dilate_field_exact(const RadialField& f, double lambda);

/// Fraction of |f|^2 mass carried by the outermost `frac` of the radius.
double boundary_mass_fraction(const RadialField& f, double frac = 0.05);

}  // namespace nlsim
