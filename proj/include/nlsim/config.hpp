#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nlsim/solver.hpp"

namespace nlsim {

/// Flat `block.key = value` configuration.  Unknown keys are hard errors
/// (with line numbers); all values are validated on load.  `epsilon = paper`
/// resolves to n^{-10}.
struct Config {
  int dimension = 3;
  double epsilon = 0.01;
  bool epsilon_is_paper_preset = false;

  // grid block
  double grid_R = 20.0;
  int grid_J = 512;
  GridScheme grid_scheme = GridScheme::bessel_zeros;

  // solver block
  double solver_dt = 1e-3;
  double solver_t_end = 0.5;
  int solver_record_stride = 1;
  SplitScheme solver_scheme = SplitScheme::strang;
  bool solver_dealias = false;
  double solver_mass_tol = 1e-6;
  double solver_energy_tol = 1e-4;

  // initial-data block: gaussian | ring | band_noise
  //   gaussian:   amplitude * exp(-(r/width)^2)
  //   ring:       amplitude * exp(-((r-center)/width)^2)
  //   band_noise: seeded random field band-limited to [band_lo, band_hi]
  std::string initial_profile = "gaussian";
  double initial_amplitude = 2.0;
  double initial_width = 1.0;
  double initial_center = 5.0;
  std::uint64_t initial_seed = 1;
  double initial_band_lo = 1.0;
  double initial_band_hi = 4.0;

  // verification block
  std::uint64_t verify_seed = 0;
  int verify_samples = 10;
  std::vector<double> verify_N_list;        // default: 2^{-4} .. 2^{10}
  std::vector<double> verify_eta_grid;      // default: {0.5, 0.2, 0.1, 0.05, 0.01}
  std::vector<int> verify_dimensions;       // default: {3,4,5,6}
  std::vector<double> verify_epsilons;      // default: {0.001, 0.01, 0.05}
  std::vector<double> verify_T_list;        // default: {1, 10, 100}

  // sweep block (cartesian product)
  std::vector<int> sweep_dimensions;        // default: {3,4,5}
  std::vector<double> sweep_epsilons;       // default: {0.01, 0.05}

  // output block
  std::string output_dir = "out";
  bool output_csv = true;
  bool output_json = true;

  int workers = 1;

  /// Effective epsilon, resolving the `paper` preset against the dimension.
  double effective_epsilon() const;

  /// Flat key -> rendered value map, echoed into every report.
  std::map<std::string, std::string> echo() const;
};

Config load_config(const std::string& path);
Config parse_config_text(const std::string& text, const std::string& origin = "<config>");

/// Applies one `block.key = value` assignment (used for CLI overrides).
void apply_config_entry(Config& cfg, const std::string& key, const std::string& value,
                        const std::string& where);

/// Validates cross-field constraints (dimension >= 3, positive sizes, ...).
void validate_config(const Config& cfg);

/// Builds the configured initial datum on the configured grid.
RadialField make_initial_data(const Config& cfg, const GridPtr& grid);

GridPtr build_grid(const Config& cfg);

}  // namespace nlsim
