#include "nlsim/config.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "nlsim/spectral.hpp"

namespace nlsim {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw std::runtime_error(where + ": " + msg);
}

double parse_real(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    fail(where, "expected a real number, got '" + v + "'");
  }
}

long long parse_int(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    fail(where, "expected an integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& v, const std::string& where) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(where, "expected a boolean, got '" + v + "'");
}

std::vector<double> parse_real_list(const std::string& v, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_real(item, where));
  }
  if (out.empty()) fail(where, "expected a comma-separated list of reals");
  return out;
}

std::vector<int> parse_int_list(const std::string& v, const std::string& where) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(static_cast<int>(parse_int(item, where)));
  }
  if (out.empty()) fail(where, "expected a comma-separated list of integers");
  return out;
}

std::string render_list(const std::vector<double>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::string render_list(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

double Config::effective_epsilon() const {
  if (epsilon_is_paper_preset) return std::pow(static_cast<double>(dimension), -10.0);
  return epsilon;
}

void apply_config_entry(Config& cfg, const std::string& key, const std::string& value,
                        const std::string& where) {
  if (key == "dimension") cfg.dimension = static_cast<int>(parse_int(value, where));
  else if (key == "epsilon") {
    if (value == "paper") {
      cfg.epsilon_is_paper_preset = true;
    } else {
      cfg.epsilon_is_paper_preset = false;
      cfg.epsilon = parse_real(value, where);
    }
  }
  else if (key == "grid.R") cfg.grid_R = parse_real(value, where);
  else if (key == "grid.J") cfg.grid_J = static_cast<int>(parse_int(value, where));
  else if (key == "grid.scheme") {
    if (value == "bessel") cfg.grid_scheme = GridScheme::bessel_zeros;
    else if (value == "uniform") cfg.grid_scheme = GridScheme::uniform;
    else fail(where, "grid.scheme must be 'bessel' or 'uniform'");
  }
  else if (key == "solver.dt") cfg.solver_dt = parse_real(value, where);
  else if (key == "solver.t_end") cfg.solver_t_end = parse_real(value, where);
  else if (key == "solver.record_stride")
    cfg.solver_record_stride = static_cast<int>(parse_int(value, where));
  else if (key == "solver.scheme") {
    if (value == "strang") cfg.solver_scheme = SplitScheme::strang;
    else if (value == "lie") cfg.solver_scheme = SplitScheme::lie;
    else fail(where, "solver.scheme must be 'strang' or 'lie'");
  }
  else if (key == "solver.dealias") cfg.solver_dealias = parse_bool(value, where);
  else if (key == "solver.mass_tol") cfg.solver_mass_tol = parse_real(value, where);
  else if (key == "solver.energy_tol") cfg.solver_energy_tol = parse_real(value, where);
  else if (key == "initial.profile") {
    if (value != "gaussian" && value != "ring" && value != "band_noise")
      fail(where, "initial.profile must be gaussian, ring, or band_noise");
    cfg.initial_profile = value;
  }
  else if (key == "initial.amplitude") cfg.initial_amplitude = parse_real(value, where);
  else if (key == "initial.width") cfg.initial_width = parse_real(value, where);
  else if (key == "initial.center") cfg.initial_center = parse_real(value, where);
  else if (key == "initial.seed")
    cfg.initial_seed = static_cast<std::uint64_t>(parse_int(value, where));
  else if (key == "initial.band_lo") cfg.initial_band_lo = parse_real(value, where);
  else if (key == "initial.band_hi") cfg.initial_band_hi = parse_real(value, where);
  else if (key == "verify.seed")
    cfg.verify_seed = static_cast<std::uint64_t>(parse_int(value, where));
  else if (key == "verify.samples")
    cfg.verify_samples = static_cast<int>(parse_int(value, where));
  else if (key == "verify.N_list") cfg.verify_N_list = parse_real_list(value, where);
  else if (key == "verify.eta_grid") cfg.verify_eta_grid = parse_real_list(value, where);
  else if (key == "verify.dimensions") cfg.verify_dimensions = parse_int_list(value, where);
  else if (key == "verify.epsilons") cfg.verify_epsilons = parse_real_list(value, where);
  else if (key == "verify.T_list") cfg.verify_T_list = parse_real_list(value, where);
  else if (key == "sweep.dimensions") cfg.sweep_dimensions = parse_int_list(value, where);
  else if (key == "sweep.epsilons") cfg.sweep_epsilons = parse_real_list(value, where);
  else if (key == "output.dir") cfg.output_dir = value;
  else if (key == "output.csv") cfg.output_csv = parse_bool(value, where);
  else if (key == "output.json") cfg.output_json = parse_bool(value, where);
  else if (key == "workers") cfg.workers = static_cast<int>(parse_int(value, where));
  else fail(where, "unknown key '" + key + "'");
}

void validate_config(const Config& cfg) {
  const std::string w = "<config>";
  if (cfg.dimension < 3)
    throw std::runtime_error("dimension = " + std::to_string(cfg.dimension) +
                             " rejected: the radial solver requires n >= 3");
  if (!(cfg.effective_epsilon() > 0.0 && cfg.effective_epsilon() < 1.0))
    throw std::runtime_error("epsilon must lie in (0,1)");
  if (!(cfg.grid_R > 0.0)) throw std::runtime_error("grid.R must be positive");
  if (cfg.grid_J < 8) throw std::runtime_error("grid.J must be >= 8");
  if (!(cfg.solver_dt > 0.0)) throw std::runtime_error("solver.dt must be positive");
  if (cfg.solver_record_stride < 1)
    throw std::runtime_error("solver.record_stride must be >= 1");
  if (cfg.verify_samples < 1) throw std::runtime_error("verify.samples must be >= 1");
  if (cfg.workers < 1) throw std::runtime_error("workers must be >= 1");
  if (!(cfg.initial_width > 0.0)) throw std::runtime_error("initial.width must be positive");
  if (cfg.initial_profile == "band_noise" &&
      !(cfg.initial_band_hi > cfg.initial_band_lo && cfg.initial_band_lo >= 0.0))
    throw std::runtime_error("initial band requires 0 <= band_lo < band_hi");
}

Config parse_config_text(const std::string& text, const std::string& origin) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) fail(where, "expected 'block.key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(where, "empty key");
    apply_config_entry(cfg, key, value, where);
  }
  validate_config(cfg);
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

std::map<std::string, std::string> Config::echo() const {
  std::map<std::string, std::string> m;
  auto real = [](double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  };
  m["dimension"] = std::to_string(dimension);
  m["epsilon"] = epsilon_is_paper_preset ? "paper" : real(epsilon);
  m["epsilon.effective"] = real(effective_epsilon());
  m["grid.R"] = real(grid_R);
  m["grid.J"] = std::to_string(grid_J);
  m["grid.scheme"] = grid_scheme == GridScheme::bessel_zeros ? "bessel" : "uniform";
  m["solver.dt"] = real(solver_dt);
  m["solver.t_end"] = real(solver_t_end);
  m["solver.record_stride"] = std::to_string(solver_record_stride);
  m["solver.scheme"] = solver_scheme == SplitScheme::strang ? "strang" : "lie";
  m["solver.dealias"] = solver_dealias ? "true" : "false";
  m["solver.mass_tol"] = real(solver_mass_tol);
  m["solver.energy_tol"] = real(solver_energy_tol);
  m["initial.profile"] = initial_profile;
  m["initial.amplitude"] = real(initial_amplitude);
  m["initial.width"] = real(initial_width);
  m["initial.center"] = real(initial_center);
  m["initial.seed"] = std::to_string(initial_seed);
  m["initial.band_lo"] = real(initial_band_lo);
  m["initial.band_hi"] = real(initial_band_hi);
  m["verify.seed"] = std::to_string(verify_seed);
  m["verify.samples"] = std::to_string(verify_samples);
  if (!verify_N_list.empty()) m["verify.N_list"] = render_list(verify_N_list);
  if (!verify_eta_grid.empty()) m["verify.eta_grid"] = render_list(verify_eta_grid);
  if (!verify_dimensions.empty()) m["verify.dimensions"] = render_list(verify_dimensions);
  if (!verify_epsilons.empty()) m["verify.epsilons"] = render_list(verify_epsilons);
  if (!verify_T_list.empty()) m["verify.T_list"] = render_list(verify_T_list);
  if (!sweep_dimensions.empty()) m["sweep.dimensions"] = render_list(sweep_dimensions);
  if (!sweep_epsilons.empty()) m["sweep.epsilons"] = render_list(sweep_epsilons);
  m["output.dir"] = output_dir;
  m["output.csv"] = output_csv ? "true" : "false";
  m["output.json"] = output_json ? "true" : "false";
  m["workers"] = std::to_string(workers);
  return m;
}

GridPtr build_grid(const Config& cfg) {
  return build_grid(cfg.dimension, cfg.grid_R, cfg.grid_J, cfg.grid_scheme);
}

RadialField make_initial_data(const Config& cfg, const GridPtr& grid) {
  if (cfg.initial_profile == "gaussian") {
    const double A = cfg.initial_amplitude, w = cfg.initial_width;
    return sample_field(grid, [A, w](double r) { return A * std::exp(-(r / w) * (r / w)); });
  }
  if (cfg.initial_profile == "ring") {
    const double A = cfg.initial_amplitude, w = cfg.initial_width, c = cfg.initial_center;
    return sample_field(grid, [A, w, c](double r) {
      const double z = (r - c) / w;
      return A * std::exp(-z * z);
    });
  }
  // band_noise: seeded gaussian envelope times a smooth band projection.
  std::mt19937_64 rng(cfg.initial_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RadialField base(grid);
  for (int t = 0; t < 4; ++t) {
    const complexd amp(2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0);
    const double sigma = 0.5 + 1.5 * unit(rng);
    for (int j = 0; j < base.values.size(); ++j) {
      const double r = grid->nodes[j];
      base.values[j] += amp * std::exp(-r * r / (2.0 * sigma * sigma));
    }
  }
  const double lo = cfg.initial_band_lo, hi = cfg.initial_band_hi;
  const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
  auto sym = MultiplierSymbol::custom([mid, hw](double rho) -> complexd {
    const double z = (rho - mid) / (0.35 * hw);
    return std::exp(-z * z);
  });
  RadialField f = apply_multiplier(base, sym);
  const double A = cfg.initial_amplitude;
  double peak = 0.0;
  for (int j = 0; j < f.values.size(); ++j) peak = std::max(peak, std::abs(f.values[j]));
  if (peak > 0) f.values *= A / peak;
  return f;
}

}  // namespace nlsim
