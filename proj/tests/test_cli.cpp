#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlsim/cli.hpp"
#include "nlsim/config.hpp"
#include "nlsim/report.hpp"

using namespace nlsim;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& tag) {
  auto p = fs::temp_directory_path() / ("nlsim_cli_" + tag);
  fs::remove_all(p);
  return p;
}
}  // namespace

TEST_CASE("config text parses, echoes, and rejects unknown keys") {
  auto cfg = parse_config_text(
      "dimension = 4\n"
      "epsilon = paper\n"
      "# comment line\n"
      "grid.J = 128\n"
      "solver.dt = 5e-4\n");
  CHECK(cfg.dimension == 4);
  CHECK(cfg.epsilon_is_paper_preset);
  CHECK(cfg.effective_epsilon() == doctest::Approx(std::pow(4.0, -10.0)).epsilon(1e-14));
  CHECK(cfg.grid_J == 128);
  CHECK(cfg.solver_dt == 5e-4);
  CHECK(cfg.echo().at("epsilon") == "paper");

  CHECK_THROWS_WITH_AS(parse_config_text("dimensio = 4\n"),
                       doctest::Contains("unknown key"), std::exception);
  CHECK_THROWS(parse_config_text("dimension = banana\n"));
  CHECK_THROWS(parse_config_text("just some words\n"));
}

TEST_CASE("config validation enforces the dimensional floor") {
  Config cfg;
  cfg.dimension = 2;
  CHECK_THROWS_WITH_AS(validate_config(cfg), doctest::Contains("n >= 3"), std::exception);
  cfg.dimension = 3;
  cfg.epsilon = 1.5;
  CHECK_THROWS(validate_config(cfg));
  cfg.epsilon = 0.01;
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("csv rendering quotes per RFC rules and is stable") {
  CsvTable t;
  t.name = "demo";
  t.header = {"a", "b"};
  t.rows.push_back({"plain", "with,comma"});
  t.rows.push_back({"with\"quote", "multi\nline"});
  const std::string body = render_csv(t);
  CHECK(body == "a,b\nplain,\"with,comma\"\n\"with\"\"quote\",\"multi\nline\"\n");
  CHECK(render_real(0.1) == render_real(0.1));
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_command({}) == 2);
  CHECK(run_command({"frobnicate"}) == 2);
  CHECK(run_command({"simulate", "--set", "nonsense"}) == 2);
  CHECK(run_command({"simulate", "--set", "grid.J=notanumber"}) == 2);
  CHECK(run_command({"simulate", "--config", "/nonexistent/path.cfg"}) == 2);
  // diagnose with a missing checkpoint is an I/O error
  CHECK(run_command({"diagnose", "--trajectory", "/nonexistent/t.bin"}) == 2);
}

TEST_CASE("weight verification exits 0 on defaults and 1 on the large-eps control") {
  auto out = fresh_dir("weights_ok");
  CHECK(run_command({"verify-weights", "--out", out.string()}) == 0);
  CHECK(fs::exists(out / "weights.csv"));
  CHECK(fs::exists(out / "summary.json"));

  auto bad = fresh_dir("weights_bad");
  CHECK(run_command({"verify-weights", "--out", bad.string(), "--set",
                     "verify.dimensions=3", "--set", "verify.epsilons=0.9"}) == 1);
  const std::string csv = slurp(bad / "weights.csv");
  CHECK(csv.find("false") != std::string::npos);
  CHECK(csv.find("LapLap") != std::string::npos);
}

TEST_CASE("simulate then diagnose reuse identical mass values") {
  auto out = fresh_dir("simdiag");
  CHECK(run_command({"simulate", "--out", out.string(), "--set", "grid.J=128",
                     "--set", "solver.t_end=0.02", "--set",
                     "solver.record_stride=5"}) == 0);
  auto diag = fresh_dir("simdiag_d");
  CHECK(run_command({"diagnose", "--out", diag.string(), "--set", "grid.J=128",
                     "--trajectory", (out / "trajectory.bin").string()}) == 0);

  // the mass column of both CSV bodies must agree row for row
  auto masses = [](const std::string& body) {
    std::vector<std::string> out_;
    std::istringstream is(body);
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
      const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
      out_.push_back(line.substr(c1 + 1, c2 - c1 - 1));
    }
    return out_;
  };
  const auto m_sim = masses(slurp(out / "conservation.csv"));
  const auto m_diag = masses(slurp(diag / "norms.csv"));
  REQUIRE(m_sim.size() == m_diag.size());
  for (size_t i = 0; i < m_sim.size(); ++i) {
    CHECK(std::abs(std::stod(m_sim[i]) - std::stod(m_diag[i])) <=
          1e-12 * std::stod(m_sim[i]));
  }
}

TEST_CASE("CSV bodies are byte-identical across repeated runs and worker counts") {
  auto a = fresh_dir("det_a"), b = fresh_dir("det_b");
  const std::vector<std::string> tail = {"--set", "grid.J=96", "--set",
                                         "solver.t_end=0.01"};
  auto args = [&](const fs::path& o, const std::string& workers) {
    std::vector<std::string> v = {"sweep", "--out", o.string(), "--workers", workers};
    v.insert(v.end(), tail.begin(), tail.end());
    return v;
  };
  CHECK(run_command(args(a, "1")) == 0);
  CHECK(run_command(args(b, "4")) == 0);
  CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));
}
