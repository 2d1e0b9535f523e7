#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "gbflow/experiments.hpp"

// End-to-end checks of the command-line driver: exit codes, output files and
// determinism, plus the experiment drivers behind it. The binary path is
// injected by the build.

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kCli = GBFLOW_CLI_PATH;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("gbflow_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
  const std::string cmd = std::string(kCli) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return json::parse(in);
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("verify: default run passes and writes a report") {
  TempDir tmp("verify");
  CHECK(run("verify --out " + tmp.path.string()) == 0);
  const json rep = read_json(tmp.path / "report.json");
  CHECK(rep.at("all_pass").get<bool>());
  CHECK(rep.at("kawashima").at("margin").get<double>() > 1e-8);
  CHECK(rep.at("spd").at("min_eig").get<double>() > 0.0);
}

TEST_CASE("verify: switched-off source fails the coupling check with exit 1") {
  TempDir tmp("verify_off");
  write_file(tmp.path / "cfg.json", R"({"source": "off"})");
  CHECK(run("--config " + (tmp.path / "cfg.json").string() + " verify --out " +
            tmp.path.string()) == 1);
  const json rep = read_json(tmp.path / "report.json");
  CHECK_FALSE(rep.at("all_pass").get<bool>());
}

TEST_CASE("invalid configuration exits with code 2") {
  TempDir tmp("invalid");
  write_file(tmp.path / "bad_state.json", R"({"state": {"theta": -1.0}})");
  CHECK(run("--config " + (tmp.path / "bad_state.json").string() + " verify --out " +
            tmp.path.string()) == 2);
  write_file(tmp.path / "bad_model.json", R"({"model": "euler"})");
  CHECK(run("--config " + (tmp.path / "bad_model.json").string() + " simulate --out " +
            tmp.path.string()) == 2);
  write_file(tmp.path / "bad_json.json", "{not json");
  CHECK(run("--config " + (tmp.path / "bad_json.json").string() + " verify --out " +
            tmp.path.string()) == 2);
  CHECK(run("--config " + (tmp.path / "missing.json").string() + " verify --out " +
            tmp.path.string()) == 2);
}

TEST_CASE("simulate writes snapshots for both models") {
  TempDir tmp("simulate");
  const std::string cfg = R"({
    "grid": {"n": 32},
    "time": {"t_end": 0.01},
    "relax": {"epsilon": 0.05, "eta": 0.1, "zeta": 0.1, "chi": 0.1},
    "ic": {"type": "density_sine", "amplitude": 0.05}
  })";
  write_file(tmp.path / "cfg.json", cfg);
  CHECK(run("--config " + (tmp.path / "cfg.json").string() + " simulate --out " +
            (tmp.path / "rshs").string()) == 0);
  CHECK(fs::exists(tmp.path / "rshs" / "snapshots" / "snapshot_0000.csv"));
  CHECK(fs::exists(tmp.path / "rshs" / "snapshots" / "snapshot_0001.csv"));
  const std::string header =
      read_text(tmp.path / "rshs" / "snapshots" / "snapshot_0000.csv").substr(0, 31);
  CHECK(header == "x,rho,u1,theta,Sigma11,sigma,q1");

  write_file(tmp.path / "cfg_nsf.json",
             json::parse(cfg).patch(json::parse(R"([{"op":"add","path":"/model","value":"nsf"}])"))
                 .dump());
  CHECK(run("--config " + (tmp.path / "cfg_nsf.json").string() + " simulate --out " +
            (tmp.path / "nsf").string()) == 0);
  CHECK(fs::exists(tmp.path / "nsf" / "snapshots" / "snapshot_0001.csv"));
}

TEST_CASE("simulate output is deterministic") {
  TempDir tmp("determinism");
  const std::string cfg = R"({
    "grid": {"n": 24},
    "time": {"t_end": 0.005},
    "relax": {"epsilon": 0.05, "eta": 0.1, "zeta": 0.1, "chi": 0.1}
  })";
  write_file(tmp.path / "cfg.json", cfg);
  REQUIRE(run("--config " + (tmp.path / "cfg.json").string() + " simulate --out " +
              (tmp.path / "a").string()) == 0);
  REQUIRE(run("--config " + (tmp.path / "cfg.json").string() + " simulate --out " +
              (tmp.path / "b").string()) == 0);
  CHECK(read_text(tmp.path / "a" / "snapshots" / "snapshot_0001.csv") ==
        read_text(tmp.path / "b" / "snapshots" / "snapshot_0001.csv"));
}

TEST_CASE("decay: zero amplitude stays at equilibrium") {
  TempDir tmp("decay0");
  const std::string cfg = R"({
    "grid": {"n": 16},
    "time": {"t_end": 0.05},
    "relax": {"epsilon": 0.2, "eta": 0.1, "zeta": 0.1, "chi": 0.1},
    "decay": {"amplitude": 0.0}
  })";
  write_file(tmp.path / "cfg.json", cfg);
  CHECK(run("--config " + (tmp.path / "cfg.json").string() + " decay --out " +
            tmp.path.string()) == 0);
  // every sampled deviation stays at round-off
  std::ifstream in(tmp.path / "decay.csv");
  std::string line;
  std::getline(in, line);  // header
  int rows = 0;
  while (std::getline(in, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    CHECK(std::stod(line.substr(c1 + 1, c2 - c1 - 1)) <= 1e-12);
    ++rows;
  }
  CHECK(rows >= 2);
  CHECK(fs::exists(tmp.path / "decay.svg"));
}

TEST_CASE("relax-sweep writes the table and the plot") {
  TempDir tmp("sweep");
  const std::string cfg = R"({
    "grid": {"n": 48},
    "time": {"t_end": 0.02},
    "relax": {"eta": 0.5, "zeta": 0.5, "chi": 0.5},
    "ic": {"type": "density_sine", "amplitude": 0.05},
    "epsilons": [0.04, 0.02]
  })";
  write_file(tmp.path / "cfg.json", cfg);
  CHECK(run("--config " + (tmp.path / "cfg.json").string() + " relax-sweep --out " +
            tmp.path.string()) == 0);
  const std::string csv = read_text(tmp.path / "sweep.csv");
  CHECK(csv.rfind("epsilon,dist_rho,dist_u,dist_theta,dist_total,fitted_order", 0) == 0);
  CHECK(fs::exists(tmp.path / "sweep.svg"));
}

TEST_CASE("decay: the dissipative group decays at least as fast as the total") {
  gbflow::SimConfig cfg;
  cfg.relax.epsilon = 0.2;
  cfg.relax.eta = cfg.relax.zeta = cfg.relax.chi = 0.1;
  cfg.grid = gbflow::Grid1D{32, 0.0, 1.0};
  cfg.t_end = 2.0;
  const gbflow::DecayResult res = gbflow::run_decay(cfg, 1e-3);
  REQUIRE(res.rows.size() >= 10);
  const auto& first = res.rows.front();
  const auto& last = res.rows.back();
  CHECK(last.total < first.total);
  CHECK(last.dissipative / last.total <= 1.05 * first.dissipative / first.total);
}

TEST_CASE("equal-model control: the NSF run has zero distance to itself") {
  gbflow::SimConfig cfg;
  cfg.model = "nsf";
  cfg.grid = gbflow::Grid1D{32, 0.0, 1.0};
  cfg.t_end = 0.01;
  cfg.relax.eta = cfg.relax.zeta = cfg.relax.chi = 0.1;
  const gbflow::SnapshotColumns a = gbflow::run_nsf(cfg).snapshots.back();
  const gbflow::SnapshotColumns b = gbflow::run_nsf(cfg).snapshots.back();
  const gbflow::NormScales sc = gbflow::NormScales::from(cfg.eos);
  const gbflow::DeviationNorms d = gbflow::deviation_norms(a, b, sc, cfg.grid.dx());
  CHECK(d.total == 0.0);
}

TEST_CASE("unknown subcommand or missing subcommand is a usage error") {
  CHECK(run("") != 0);
  CHECK(run("frobnicate") != 0);
}
