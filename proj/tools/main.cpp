// Command-line driver: structural verification, 1D simulations, and the two
// limit experiments (relaxation sweep against the NSF reference, decay to
// equilibrium).

#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "gbflow/experiments.hpp"

namespace fs = std::filesystem;
using namespace gbflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNumericalAbort = 3;

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  return load_json_file(path);
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  out << text;
}

int cmd_verify(const json& cfg_json, const fs::path& out_dir, std::uint64_t seed) {
  VerifyConfig cfg;
  cfg.seed = seed;
  if (cfg_json.contains("eos")) from_json_into(cfg_json.at("eos"), cfg.eos);
  if (cfg_json.contains("relax")) from_json_into(cfg_json.at("relax"), cfg.rp);
  if (cfg_json.contains("state")) {
    cfg.rho = cfg_json.at("state").value("rho", 1.0);
    cfg.theta = cfg_json.at("state").value("theta", 1.0);
  }
  cfg.source_on = cfg_json.value("source", "on") != "off";

  const StructureReport rep = run_verify(cfg);
  write_text(out_dir / "report.json", report_to_json(rep).dump(2) + "\n");

  auto line = [](const char* name, double value, bool pass) {
    std::printf("  %-22s %14.6e   %s\n", name, value, pass ? "pass" : "FAIL");
  };
  std::printf("structural checks at rho = %g, theta = %g:\n", cfg.rho, cfg.theta);
  line("symmetry residual", rep.symmetry_residual, rep.symmetry_pass);
  line("min eig D^2X0", rep.min_eig_h0, rep.spd_pass);
  line("kawashima margin", rep.kawashima_margin, rep.kawashima_pass);
  line("max eig sym(DI)", rep.dissipativity_max, rep.dissipativity_pass);
  std::printf("overall: %s\n", rep.all_pass() ? "pass" : "FAIL");
  return rep.all_pass() ? kExitOk : kExitCheckFailed;
}

int cmd_simulate(const json& cfg_json, const fs::path& out_dir) {
  SimConfig cfg = sim_config_from_json(cfg_json);
  const Trajectory traj = run_simulation(cfg);
  const fs::path dir = out_dir / "snapshots";
  for (size_t k = 0; k < traj.times.size(); ++k) {
    char name[64];
    std::snprintf(name, sizeof(name), "snapshot_%04zu.csv", k);
    write_snapshot_csv((dir / name).string(), traj.snapshots[k]);
  }
  std::printf("%s: %zu snapshots written to %s (t_end = %g, mu_eff = %g, kappa = %g)\n",
              cfg.model.c_str(), traj.times.size(), dir.string().c_str(), cfg.t_end,
              NsfCoeffs::from(cfg.relax).mu_eff(), NsfCoeffs::from(cfg.relax).kappa());
  return kExitOk;
}

int cmd_relax_sweep(const json& cfg_json, const fs::path& out_dir) {
  SimConfig cfg = sim_config_from_json(cfg_json);
  std::vector<double> epsilons = {0.02, 0.01, 0.005, 0.0025};
  if (cfg_json.contains("epsilons")) epsilons = cfg_json.at("epsilons").get<std::vector<double>>();

  const std::vector<SweepRow> rows = run_relax_sweep(cfg, epsilons);
  std::vector<std::vector<double>> csv;
  PlotSeries series{"L2 distance to NSF", {}, {}};
  std::printf("%12s %14s %14s %14s %14s %10s\n", "epsilon", "d_rho", "d_u", "d_theta",
              "d_total", "order");
  for (const auto& r : rows) {
    csv.push_back({r.epsilon, r.dist_rho, r.dist_u, r.dist_theta, r.dist_total, r.fitted_order});
    series.x.push_back(r.epsilon);
    series.y.push_back(r.dist_total);
    std::printf("%12g %14.6e %14.6e %14.6e %14.6e %10.3f\n", r.epsilon, r.dist_rho, r.dist_u,
                r.dist_theta, r.dist_total, r.fitted_order);
  }
  write_csv((out_dir / "sweep.csv").string(),
            {"epsilon", "dist_rho", "dist_u", "dist_theta", "dist_total", "fitted_order"}, csv);
  write_svg_plot((out_dir / "sweep.svg").string(), "relaxation limit: distance to NSF",
                 "epsilon", "L2 distance", {series}, true, true);
  return kExitOk;
}

int cmd_decay(const json& cfg_json, const fs::path& out_dir) {
  SimConfig cfg = sim_config_from_json(cfg_json);
  double amplitude = cfg.ic.amplitude;
  if (cfg_json.contains("decay"))
    amplitude = cfg_json.at("decay").value("amplitude", amplitude);

  const DecayResult res = run_decay(cfg, amplitude);
  std::vector<std::vector<double>> csv;
  PlotSeries total{"total", {}, {}}, eq{"(rho,u,theta)", {}, {}}, diss{"(Sigma,sigma,q)", {}, {}};
  for (const auto& r : res.rows) {
    csv.push_back({r.t, r.total, r.equilibrium, r.dissipative});
    total.x.push_back(r.t);
    total.y.push_back(r.total);
    eq.x.push_back(r.t);
    eq.y.push_back(r.equilibrium);
    diss.x.push_back(r.t);
    diss.y.push_back(r.dissipative);
  }
  write_csv((out_dir / "decay.csv").string(), {"t", "dev_total", "dev_eq", "dev_diss"}, csv);
  write_svg_plot((out_dir / "decay.svg").string(), "decay to equilibrium", "t",
                 "deviation norm", {total, eq, diss}, false, true);
  std::printf("decay: %zu samples, tail fit rate = %.6g (R^2 = %.4f)\n", res.rows.size(),
              res.fitted_rate, res.r_squared);
  if (!res.rows.empty())
    std::printf("initial deviation %.6e, final deviation %.6e\n", res.rows.front().total,
                res.rows.back().total);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetric-hyperbolic relaxation model of viscous heat-conductive fluids"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the global options after the subcommand too

  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON configuration file")->capture_default_str();
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", seed, "RNG seed for random test directions")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "structural checks at an equilibrium state");
  auto* simulate = app.add_subcommand("simulate", "run the 1D solver (rshs or nsf model)");
  auto* sweep = app.add_subcommand("relax-sweep", "epsilon sweep against the NSF reference");
  auto* decay = app.add_subcommand("decay", "decay of a small perturbation to equilibrium");

  CLI11_PARSE(app, argc, argv);

  try {
    const json cfg = load_config(config_path);
    const fs::path out(out_dir);
    if (verify->parsed()) return cmd_verify(cfg, out, seed);
    if (simulate->parsed()) return cmd_simulate(cfg, out);
    if (sweep->parsed()) return cmd_relax_sweep(cfg, out);
    if (decay->parsed()) return cmd_decay(cfg, out);
  } catch (const InversionError& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kExitNumericalAbort;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const json::exception& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kExitNumericalAbort;
  }
  return kExitInvalidInput;
}
