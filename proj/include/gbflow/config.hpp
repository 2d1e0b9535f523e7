#pragma once

#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gbflow/nsf.hpp"
#include "gbflow/solver1d.hpp"

namespace gbflow {

using nlohmann::json;

/// Sampler signature: x -> (rho, u, theta).
using InitialData = std::function<void(double, double&, Vec3&, double&)>;

struct IcConfig {
  std::string type{"density_sine"};
  double amplitude{0.05};
  std::string path;  ///< for type == "custom_json"
};

struct OutputConfig {
  double every{0.0};  ///< snapshot interval; 0 = first and last only
  std::string path{"out"};
};

struct SimConfig {
  IdealGasEos eos{};
  RelaxationParams relax{};
  Grid1D grid{};
  double t_end{0.1};
  double cfl{0.5};
  int order{2};
  std::string model{"rshs"};  ///< "rshs" or "nsf"
  IcConfig ic{};
  OutputConfig output{};

  void validate() const {
    eos.validate();
    relax.validate();
    grid.validate();
    if (!(t_end > 0.0)) throw std::domain_error("config: t_end must be positive");
    if (!(cfl > 0.0 && cfl <= 0.9)) throw std::domain_error("config: cfl must lie in (0, 0.9]");
    if (order != 1 && order != 2) throw std::domain_error("config: order must be 1 or 2");
    if (model != "rshs" && model != "nsf") throw std::domain_error("config: unknown model");
  }
};

inline void from_json_into(const json& j, IdealGasEos& eos) {
  eos.gamma = j.value("gamma", eos.gamma);
  eos.R = j.value("R", eos.R);
  eos.p_ref = j.value("p_ref", eos.p_ref);
}

inline void from_json_into(const json& j, RelaxationParams& rp) {
  if (j.contains("tau")) {
    const auto& t = j.at("tau");
    if (!t.is_array() || t.size() != 3)
      throw std::domain_error("config: relax.tau must be a 3-array");
    rp.tau0_bar = t[0].get<double>();
    rp.tau1_bar = t[1].get<double>();
    rp.tau2_bar = t[2].get<double>();
  }
  rp.epsilon = j.value("epsilon", rp.epsilon);
  rp.eta = j.value("eta", rp.eta);
  rp.zeta = j.value("zeta", rp.zeta);
  rp.chi = j.value("chi", rp.chi);
}

inline SimConfig sim_config_from_json(const json& j) {
  SimConfig c;
  if (j.contains("eos")) from_json_into(j.at("eos"), c.eos);
  if (j.contains("relax")) from_json_into(j.at("relax"), c.relax);
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    c.grid.n = g.value("n", c.grid.n);
    c.grid.xmin = g.value("xmin", c.grid.xmin);
    c.grid.xmax = g.value("xmax", c.grid.xmax);
  }
  if (j.contains("time")) {
    const auto& t = j.at("time");
    c.t_end = t.value("t_end", c.t_end);
    c.cfl = t.value("cfl", c.cfl);
  }
  c.order = j.value("order", c.order);
  c.model = j.value("model", c.model);
  if (j.contains("ic")) {
    const auto& ic = j.at("ic");
    c.ic.type = ic.value("type", c.ic.type);
    c.ic.amplitude = ic.value("amplitude", c.ic.amplitude);
    c.ic.path = ic.value("path", c.ic.path);
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    c.output.every = o.value("every", c.output.every);
    c.output.path = o.value("path", c.output.path);
  }
  c.validate();
  return c;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open config file: " + path);
  return json::parse(in);
}

/// JSON form of a laboratory state:
/// {"rho":., "u":[.,.,.], "theta":., "Sigma":[s1..s5], "sigma":., "q":[.,.,.]}.
inline json to_json(const PhysicalState& p) {
  return json{{"rho", p.rho},
              {"u", {p.u[0], p.u[1], p.u[2]}},
              {"theta", p.theta},
              {"Sigma", {p.Sigma[0], p.Sigma[1], p.Sigma[2], p.Sigma[3], p.Sigma[4]}},
              {"sigma", p.sigma},
              {"q", {p.q[0], p.q[1], p.q[2]}}};
}

inline PhysicalState physical_state_from_json(const json& j) {
  PhysicalState p;
  p.rho = j.value("rho", 1.0);
  p.theta = j.value("theta", 1.0);
  p.sigma = j.value("sigma", 0.0);
  if (j.contains("u"))
    for (int a = 0; a < 3; ++a) p.u[a] = j.at("u").at(a).get<double>();
  if (j.contains("Sigma"))
    for (int m = 0; m < 5; ++m) p.Sigma[m] = j.at("Sigma").at(m).get<double>();
  if (j.contains("q"))
    for (int a = 0; a < 3; ++a) p.q[a] = j.at("q").at(a).get<double>();
  return p;
}

/// Shipped initial conditions. All fields depend on x alone and are periodic
/// on [xmin, xmax].
inline InitialData make_initial_data(const IcConfig& ic, const Grid1D& grid,
                                     const IdealGasEos& eos) {
  const double L = grid.xmax - grid.xmin;
  const double x0 = grid.xmin;
  if (ic.type == "density_sine") {
    const double A = ic.amplitude;
    return [=](double x, double& rho, Vec3& u, double& theta) {
      rho = 1.0 + A * std::sin(2.0 * M_PI * (x - x0) / L);
      u.setZero();
      theta = 1.0;
    };
  }
  if (ic.type == "acoustic_pulse") {
    const double A = ic.amplitude;
    const double c0 = std::sqrt(eos.gamma * eos.R);
    const double g1 = eos.gamma - 1.0;
    return [=](double x, double& rho, Vec3& u, double& theta) {
      const double d = A * std::sin(2.0 * M_PI * (x - x0) / L);
      rho = 1.0 + d;  // right-moving simple-wave perturbation
      u = Vec3(c0 * d, 0.0, 0.0);
      theta = 1.0 + g1 * d;
    };
  }
  if (ic.type == "decay_perturbation") {
    const double A = ic.amplitude;
    return [=](double x, double& rho, Vec3& u, double& theta) {
      const double s = 2.0 * M_PI * (x - x0) / L;
      rho = 1.0 + A * std::sin(s);
      u = Vec3(A * std::cos(s), 0.0, 0.0);
      theta = 1.0 + A * std::sin(2.0 * s);
    };
  }
  if (ic.type == "custom_json") {
    const json j = load_json_file(ic.path);
    auto rho = j.at("rho").get<std::vector<double>>();
    auto u1 = j.at("u1").get<std::vector<double>>();
    auto theta = j.at("theta").get<std::vector<double>>();
    if ((int)rho.size() != grid.n || (int)u1.size() != grid.n || (int)theta.size() != grid.n)
      throw std::domain_error("custom_json ic: arrays must have grid.n entries");
    const double dx = grid.dx();
    return [=, rho = std::move(rho), u1 = std::move(u1),
            theta = std::move(theta)](double x, double& r, Vec3& u, double& th) {
      int i = (int)std::floor((x - x0) / dx);
      i = std::clamp(i, 0, (int)rho.size() - 1);
      r = rho[i];
      u = Vec3(u1[i], 0.0, 0.0);
      th = theta[i];
    };
  }
  throw std::domain_error("unknown ic type: " + ic.type);
}

}  // namespace gbflow
