#pragma once

#include <random>

#include "gbflow/config.hpp"
#include "gbflow/io.hpp"
#include "gbflow/structure.hpp"

namespace gbflow {

// ---------------------------------------------------------------------------
// snapshots

inline SnapshotColumns snapshot_columns(const Field1D& f, const IdealGasEos& eos,
                                        const RelaxationParams& rp) {
  SnapshotColumns s;
  const int n = f.grid.n;
  for (int i = 0; i < n; ++i) {
    const PhysicalState p = from_godunov(f.Y[i], eos, rp);
    s.x.push_back(f.grid.x_center(i));
    s.rho.push_back(p.rho);
    s.u1.push_back(p.u[0]);
    s.theta.push_back(p.theta);
    s.Sigma11.push_back(unpack_dev(p.Sigma)(0, 0));
    s.sigma.push_back(p.sigma);
    s.q1.push_back(p.q[0]);
  }
  return s;
}

inline SnapshotColumns snapshot_columns(const NsfField& f, const IdealGasEos& eos,
                                        const NsfCoeffs& cf) {
  SnapshotColumns s;
  const int n = f.grid.n;
  std::vector<double> u(n), theta(n);
  for (int i = 0; i < n; ++i) {
    u[i] = f.mom[i] / f.rho[i];
    theta[i] = (f.E[i] / f.rho[i] - 0.5 * u[i] * u[i]) / eos.cv();
  }
  const NsfClosure cl = nsf_closure(u, theta, cf, f.grid);
  for (int i = 0; i < n; ++i) {
    s.x.push_back(f.grid.x_center(i));
    s.rho.push_back(f.rho[i]);
    s.u1.push_back(u[i]);
    s.theta.push_back(theta[i]);
    s.Sigma11.push_back(cl.Sigma11[i]);
    s.sigma.push_back(cl.sigma[i]);
    s.q1.push_back(cl.q1[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// mixed-unit norms, z-scored by the reference-state magnitudes

struct NormScales {
  double rho0{1.0}, theta0{1.0}, c0{1.0}, p0{1.0};
  static NormScales from(const IdealGasEos& eos, double rho0 = 1.0, double theta0 = 1.0) {
    NormScales s;
    s.rho0 = rho0;
    s.theta0 = theta0;
    s.c0 = std::sqrt(eos.gamma * eos.R * theta0);
    s.p0 = rho0 * eos.R * theta0;
    return s;
  }
};

struct DeviationNorms {
  double total{0.0}, equilibrium{0.0}, dissipative{0.0};
};

/// Discrete L2 deviation of snapshot a from snapshot b, per variable group.
inline DeviationNorms deviation_norms(const SnapshotColumns& a, const SnapshotColumns& b,
                                      const NormScales& sc, double dx) {
  double eq = 0.0, diss = 0.0;
  for (size_t i = 0; i < a.x.size(); ++i) {
    const double dr = (a.rho[i] - b.rho[i]) / sc.rho0;
    const double du = (a.u1[i] - b.u1[i]) / sc.c0;
    const double dth = (a.theta[i] - b.theta[i]) / sc.theta0;
    const double ds = (a.Sigma11[i] - b.Sigma11[i]) / sc.p0;
    const double db = (a.sigma[i] - b.sigma[i]) / sc.p0;
    const double dq = (a.q1[i] - b.q1[i]) / (sc.p0 * sc.c0);
    eq += dr * dr + du * du + dth * dth;
    diss += ds * ds + db * db + dq * dq;
  }
  DeviationNorms out;
  out.equilibrium = std::sqrt(eq * dx);
  out.dissipative = std::sqrt(diss * dx);
  out.total = std::sqrt((eq + diss) * dx);
  return out;
}

inline SnapshotColumns uniform_reference_snapshot(const Grid1D& grid, double rho0,
                                                  double theta0) {
  SnapshotColumns s;
  for (int i = 0; i < grid.n; ++i) {
    s.x.push_back(grid.x_center(i));
    s.rho.push_back(rho0);
    s.u1.push_back(0.0);
    s.theta.push_back(theta0);
    s.Sigma11.push_back(0.0);
    s.sigma.push_back(0.0);
    s.q1.push_back(0.0);
  }
  return s;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyConfig {
  IdealGasEos eos{};
  RelaxationParams rp{};
  double rho{1.0};
  double theta{1.0};
  bool source_on{true};
  int n_random_dirs{5};
  std::uint64_t seed{0};
};

inline Vec3 random_unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec3 n;
  do {
    n = Vec3(gauss(rng), gauss(rng), gauss(rng));
  } while (n.norm() < 1e-8);
  return n.normalized();
}

inline StructureReport run_verify(const VerifyConfig& cfg) {
  cfg.eos.validate();
  cfg.rp.validate();
  if (!(cfg.rho > 0.0) || !(cfg.theta > 0.0))
    throw std::domain_error("verify: reference state needs rho > 0, theta > 0");
  const Vec14 Y = equilibrium_godunov(cfg.rho, cfg.theta, cfg.eos);

  std::vector<Vec3> dirs = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  std::mt19937_64 rng(cfg.seed);
  for (int k = 0; k < cfg.n_random_dirs; ++k) dirs.push_back(random_unit_vector(rng));

  StructureReport rep;
  const Mat14 H0 = hess_x0(Y, cfg.eos, cfg.rp);
  rep.symmetry_residual = (H0 - H0.transpose()).norm() / H0.norm();
  for (const Vec3& n : dirs) {
    const Mat14 Hn = hess_x_dir(Y, n, cfg.eos, cfg.rp);
    rep.symmetry_residual = std::max(
        rep.symmetry_residual, (Hn - Hn.transpose()).norm() / std::max(Hn.norm(), 1e-300));
  }
  rep.symmetry_pass = rep.symmetry_residual <= rep.symmetry_tol;

  const SpdResult spd = check_spd(Y, cfg.eos, cfg.rp, rep.spd_tol);
  rep.min_eig_h0 = spd.min_eig;
  rep.spd_pass = spd.pass;

  rep.kawashima_margin = std::numeric_limits<double>::infinity();
  rep.kawashima_pass = true;
  for (const Vec3& n : dirs) {
    const KawashimaResult kr = kawashima_check(Y, n, cfg.eos, cfg.rp, rep.cluster_tol,
                                               rep.rank_tol, cfg.source_on);
    rep.kawashima_margin = std::min(rep.kawashima_margin, kr.margin);
    rep.kawashima_pass = rep.kawashima_pass && kr.pass;
  }

  const DissipativityResult dr = check_dissipativity(Y, cfg.rp);
  rep.dissipativity_max = dr.max_eig_sym;
  rep.dissipativity_pass = dr.pass;
  return rep;
}

inline json report_to_json(const StructureReport& r) {
  return json{
      {"symmetry", {{"residual", r.symmetry_residual}, {"tol", r.symmetry_tol}, {"pass", r.symmetry_pass}}},
      {"spd", {{"min_eig", r.min_eig_h0}, {"tol", r.spd_tol}, {"pass", r.spd_pass}}},
      {"kawashima",
       {{"margin", r.kawashima_margin},
        {"cluster_tol", r.cluster_tol},
        {"rank_tol", r.rank_tol},
        {"pass", r.kawashima_pass}}},
      {"dissipativity", {{"max_eig_sym", r.dissipativity_max}, {"pass", r.dissipativity_pass}}},
      {"all_pass", r.all_pass()}};
}

// ---------------------------------------------------------------------------
// simulate

struct Trajectory {
  std::vector<double> times;
  std::vector<SnapshotColumns> snapshots;
};

inline Trajectory run_rshs(const SimConfig& cfg) {
  const InitialData ic = make_initial_data(cfg.ic, cfg.grid, cfg.eos);
  Field1D f = make_prepared_field(cfg.grid, ic, cfg.eos, cfg.relax);
  SolverOptions opts;
  opts.cfl = cfg.cfl;
  opts.order = cfg.order;

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.snapshots.push_back(snapshot_columns(f, cfg.eos, cfg.relax));
  double next = cfg.output.every > 0.0 ? cfg.output.every : cfg.t_end;
  advance(f, cfg.t_end, cfg.eos, cfg.relax, opts, [&](double t, const Field1D& g) {
    if (t >= next - 1e-12 || t >= cfg.t_end - 1e-14) {
      traj.times.push_back(t);
      traj.snapshots.push_back(snapshot_columns(g, cfg.eos, cfg.relax));
      while (next <= t + 1e-12) next += cfg.output.every > 0.0 ? cfg.output.every : cfg.t_end;
    }
  });
  return traj;
}

inline Trajectory run_nsf(const SimConfig& cfg) {
  const InitialData ic = make_initial_data(cfg.ic, cfg.grid, cfg.eos);
  NsfField f = make_nsf_field(cfg.grid, ic, cfg.eos);
  const NsfCoeffs cf = NsfCoeffs::from(cfg.relax);

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.snapshots.push_back(snapshot_columns(f, cfg.eos, cf));
  double next = cfg.output.every > 0.0 ? cfg.output.every : cfg.t_end;
  nsf_advance(f, cfg.t_end, cfg.eos, cf, cfg.cfl, [&](double t, const NsfField& g) {
    if (t >= next - 1e-12 || t >= cfg.t_end - 1e-14) {
      traj.times.push_back(t);
      traj.snapshots.push_back(snapshot_columns(g, cfg.eos, cf));
      while (next <= t + 1e-12) next += cfg.output.every > 0.0 ? cfg.output.every : cfg.t_end;
    }
  });
  return traj;
}

inline Trajectory run_simulation(const SimConfig& cfg) {
  return cfg.model == "nsf" ? run_nsf(cfg) : run_rshs(cfg);
}

// ---------------------------------------------------------------------------
// relaxation sweep (limit epsilon -> 0 against the NSF reference)

struct SweepRow {
  double epsilon{0.0};
  double dist_rho{0.0}, dist_u{0.0}, dist_theta{0.0}, dist_total{0.0};
  double fitted_order{std::numeric_limits<double>::quiet_NaN()};
};

inline std::vector<SweepRow> run_relax_sweep(SimConfig cfg, const std::vector<double>& epsilons) {
  if (epsilons.empty()) throw std::domain_error("relax-sweep: empty epsilon list");
  for (size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw std::domain_error("relax-sweep: epsilons must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
      throw std::domain_error("relax-sweep: epsilons must be strictly decreasing");
  }
  cfg.output.every = 0.0;  // final snapshot only
  cfg.model = "nsf";
  const SnapshotColumns ref = run_nsf(cfg).snapshots.back();
  const NormScales sc = NormScales::from(cfg.eos);
  const double dx = cfg.grid.dx();

  std::vector<SweepRow> rows;
  for (double eps : epsilons) {
    SimConfig c = cfg;
    c.model = "rshs";
    c.relax.epsilon = eps;
    const SnapshotColumns snap = run_rshs(c).snapshots.back();
    SweepRow row;
    row.epsilon = eps;
    double dr = 0.0, du = 0.0, dth = 0.0;
    for (size_t i = 0; i < snap.x.size(); ++i) {
      dr += std::pow((snap.rho[i] - ref.rho[i]) / sc.rho0, 2);
      du += std::pow((snap.u1[i] - ref.u1[i]) / sc.c0, 2);
      dth += std::pow((snap.theta[i] - ref.theta[i]) / sc.theta0, 2);
    }
    row.dist_rho = std::sqrt(dr * dx);
    row.dist_u = std::sqrt(du * dx);
    row.dist_theta = std::sqrt(dth * dx);
    row.dist_total = std::sqrt((dr + du + dth) * dx);
    rows.push_back(row);
  }
  for (size_t i = 1; i < rows.size(); ++i)
    rows[i].fitted_order = std::log(rows[i - 1].dist_total / rows[i].dist_total) /
                           std::log(rows[i - 1].epsilon / rows[i].epsilon);
  return rows;
}

// ---------------------------------------------------------------------------
// decay to equilibrium

struct DecayRow {
  double t{0.0};
  double total{0.0}, equilibrium{0.0}, dissipative{0.0};
};

struct DecayResult {
  std::vector<DecayRow> rows;
  double fitted_rate{0.0};  ///< exponent of the tail-window fit exp(rate * t)
  double r_squared{0.0};
};

inline DecayResult run_decay(SimConfig cfg, double amplitude) {
  if (!(amplitude >= 0.0)) throw std::domain_error("decay: amplitude must be >= 0");
  cfg.ic.type = "decay_perturbation";
  cfg.ic.amplitude = amplitude;
  if (cfg.output.every <= 0.0) cfg.output.every = cfg.t_end / 100.0;
  const Trajectory traj = run_rshs(cfg);

  const SnapshotColumns ref = uniform_reference_snapshot(cfg.grid, 1.0, 1.0);
  const NormScales sc = NormScales::from(cfg.eos);
  DecayResult res;
  for (size_t k = 0; k < traj.times.size(); ++k) {
    const DeviationNorms d = deviation_norms(traj.snapshots[k], ref, sc, cfg.grid.dx());
    res.rows.push_back({traj.times[k], d.total, d.equilibrium, d.dissipative});
  }

  // least-squares fit of log(total) over the final half of the time window
  std::vector<double> ts, ls;
  for (const auto& r : res.rows)
    if (r.t >= 0.5 * cfg.t_end && r.total > 1e-300) {
      ts.push_back(r.t);
      ls.push_back(std::log(r.total));
    }
  if (ts.size() >= 3) {
    const size_t m = ts.size();
    double st = 0, sl = 0, stt = 0, stl = 0;
    for (size_t i = 0; i < m; ++i) {
      st += ts[i];
      sl += ls[i];
      stt += ts[i] * ts[i];
      stl += ts[i] * ls[i];
    }
    const double denom = m * stt - st * st;
    res.fitted_rate = (m * stl - st * sl) / denom;
    const double a = (sl - res.fitted_rate * st) / m;
    double ss_res = 0, ss_tot = 0;
    const double mean_l = sl / m;
    for (size_t i = 0; i < m; ++i) {
      const double pred = a + res.fitted_rate * ts[i];
      ss_res += (ls[i] - pred) * (ls[i] - pred);
      ss_tot += (ls[i] - mean_l) * (ls[i] - mean_l);
    }
    res.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  }
  return res;
}

}  // namespace gbflow
