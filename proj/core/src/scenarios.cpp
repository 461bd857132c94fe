#include "ddqe/scenarios.hpp"

#include <cmath>

#include "ddqe/centralspin.hpp"
#include "ddqe/density.hpp"
#include "ddqe/dirac/characteristic.hpp"
#include "ddqe/dirac/grid.hpp"
#include "ddqe/io/svg.hpp"
#include "ddqe/mc_average.hpp"
#include "ddqe/threads.hpp"
#include "ddqe/validate.hpp"

namespace ddqe {

namespace {

int workers_for(const io::RunConfig& cfg) { return cfg.serial ? 1 : worker_count(); }

ScenarioOutput run_central_spin(const io::RunConfig& cfg) {
  const auto& p = cfg.cs;
  const double om = p.omega;
  double d2 = p.delta_sq_mean;
  ComplexMatrix rho0;
  if (!p.case_label.empty()) {
    const Fig2Case c = p.case_label == "i" ? Fig2Case::i
                       : p.case_label == "ii" ? Fig2Case::ii
                                              : Fig2Case::iii;
    rho0 = fig2_initial_state(c);
    if (d2 < 0.0) d2 = fig2_delta_sq(c, om);
  } else {
    rho0 = fig2_initial_state(Fig2Case::ii);
  }

  const CentralSpinParams params{om, d2, cfg.hbar};
  const CentralSpinSolution sol = exact_solution(params, rho0);

  std::vector<double> times(p.points);
  for (int i = 0; i < p.points; ++i)
    times[i] = p.t_max * i / (p.points - 1);

  CentralSpinEnsembleSpec espec;
  espec.omega = om;
  espec.delta_sq_mean = d2;
  espec.delta_dist =
      p.delta_dist == "gaussian" ? DeltaDist::gaussian : DeltaDist::fixed;
  const auto ens = HamiltonianEnsemble::central_spin(espec, cfg.hbar);
  RngStream rng(cfg.seed, 0);
  const TrajectoryRecord mc =
      mc_average_evolution(ens, rho0, times, p.K, rng, workers_for(cfg));

  // perturbative validity guard: (2 Tr E[V^2] / hbar^2 d) * t <= 0.5
  const double rate = 2.0 * ens.trace_ev2() / (cfg.hbar * cfg.hbar * 2.0);
  const double t_breach = rate > 0.0 ? 0.5 / rate : std::numeric_limits<double>::infinity();

  io::CsvTable table({"t", "ax_me", "ay_me", "az_me", "purity_me", "ax_mc", "ay_mc",
                      "az_mc", "purity_mc", "stderr_ax", "stderr_ay", "stderr_az",
                      "validity"},
                     {"1/omega", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1", "1",
                      "flag"});
  bool breached = false;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const ComplexMatrix me = sol.state(times[i]);
    const BlochVector a = bloch_map(me);
    const BlochVector b = bloch_map(mc.states[i]);
    const double valid = times[i] <= t_breach ? 1.0 : 0.0;
    if (valid == 0.0) breached = true;
    table.add_row({times[i], a.x, a.y, a.z, purity(me), b.x, b.y, b.z,
                   purity(mc.states[i]), mc.stderr_bloch[i][0], mc.stderr_bloch[i][1],
                   mc.stderr_bloch[i][2], valid});
  }

  ScenarioOutput out;
  if (cfg.emit_svg) {
    io::PlotSpec ps;
    ps.x_column = "t";
    ps.y_columns = {"purity_me", "purity_mc"};
    ps.title = "central spin purity (solid: master equation, dashed: ensemble)";
    out.svgs.emplace_back("purity", io::emit_svg(table, ps));
  }
  out.tables.emplace_back("centralspin", std::move(table));
  out.exit_code = breached ? 2 : 0;
  return out;
}

ScenarioOutput run_dirac(const io::RunConfig& cfg) {
  const auto& p = cfg.dirac;
  const auto spec =
      dirac::CorrelatorSpec::gaussian_correlator(p.c0, p.ell, cfg.hbar, p.v);
  const auto mode = p.kernel_mode == "large-time" ? dirac::KernelMode::large_time
                                                  : dirac::KernelMode::exact;
  const int nworkers = workers_for(cfg);
  double t_reach = p.t_max;  // quadrature density must cover snapshots too
  for (double t : p.snapshot_times) t_reach = std::max(t_reach, t);
  const dirac::DisorderKernels kernels(spec, p.p0, t_reach, mode);

  std::vector<double> times(p.points);
  for (int i = 0; i < p.points; ++i) times[i] = p.t_max * i / (p.points - 1);

  // analytic (characteristic-function) path
  const auto chi0 = dirac::gaussian_packet(p.p0, p.sigma, cfg.hbar);
  const std::vector<double> xs = dirac::mean_position_evolved(kernels, times);

  const double rate0 = 2.0 * M_PI / (cfg.hbar * p.v) * dirac::g_of_q(spec, 2.0 * p.p0);
  const double t_breach = rate0 > 0.0 ? 0.5 / rate0 : std::numeric_limits<double>::infinity();

  // grid-oracle path (optional)
  dirac::DiracEnsembleResult oracle;
  const bool with_mc = p.K > 0;
  if (with_mc) {
    // auto grid length: 32 sigma keeps the wrapped tail below e^{-64} while
    // leaving dx fine enough for large p0 at the default N
    const double length = p.length > 0.0 ? p.length : std::max(32.0 * p.sigma,
                                                               4.0 * p.v * p.t_max);
    double dt = p.dt;
    if (dt <= 0.0) {
      const double p_occ = p.p0 + 6.0 * cfg.hbar / p.sigma;
      dt = 0.08 * cfg.hbar / (p.v * p_occ);
    }
    // step count a multiple of the record intervals so oracle times match
    const int intervals = p.points - 1;
    const int nsteps =
        static_cast<int>(std::ceil(p.t_max / dt / intervals)) * intervals;
    dt = p.t_max / nsteps;
    oracle = dirac::dirac_grid_ensemble(spec, p.p0, p.sigma, p.n, length, dt, p.t_max,
                                        p.K, cfg.seed, intervals, false, nworkers);
  }

  std::vector<std::string> cols = {"t",      "x_mean",      "purity",
                                   "backscatter_weight", "left_band_weight",
                                   "validity"};
  std::vector<std::string> units = {"time", "length", "1", "1", "1", "flag"};
  if (with_mc) {
    cols.insert(cols.end(), {"x_mean_mc", "x_mean_stderr", "backscatter_mc",
                             "backscatter_stderr"});
    units.insert(units.end(), {"length", "length", "1", "1"});
  }
  io::CsvTable table(cols, units);
  bool breached = false;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const auto chi = dirac::evolve_characteristic(chi0, kernels, t, nworkers);
    const double r = dirac::purity(chi);
    // momentum weight at p < 0 (same observable the grid oracle reports);
    // the left-moving band weight chi^-(0,0) is kept as its own column
    const auto dist = dirac::momentum_distribution(chi);
    const double dp = dist.p[1] - dist.p[0];
    double wb = 0.0;
    for (std::size_t k = 0; k < dist.p.size(); ++k)
      if (dist.p[k] < 0.0) wb += (dist.up[k] + dist.down[k]) * dp;
    const double wleft = dirac::left_mover_weight(kernels, t);
    const double valid = t <= t_breach ? 1.0 : 0.0;
    if (valid == 0.0) breached = true;
    std::vector<double> row = {t, xs[i], r, wb, wleft, valid};
    if (with_mc) {
      // oracle records on its own uniform grid of the same span/points
      const std::size_t j = std::min(i, oracle.times.size() - 1);
      row.insert(row.end(), {oracle.mean_x[j], oracle.mean_x_stderr[j],
                             oracle.backscatter[j], oracle.backscatter_stderr[j]});
    }
    table.add_row(row);
  }

  ScenarioOutput out;
  // momentum snapshots
  for (std::size_t k = 0; k < p.snapshot_times.size(); ++k) {
    const double t = p.snapshot_times[k];
    const auto chi = dirac::evolve_characteristic(chi0, kernels, t, nworkers);
    const auto dist = dirac::momentum_distribution(chi);
    io::CsvTable mt({"t", "p", "P_up", "P_down"},
                    {"time", "momentum", "1/momentum", "1/momentum"});
    for (std::size_t j = 0; j < dist.p.size(); ++j)
      mt.add_row({t, dist.p[j], dist.up[j], dist.down[j]});
    out.tables.emplace_back("momentum_" + std::to_string(k), std::move(mt));
  }

  if (cfg.emit_svg) {
    io::PlotSpec ps;
    ps.x_column = "t";
    ps.y_columns = {"purity"};
    ps.title = "dirac purity";
    out.svgs.emplace_back("purity", io::emit_svg(table, ps));
  }
  out.tables.emplace_back("trajectory", std::move(table));
  out.exit_code = breached ? 2 : 0;
  return out;
}

ScenarioOutput run_validate(const io::RunConfig& cfg) {
  ValidateOptions opt;
  opt.quick = cfg.validate.quick;
  opt.seed = cfg.seed;
  opt.nworkers = workers_for(cfg);
  const std::vector<CheckResult> results = run_validation(opt);

  io::CsvTable table("check", {"pass", "measured", "bound", "seconds"},
                     {"bool", "-", "-", "s"});
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    table.add_row(r.name, {r.pass ? 1.0 : 0.0, r.measured, r.bound, r.seconds});
  }
  ScenarioOutput out;
  out.tables.emplace_back("validate", std::move(table));
  out.exit_code = all ? 0 : 2;
  return out;
}

}  // namespace

ScenarioOutput run_scenario(const io::RunConfig& cfg) {
  switch (cfg.scenario) {
    case io::Scenario::central_spin: return run_central_spin(cfg);
    case io::Scenario::dirac: return run_dirac(cfg);
    case io::Scenario::validate: return run_validate(cfg);
  }
  throw std::logic_error("unreachable");
}

}  // namespace ddqe
