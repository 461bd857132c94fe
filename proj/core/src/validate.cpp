#include "ddqe/validate.hpp"

#include <chrono>
#include <cmath>

#include "ddqe/centralspin.hpp"
#include "ddqe/density.hpp"
#include "ddqe/dirac/characteristic.hpp"
#include "ddqe/dirac/grid.hpp"
#include "ddqe/dressed.hpp"
#include "ddqe/haar.hpp"
#include "ddqe/mat_exp.hpp"
#include "ddqe/mc_average.hpp"
#include "ddqe/scenarios.hpp"

namespace ddqe {

namespace {

using clock_type = std::chrono::steady_clock;

double elapsed(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

ComplexMatrix random_hermitian(int d, RngStream& rng, double scale = 1.0) {
  ComplexMatrix m(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) m(i, j) = cplx(rng.gaussian(), rng.gaussian());
  return scale * hermitize(m);
}

ComplexMatrix random_density(int d, RngStream& rng) {
  ComplexMatrix g(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = cplx(rng.gaussian(), rng.gaussian());
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

HamiltonianEnsemble random_discrete_ensemble(int d, int n_members, RngStream& rng,
                                             double v_scale) {
  std::vector<ComplexMatrix> pots;
  std::vector<double> w;
  for (int j = 0; j < n_members; ++j) {
    pots.push_back(random_hermitian(d, rng, v_scale));
    w.push_back(0.2 + rng.uniform());
  }
  return HamiltonianEnsemble::discrete(random_hermitian(d, rng, 1.0), pots, w);
}

// -------- acceptance criteria --------

CheckResult c1_representation_identity(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  RngStream rng(opt.seed, 101);
  double worst = 0.0;
  for (int d : {2, 3}) {
    auto ens = random_discrete_ensemble(d, 10, rng, 0.4);
    const auto grid = uniform_grid(3.0, 600);
    const auto red = build_redfield(ens, grid);
    const auto lin = build_lindblad(ens, grid);
    for (int i = 0; i < 20; ++i) {
      const ComplexMatrix rho = random_density(d, rng);
      for (int j = 0; j < 20; ++j) {
        const double t = 3.0 * (j + 0.5) / 20.0;
        worst = std::max(worst, max_abs(red.apply(t, rho) - lin.apply(t, rho)));
      }
    }
  }
  return {"acc01_representation_identity", worst < 1e-10, worst, 1e-10, elapsed(t0)};
}

CheckResult c2_dephasing_exact(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  (void)opt;
  const double om = 1.0, s = 0.6;
  const double t_max = 1.5 / s;
  auto ens = HamiltonianEnsemble::scalar_dephasing(om, s);
  const auto gen = build_redfield(ens, uniform_grid(t_max, 5000));
  ComplexVector psi(2);
  psi << 1.0, 1.0;
  IntegratorSpec spec;
  spec.dt = 5e-4;
  spec.t_max = t_max;
  const auto traj = integrate(gen, DensityMatrix::pure(psi).matrix(), spec);
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    const double expected = 0.5 * std::exp(-2.0 * s * s * t * t);
    worst = std::max(worst, std::abs(std::abs(traj.states[i](0, 1)) - expected) /
                                expected);
  }
  return {"acc02_commuting_dephasing_exact", worst < 1e-6, worst, 1e-6, elapsed(t0)};
}

CheckResult c3_central_spin_closed_form(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  (void)opt;
  const double om = 1.0;
  CentralSpinEnsembleSpec es;
  es.omega = om;
  es.delta_sq_mean = 0.04;
  auto ens = HamiltonianEnsemble::central_spin(es);
  const auto gen = build_lindblad(ens, uniform_grid(10.0, 20000));
  ComplexVector psi(2);
  psi << std::sin(M_PI / 12.0), std::cos(M_PI / 12.0);
  const ComplexMatrix rho0 = DensityMatrix::pure(psi).matrix();
  IntegratorSpec spec;
  spec.dt = 1e-3;
  spec.t_max = 10.0;
  spec.store_every = 10;
  const auto traj = integrate(gen, rho0, spec);
  const auto sol = exact_solution({om, es.delta_sq_mean, 1.0}, rho0);
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    worst = std::max(worst, max_abs(traj.states[i] - sol.state(traj.times[i])));
  return {"acc03_central_spin_closed_form", worst < 1e-6, worst, 1e-6, elapsed(t0)};
}

CheckResult c4_fig2_reproduction(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  const int K = opt.quick ? 200 : 1000;
  double worst_ratio = 0.0;
  bool structure_ok = true;

  for (Fig2Case c : {Fig2Case::i, Fig2Case::ii, Fig2Case::iii}) {
    RngStream rng(opt.seed, 400 + static_cast<int>(c));
    const auto sc = run_fig2_scenario(c, K, rng, 1.0, 1.0, 600, DeltaDist::fixed,
                                      opt.nworkers);
    // Bloch agreement for omega t <= 6
    for (std::size_t i = 0; i < sc.me.times.size(); ++i) {
      if (sc.me.times[i] > 6.0) break;
      const BlochVector a = bloch_map(sc.me.states[i]);
      const BlochVector b = bloch_map(sc.mc.states[i]);
      const double dev[3] = {std::abs(a.x - b.x), std::abs(a.y - b.y),
                             std::abs(a.z - b.z)};
      for (int k = 0; k < 3; ++k) {
        const double tol = std::max(4.0 * sc.mc.stderr_bloch[i][k], 1e-2);
        worst_ratio = std::max(worst_ratio, dev[k] / tol);
      }
    }
    if (c == Fig2Case::iii) {
      // ME purity minima at omega t = pi/2 mod pi, within 0.1
      int found = 0;
      for (std::size_t i = 1; i + 1 < sc.purity_me.size(); ++i) {
        if (sc.purity_me[i] < sc.purity_me[i - 1] &&
            sc.purity_me[i] < sc.purity_me[i + 1]) {
          const double t = sc.me.times[i];
          const double frac = std::fmod(t, M_PI);
          if (std::abs(frac - M_PI / 2.0) > 0.1) structure_ok = false;
          ++found;
        }
      }
      if (found < 3) structure_ok = false;
    }
    if (c == Fig2Case::i) {
      // monotone decay with exponent enveloped by the modulated decay rate:
      // log(2r - 1) in [-2 D2 t^2/3, -D2 t^2/3]
      const double d2 = sc.params.delta_sq_mean;
      for (std::size_t i = 1; i < sc.purity_me.size(); ++i) {
        if (sc.purity_me[i] > sc.purity_me[i - 1] + 1e-12) structure_ok = false;
        const double t = sc.me.times[i];
        const double y = std::log(2.0 * sc.purity_me[i] - 1.0);
        if (y > -d2 * t * t / 3.0 + 1e-9 || y < -2.0 * d2 * t * t / 3.0 - 1e-9)
          structure_ok = false;
      }
    }
  }
  const bool pass = structure_ok && worst_ratio <= 1.0;
  return {"acc04_fig2_reproduction", pass, worst_ratio, 1.0, elapsed(t0)};
}

CheckResult c5_error_order_scaling(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  (void)opt;
  ComplexVector psi(2);
  psi << std::sin(M_PI / 12.0), std::cos(M_PI / 12.0);
  const ComplexMatrix rho0 = DensityMatrix::pure(psi).matrix();
  std::vector<double> log_d2, log_dev;
  for (double sd : {0.05, 0.1, 0.2}) {
    CentralSpinEnsembleSpec es;
    es.omega = 1.0;
    es.delta_sq_mean = sd * sd;
    auto ens = HamiltonianEnsemble::central_spin(es);
    const auto gen = build_lindblad(ens, uniform_grid(3.0, 12000));
    IntegratorSpec spec;
    spec.dt = 5e-4;
    spec.t_max = 3.0;
    spec.store_every = 6000;
    const auto traj = integrate(gen, rho0, spec);
    const auto exact = exact_average_evolution(ens, rho0, {3.0}, 120, 96);
    const BlochVector a = bloch_map(traj.states.back());
    const BlochVector b = bloch_map(exact.states[0]);
    const double dev = std::max({std::abs(a.x - b.x), std::abs(a.y - b.y),
                                 std::abs(a.z - b.z)});
    log_d2.push_back(std::log(sd * sd));
    log_dev.push_back(std::log(dev));
  }
  // least-squares slope
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(log_d2.size());
  for (int i = 0; i < n; ++i) {
    sx += log_d2[i];
    sy += log_dev[i];
    sxx += log_d2[i] * log_d2[i];
    sxy += log_d2[i] * log_dev[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const bool pass = std::abs(slope - 2.0) <= 0.5;
  return {"acc05_error_order_scaling", pass, slope, 2.0, elapsed(t0)};
}

CheckResult c6_weingarten(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  const int nsamp = opt.quick ? 20000 : 100000;
  RngStream rng(opt.seed, 600);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int d = (trial % 2 == 0) ? 2 : 3;
    ComplexMatrix X1(d, d), X2(d, d), X3(d, d);
    for (auto* X : {&X1, &X2, &X3})
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) (*X)(i, j) = cplx(rng.gaussian(), rng.gaussian());
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(d, d);  // |entry|^2 accumulator
    for (int k = 0; k < nsamp; ++k) {
      const ComplexMatrix W = haar_unitary(d, rng);
      const ComplexMatrix m = W * X1 * W.adjoint() * X2 * W * X3 * W.adjoint();
      sum += m;
      sum_sq += m.cwiseAbs2();
    }
    const ComplexMatrix mean = sum / double(nsamp);
    const ComplexMatrix closed = weingarten_haar_integral(X1, X2, X3, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) {
        const double var =
            std::max(0.0, sum_sq(i, j) / nsamp - std::norm(mean(i, j)));
        const double se = std::sqrt(var / nsamp) + 1e-12;
        worst = std::max(worst, std::abs(mean(i, j) - closed(i, j)) / (4.0 * se));
      }
  }
  return {"acc06_weingarten_vs_mc", worst <= 1.0, worst, 1.0, elapsed(t0)};
}

struct BackscatterRun {
  double rate = 0.0;
  double target = 0.0;
};

BackscatterRun backscatter_run(double p0, double c0, int K, std::uint64_t seed,
                               int nworkers) {
  // sigma = 12 ell keeps the packet momentum spread from sampling the
  // curvature of G(2p) (a few-percent rate bias at sigma = 4 ell)
  const double ell = 1.0, sigma = 12.0;
  const auto spec = dirac::CorrelatorSpec::gaussian_correlator(c0, ell);
  const int n = 4096;
  const double length = 384.0;
  const double t_max = 30.0;
  const double p_occ = p0 + 6.0 / sigma;
  const double dt = t_max / std::ceil(t_max / (0.08 / p_occ));
  auto res = dirac::dirac_grid_ensemble(spec, p0, sigma, n, length, dt, t_max, K, seed,
                                        40, false, nworkers);
  BackscatterRun out;
  // -log(1 - 2w)/2 = Fg(0,0,t) grows at the golden-rule rate (2 pi/hbar v) G(2p0)
  out.rate = fit_backscatter_rate(res.times, res.backscatter, 18.0, 30.0);
  out.target = 2.0 * M_PI * dirac::g_of_q(spec, 2.0 * p0);
  return out;
}

CheckResult c7_backscattering(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  double worst = 0.0;
  std::vector<double> p0s = {1.0, 1.5, 2.0};
  std::vector<double> lnrate, x2;
  for (std::size_t i = 0; i < p0s.size(); ++i) {
    const double p0 = p0s[i];
    // weak-disorder region: keep the accumulated backscatter exponent near
    // 0.06 at the end of the run so beyond-golden-rule corrections stay ~1%,
    // while honoring C0/p0^2 v^2 <= 0.02
    const double c0 = std::min(0.02 * p0 * p0,
                               0.06 / (30.0 * std::sqrt(M_PI) * std::exp(-p0 * p0)));
    const bool endpoint = (p0 == 1.0 || p0 == 2.0);
    const int K = opt.quick ? (endpoint ? 150 : 60) : (endpoint ? 800 : 300);
    const auto run = backscatter_run(p0, c0, K, opt.seed + 700 + i, opt.nworkers);
    if (endpoint)
      worst = std::max(worst, std::abs(run.rate / run.target - 1.0) / 0.10);
    lnrate.push_back(std::log(run.rate) - std::log(c0));
    x2.push_back(p0 * p0);  // (p0 ell / hbar)^2 with ell = hbar = 1
  }
  // suppression trend: d ln(rate/C0) / d (p0 l)^2 should be -1
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x2.size(); ++i) {
    sx += x2[i];
    sy += lnrate[i];
    sxx += x2[i] * x2[i];
    sxy += x2[i] * lnrate[i];
  }
  const double n = double(x2.size());
  const double trend = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  worst = std::max(worst, std::abs(trend + 1.0) / 0.10);
  return {"acc07_dirac_backscattering", worst <= 1.0, worst, 1.0, elapsed(t0)};
}

CheckResult c8_zitterbewegung(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  const int K = opt.quick ? 120 : 500;
  const double ell = 1.0, sigma = 4.0, p0 = 16.0, v = 1.0, hb = 1.0;
  const double c0 = 0.01 * p0 * p0;
  const auto spec = dirac::CorrelatorSpec::gaussian_correlator(c0, ell);
  const double t_max = 3.0;
  const int record_points = 600;
  const double p_occ = p0 + 6.0 / sigma;
  const double dt = t_max / (std::ceil(t_max / (0.08 / p_occ) / record_points) *
                             record_points);
  auto res = dirac::dirac_grid_ensemble(spec, p0, sigma, 4096, 64.0, dt, t_max, K,
                                        opt.seed + 800, record_points, false,
                                        opt.nworkers);
  const auto fit = fit_zitter(res.times, res.mean_x, v, ell, sigma, 2.0 * p0 * v / hb);
  const double freq_dev = std::abs(fit.omega / (2.0 * p0 * v / hb) - 1.0) / 0.03;
  const double amp_target = c0 * hb / (2.0 * v * v * p0 * p0 * p0);
  const double amp_dev = std::abs(fit.amplitude / amp_target - 1.0) / 0.25;
  const double drift_target = c0 / (p0 * p0 * v);
  const double drift_dev =
      std::abs((v - fit.drift_velocity) / drift_target - 1.0) / 0.15;
  const double worst = std::max({freq_dev, amp_dev, drift_dev});
  return {"acc08_zitterbewegung", worst <= 1.0, worst, 1.0, elapsed(t0)};
}

CheckResult c9_normalization_positivity(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  (void)opt;
  double worst = 0.0;

  // central spin, strongest shipped case
  {
    CentralSpinEnsembleSpec es;
    es.omega = 1.0;
    es.delta_sq_mean = 0.04;
    auto ens = HamiltonianEnsemble::central_spin(es);
    const auto gen = build_lindblad(ens, uniform_grid(10.0, 10000));
    IntegratorSpec spec;
    spec.dt = 1e-3;
    spec.t_max = 10.0;
    spec.store_every = 100;
    const auto traj = integrate(gen, fig2_initial_state(Fig2Case::iii), spec);
    double trace_drift = 0.0, mineig = 0.0;
    for (const auto& rho : traj.states) {
      trace_drift = std::max(trace_drift, std::abs(std::real(rho.trace()) - 1.0));
      mineig = std::min(mineig, min_eigenvalue(rho));
    }
    worst = std::max(worst, trace_drift / 1e-10);
    worst = std::max(worst, traj.hermiticity_drift_max / 1e-10);
    worst = std::max(worst, -mineig / 1e-8);
  }

  // characteristic-function normalization (exact structure)
  {
    const auto spec = dirac::CorrelatorSpec::gaussian_correlator(2.56, 1.0);
    const dirac::DisorderKernels kernels(spec, 16.0, 10.0);
    const auto chi0 = dirac::gaussian_packet(16.0, 4.0, 1.0, 129, 129);
    for (double t : {0.5, 2.0, 10.0}) {
      const auto chi = dirac::evolve_characteristic(chi0, kernels, t);
      worst = std::max(worst, std::abs(chi.norm00() - 1.0) / 1e-10);
    }
  }

  // grid norm conservation over 1e4 steps
  {
    const auto spec = dirac::CorrelatorSpec::gaussian_correlator(0.08, 1.0);
    RngStream rng(opt.seed, 900);
    auto st = dirac::gaussian_grid_state(1024, 128.0, 4.0, 2.0);
    st.mass_field = dirac::sample_mass_field(spec, 1024, st.dx, rng);
    dirac::GridEvolver ev(st, 1.0, 1.0, 0.02);
    ev.steps(10000);
    worst = std::max(worst, std::abs(ev.observe().norm - 1.0) / 1e-10);
  }

  return {"acc09_normalization_positivity", worst <= 1.0, worst, 1.0, elapsed(t0)};
}

CheckResult c10_determinism(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  bool ok = true;
  {
    io::RunConfig cfg;
    cfg.scenario = io::Scenario::central_spin;
    cfg.seed = opt.seed;
    cfg.serial = true;
    cfg.cs.case_label = "iii";
    cfg.cs.K = 100;
    cfg.cs.points = 120;
    const auto a = run_scenario(cfg);
    const auto b = run_scenario(cfg);
    ok = ok && a.tables.size() == b.tables.size();
    for (std::size_t i = 0; ok && i < a.tables.size(); ++i)
      ok = a.tables[i].second.to_string() == b.tables[i].second.to_string();
  }
  {
    io::RunConfig cfg;
    cfg.scenario = io::Scenario::dirac;
    cfg.seed = opt.seed + 1;
    cfg.serial = true;
    cfg.dirac.points = 4;
    cfg.dirac.t_max = 1.0;
    cfg.dirac.snapshot_times = {0.5};
    const auto a = run_scenario(cfg);
    const auto b = run_scenario(cfg);
    ok = ok && a.tables.size() == b.tables.size();
    for (std::size_t i = 0; ok && i < a.tables.size(); ++i)
      ok = a.tables[i].second.to_string() == b.tables[i].second.to_string();
  }
  return {"acc10_determinism", ok, ok ? 1.0 : 0.0, 1.0, elapsed(t0)};
}

// -------- invariant suites (condensed module properties) --------

CheckResult inv_qcore(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  RngStream rng(opt.seed, 1000);
  double worst = 0.0;
  // mat_exp(A,s) mat_exp(A,-s) = 1 for Hermitian A, |s| <= 10
  for (int trial = 0; trial < 5; ++trial) {
    const int d = 2 + trial % 3;
    const ComplexMatrix A = random_hermitian(d, rng);
    const cplx s = cplx(0.0, rng.uniform(-10.0, 10.0));
    const ComplexMatrix prod = mat_exp(A, s) * mat_exp(A, -s);
    worst = std::max(worst, max_abs(prod - ComplexMatrix::Identity(d, d)) / 1e-11);
  }
  // purity invariance under unitaries
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix rho = random_density(3, rng);
    const ComplexMatrix U = haar_unitary(3, rng);
    worst = std::max(worst,
                     std::abs(purity(U * rho * U.adjoint()) - purity(rho)) / 1e-12);
  }
  // bloch round trip on the unit ball
  for (int trial = 0; trial < 100; ++trial) {
    BlochVector a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double n = a.norm();
    if (n > 1.0) {
      a.x /= n; a.y /= n; a.z /= n;
    }
    const BlochVector b = bloch_map(density_from_bloch(a));
    worst = std::max({worst, std::abs(a.x - b.x) / 1e-12, std::abs(a.y - b.y) / 1e-12,
                      std::abs(a.z - b.z) / 1e-12});
  }
  // haar left invariance: first moment of W X W^dag and (UW) X (UW)^dag
  {
    const int nsamp = opt.quick ? 10000 : 40000;
    const ComplexMatrix X = random_hermitian(2, rng);
    const ComplexMatrix U = haar_unitary(2, rng);
    ComplexMatrix m1 = ComplexMatrix::Zero(2, 2), m2 = ComplexMatrix::Zero(2, 2);
    for (int k = 0; k < nsamp; ++k) {
      const ComplexMatrix W = haar_unitary(2, rng);
      m1 += W * X * W.adjoint();
      m2 += (U * W) * X * (U * W).adjoint();
    }
    m1 /= nsamp;
    m2 /= nsamp;
    const ComplexMatrix target = X.trace() / 2.0 * ComplexMatrix::Identity(2, 2);
    const double se = 4.0 * max_abs(X) / std::sqrt(double(nsamp));
    worst = std::max(worst, max_abs(m1 - target) / se);
    worst = std::max(worst, max_abs(m2 - target) / se);
  }
  return {"inv_qcore", worst <= 1.0, worst, 1.0, elapsed(t0)};
}

CheckResult inv_ensemble(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  double worst = 0.0;
  CentralSpinEnsembleSpec es;
  es.omega = 1.0;
  es.delta_sq_mean = 0.04;
  auto ens = HamiltonianEnsemble::central_spin(es);
  const ComplexMatrix rho_a = fig2_initial_state(Fig2Case::i);
  const ComplexMatrix rho_b = fig2_initial_state(Fig2Case::iii);
  std::vector<double> times = {0.0, 1.0, 3.0, 6.0};
  const int K = opt.quick ? 200 : 600;

  // linearity under convex mixtures at a common seed
  {
    RngStream r1(opt.seed, 1100), r2(opt.seed, 1100), r3(opt.seed, 1100);
    const auto ta = mc_average_evolution(ens, rho_a, times, K, r1);
    const auto tb = mc_average_evolution(ens, rho_b, times, K, r2);
    const ComplexMatrix mix = 0.3 * rho_a + 0.7 * rho_b;
    const auto tm = mc_average_evolution(ens, mix, times, K, r3);
    for (std::size_t i = 0; i < times.size(); ++i)
      worst = std::max(worst, max_abs(tm.states[i] - 0.3 * ta.states[i] -
                                      0.7 * tb.states[i]) /
                                  1e-12);
  }
  // purity of the average <= 1, = 1 at t = 0; trace = 1
  {
    RngStream r(opt.seed, 1101);
    const auto tr = mc_average_evolution(ens, rho_a, times, K, r);
    worst = std::max(worst, std::abs(purity(tr.states[0]) - 1.0) / 1e-12);
    for (const auto& st : tr.states) {
      if (purity(st) > 1.0 + 1e-12) worst = std::max(worst, 2.0);
      worst = std::max(worst, std::abs(std::real(st.trace()) - 1.0) / 1e-12);
    }
  }
  // stderr ~ 1/sqrt(K): doubling K shrinks stderr by 1/sqrt(2) within 20%
  {
    double ratio_sum = 0.0;
    const int reps = 6;
    for (int rep = 0; rep < reps; ++rep) {
      RngStream ra(opt.seed + rep, 1102), rb(opt.seed + rep, 1103);
      const auto t1 = mc_average_evolution(ens, rho_a, {3.0}, K, ra);
      const auto t2 = mc_average_evolution(ens, rho_a, {3.0}, 2 * K, rb);
      double s1 = 0.0, s2 = 0.0;
      for (int c = 0; c < 3; ++c) {
        s1 += t1.stderr_bloch[0][c];
        s2 += t2.stderr_bloch[0][c];
      }
      ratio_sum += s2 / s1;
    }
    const double ratio = ratio_sum / reps;
    worst = std::max(worst, std::abs(ratio - 1.0 / std::sqrt(2.0)) /
                                (0.2 / std::sqrt(2.0)));
  }
  // commuting dephasing: MC off-diagonal matches the analytic oracle
  {
    auto deph = HamiltonianEnsemble::scalar_dephasing(1.0, 0.5);
    ComplexVector plus(2);
    plus << 1.0, 1.0;
    RngStream r(opt.seed, 1104);
    const auto tr = mc_average_evolution(deph, DensityMatrix::pure(plus).matrix(),
                                         {0.5, 1.0, 2.0}, K, r);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      const cplx expected =
          0.5 * dephasing_exact_offdiagonal(1.0, 0.5, tr.times[i]);
      const double se = std::max({tr.stderr_bloch[i][0], tr.stderr_bloch[i][1], 1e-4});
      worst = std::max(worst, std::abs(tr.states[i](0, 1) - expected) / (4.0 * se));
    }
  }
  return {"inv_ensemble", worst <= 1.0, worst, 1.0, elapsed(t0)};
}

CheckResult inv_dressed(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  RngStream rng(opt.seed, 1200);
  double worst = 0.0;

  // dissipator trace annihilation, 50 states x 20 times
  {
    auto ens = random_discrete_ensemble(3, 8, rng, 0.5);
    const auto gen = build_lindblad(ens, uniform_grid(2.0, 400));
    for (int i = 0; i < 50; ++i) {
      const ComplexMatrix rho = random_density(3, rng);
      for (int j = 0; j < 20; ++j) {
        const double t = 2.0 * (j + 0.5) / 20.0;
        worst = std::max(worst,
                         std::abs(gen.dissipator(t, rho).trace()) / 1e-12);
      }
    }
  }
  // short-time consistency: the short-time form reproduces the Redfield
  // generator through next-to-leading order, so the deviation relative to
  // the O(t) dissipator scales as t^2 (Richardson slope in [1.8, 2.2])
  {
    auto ens = random_discrete_ensemble(2, 8, rng, 0.5);
    const auto red = build_redfield(ens, uniform_grid(0.02, 2000));
    const auto st = build_short_time(ens);
    const ComplexMatrix rho = random_density(2, rng);
    std::vector<double> devs;
    for (double t : {1e-3, 2e-3, 4e-3})
      devs.push_back(max_abs(red.apply(t, rho) - st.apply(t, rho)) /
                     std::max(1e-300, max_abs(red.dissipator(t, rho))));
    const double slope = std::log(devs[2] / devs[0]) / std::log(4.0);
    if (slope < 1.8 || slope > 2.2) worst = std::max(worst, 2.0);
  }
  // weak-disorder oracle agreement + quartic strength scaling (factor 2)
  {
    ComplexVector psi(2);
    psi << std::sin(M_PI / 12.0), std::cos(M_PI / 12.0);
    const ComplexMatrix rho0 = DensityMatrix::pure(psi).matrix();
    std::vector<double> devs;
    const std::vector<double> sds = {0.05, 0.1};
    for (double sd : sds) {
      CentralSpinEnsembleSpec es;
      es.omega = 1.0;
      es.delta_sq_mean = sd * sd;
      auto ens = HamiltonianEnsemble::central_spin(es);
      // ||V|| t / hbar <= 0.3: t = 0.3 / (sd/2)
      const double t_end = 0.3 / (0.5 * sd);
      const auto gen = build_lindblad(ens, uniform_grid(t_end, 8000));
      IntegratorSpec spec;
      spec.dt = t_end / 8000.0;
      spec.t_max = t_end;
      spec.store_every = 8000;
      const auto me = integrate(gen, rho0, spec);
      const auto ex = exact_average_evolution(ens, rho0, {t_end}, 96, 64);
      const BlochVector a = bloch_map(me.states.back());
      const BlochVector b = bloch_map(ex.states[0]);
      const double dev = std::max({std::abs(a.x - b.x), std::abs(a.y - b.y),
                                   std::abs(a.z - b.z)});
      if (dev > 1e-3) worst = std::max(worst, dev / 1e-3);
      devs.push_back(dev);
    }
    (void)devs;  // the full 3-point quartic sweep runs in acc05
  }
  return {"inv_dressed", worst <= 1.0, worst, 1.0, elapsed(t0)};
}

CheckResult inv_centralspin(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  double worst = 0.0;
  const CentralSpinParams p{1.0, 0.04, 1.0};

  // z-axis symmetry: diagonal rho0 keeps rho_ud = 0 (ME and MC)
  {
    const ComplexMatrix rho0 = fig2_initial_state(Fig2Case::iii);
    const auto sol = exact_solution(p, rho0);
    for (double t : {1.0, 4.0, 9.0})
      worst = std::max(worst, std::abs(sol.rho_ud(t)) / 1e-14);
    CentralSpinEnsembleSpec es;
    es.omega = 1.0;
    es.delta_sq_mean = 0.04;
    auto ens = HamiltonianEnsemble::central_spin(es);
    RngStream r(opt.seed, 1300);
    const auto mc = mc_average_evolution(ens, rho0, {1.0, 4.0, 9.0},
                                         opt.quick ? 300 : 1000, r);
    for (std::size_t i = 0; i < mc.times.size(); ++i) {
      const double se =
          std::max({mc.stderr_bloch[i][0], mc.stderr_bloch[i][1], 1e-4});
      worst = std::max(worst, std::abs(mc.states[i](0, 1)) / (4.0 * se));
    }
  }
  // positivity of the ME solution within the window
  {
    const auto sol = exact_solution(p, fig2_initial_state(Fig2Case::ii));
    for (int i = 0; i <= 100; ++i) {
      const double t = 10.0 * i / 100.0;
      worst = std::max(worst, -min_eigenvalue(sol.state(t)) / 1e-8);
    }
  }
  // maximally mixed is stationary
  {
    const ComplexMatrix mixed = 0.5 * ComplexMatrix::Identity(2, 2);
    for (double t : {0.3, 2.0})
      worst = std::max(worst, max_abs(me_rhs_central(p, t, mixed)) / 1e-14);
  }
  return {"inv_centralspin", worst <= 1.0, worst, 1.0, elapsed(t0)};
}

CheckResult inv_dirac(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  double worst = 0.0;
  const auto spec = dirac::CorrelatorSpec::gaussian_correlator(0.08, 1.0);

  // G(q) evenness and normalization
  {
    RngStream r(opt.seed, 1400);
    for (int i = 0; i < 100; ++i) {
      const double q = r.uniform(-10.0, 10.0);
      worst = std::max(worst, std::abs(dirac::g_of_q(spec, q) - dirac::g_of_q(spec, -q)) /
                                  1e-14);
    }
    worst = std::max(worst, std::abs(dirac::g_integral(spec) / spec.c0 - 1.0) / 1e-6);
  }
  // kernel parity: Fg even, Fu odd in q
  {
    const dirac::DisorderKernels ker(spec, 2.0, 6.0);
    RngStream r(opt.seed, 1401);
    for (int i = 0; i < 8; ++i) {
      const double s = r.uniform(-8.0, 8.0);
      const double q = r.uniform(0.1, 1.5);
      const double t = r.uniform(0.5, 6.0);
      const double scale = std::abs(ker.fg(0.0, 0.0, t)) + 1e-30;
      worst = std::max(worst,
                       std::abs(ker.fg(s, q, t) - ker.fg(s, -q, t)) / scale / 1e-10);
      worst = std::max(worst,
                       std::abs(ker.fu(s, q, t) + ker.fu(s, -q, t)) / scale / 1e-10);
    }
  }
  // exact vs large-time kernels at vt/max(ell, sigma) >= 20, in the
  // backscattering-dominated regime (p0 ell/hbar = 1) where the limit form
  // carries the whole kernel
  {
    const double sigma = 2.0, t = 20.0 * sigma, p0 = 1.0;
    const dirac::DisorderKernels exact(spec, p0, t, dirac::KernelMode::exact);
    const dirac::DisorderKernels lt(spec, p0, t, dirac::KernelMode::large_time);
    const double a = exact.fg00(t), b = lt.fg00(t);
    worst = std::max(worst, std::abs(a / b - 1.0) / 0.05);
  }
  // characteristic-function Hermiticity chi(-s,-q) = conj chi(s,q)
  {
    const dirac::DisorderKernels ker(spec, 2.0, 5.0);
    const auto chi0 = dirac::gaussian_packet(2.0, 2.0, 1.0, 65, 65);
    const auto chi = dirac::evolve_characteristic(chi0, ker, 4.0);
    const int ns = static_cast<int>(chi.s_grid.size());
    const int nq = static_cast<int>(chi.q_grid.size());
    for (int iq = 0; iq < nq; ++iq)
      for (int is = 0; is < ns; ++is) {
        const cplx a = chi.chi_plus(is, iq);
        const cplx b = std::conj(chi.chi_plus(ns - 1 - is, nq - 1 - iq));
        worst = std::max(worst, std::abs(a - b) / 1e-10);
      }
  }
  // field statistics: C(0) and C(ell)
  {
    RngStream r(opt.seed, 1402);
    const int n = 1024, reps = opt.quick ? 1500 : 4000;
    const double dx = 0.125;
    double v0 = 0.0, vl = 0.0;
    const int lag = static_cast<int>(std::lround(spec.ell / dx));
    for (int k = 0; k < reps; ++k) {
      const auto f = dirac::sample_mass_field(spec, n, dx, r);
      v0 += f[7] * f[7];
      vl += f[7] * f[7 + lag];
    }
    v0 /= reps;
    vl /= reps;
    const double se = spec.c0 * 2.0 / std::sqrt(double(reps));
    worst = std::max(worst, std::abs(v0 - spec.c0) / (4.0 * se));
    worst = std::max(worst, std::abs(vl - spec.c0 * std::exp(-1.0)) / (4.0 * se));
  }
  return {"inv_dirac", worst <= 1.0, worst, 1.0, elapsed(t0)};
}

// p_Delta robustness: fixed vs Gaussian Delta against the case (iii)
// qualitative features; reported, both variants must show damped minima
// near pi/2 mod pi.
CheckResult inv_delta_dist(const ValidateOptions& opt) {
  const auto t0 = clock_type::now();
  double worst = 0.0;
  const int K = opt.quick ? 300 : 1000;
  for (DeltaDist dist : {DeltaDist::fixed, DeltaDist::gaussian}) {
    RngStream rng(opt.seed, 1500 + static_cast<int>(dist));
    const auto sc = run_fig2_scenario(Fig2Case::iii, K, rng, 1.0, 1.0, 600, dist,
                                      opt.nworkers);
    // first two MC purity minima near pi/2, 3pi/2 (within 0.25, MC noise)
    std::vector<double> minima;
    for (std::size_t i = 1; i + 1 < sc.purity_mc.size(); ++i)
      if (sc.purity_mc[i] < sc.purity_mc[i - 1] &&
          sc.purity_mc[i] < sc.purity_mc[i + 1] && sc.me.times[i] < 5.0)
        minima.push_back(sc.me.times[i]);
    if (minima.empty()) {
      worst = std::max(worst, 2.0);
      continue;
    }
    worst = std::max(worst, std::abs(minima.front() - M_PI / 2.0) / 0.25);
  }
  return {"inv_delta_dist_fig2", worst <= 1.0, worst, 1.0, elapsed(t0)};
}

}  // namespace

double fit_backscatter_rate(const std::vector<double>& t, const std::vector<double>& w,
                            double t_lo, double t_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    const double y = -0.5 * std::log(std::max(1e-300, 1.0 - 2.0 * w[i]));
    sx += t[i];
    sy += y;
    sxx += t[i] * t[i];
    sxy += t[i] * y;
    ++n;
  }
  if (n < 2) return 0.0;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ZitterFit fit_zitter(const std::vector<double>& t, const std::vector<double>& x, double v,
                     double ell, double sigma, double om_guess) {
  const std::size_t n = t.size();
  Eigen::MatrixXd basis(n, 4);
  Eigen::VectorXd rhs(n);
  std::vector<double> env(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = v * t[i];
    env[i] = std::exp(-(u / ell) * (u / ell) - 0.5 * (u / sigma) * (u / sigma));
    rhs(i) = x[i];
  }
  ZitterFit best;
  double best_sse = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 1400; ++k) {
    const double om = om_guess * (0.93 + 0.14 * k / 1400.0);
    for (std::size_t i = 0; i < n; ++i) {
      basis(i, 0) = 1.0;
      basis(i, 1) = t[i];
      basis(i, 2) = env[i] * std::sin(om * t[i]);
      basis(i, 3) = env[i] * std::cos(om * t[i]);
    }
    const Eigen::VectorXd coef =
        (basis.transpose() * basis).ldlt().solve(basis.transpose() * rhs);
    const double sse = (basis * coef - rhs).squaredNorm();
    if (sse < best_sse) {
      best_sse = sse;
      best.omega = om;
      best.amplitude = std::hypot(coef(2), coef(3));
      best.drift_velocity = coef(1);
    }
  }
  return best;
}

std::vector<CheckResult> run_validation(const ValidateOptions& opt) {
  std::vector<CheckResult> out;
  auto push = [&out](CheckResult r, double seconds_bound) {
    r.seconds_bound = seconds_bound;
    if (seconds_bound > 0.0 && r.seconds > seconds_bound) r.pass = false;
    out.push_back(std::move(r));
  };
  push(c1_representation_identity(opt), 10.0);
  push(c2_dephasing_exact(opt), 5.0);
  push(c3_central_spin_closed_form(opt), 10.0);
  push(c4_fig2_reproduction(opt), 60.0);
  push(c5_error_order_scaling(opt), 180.0);
  push(c6_weingarten(opt), 30.0);
  push(c7_backscattering(opt), 300.0);
  push(c8_zitterbewegung(opt), 300.0);
  push(c9_normalization_positivity(opt), 30.0);
  push(c10_determinism(opt), 60.0);
  push(inv_qcore(opt), 0.0);
  push(inv_ensemble(opt), 0.0);
  push(inv_dressed(opt), 0.0);
  push(inv_centralspin(opt), 0.0);
  push(inv_dirac(opt), 0.0);
  push(inv_delta_dist(opt), 0.0);
  return out;
}

}  // namespace ddqe
