#include <doctest.h>

#include "ddqe/centralspin.hpp"
#include "ddqe/density.hpp"
#include "ddqe/dressed.hpp"
#include "ddqe/haar.hpp"
#include "ddqe/mc_average.hpp"

using namespace ddqe;

TEST_SUITE_BEGIN("centralspin");

TEST_CASE("weingarten: (W sz W^dag)^2 averages to the identity") {
  const ComplexMatrix r =
      weingarten_haar_integral(pauli::z(), pauli::id(), pauli::z(), 2);
  CHECK(max_abs(r - ComplexMatrix::Identity(2, 2)) < 1e-14);
}

TEST_CASE("weingarten: sz sandwich gives -sz/3") {
  const ComplexMatrix r =
      weingarten_haar_integral(pauli::z(), pauli::z(), pauli::z(), 2);
  CHECK(max_abs(r + pauli::z() / 3.0) < 1e-14);
}

TEST_CASE("weingarten with X2 = exp(-i w t sz)") {
  // linearity in X2 fixes the value: cos(th) from the identity part plus
  // -i sin(th)/3 from the sz part; cross-checked against Monte Carlo below
  const double th = 0.9;
  ComplexMatrix x2 = ComplexMatrix::Zero(2, 2);
  x2(0, 0) = std::exp(-I * th);
  x2(1, 1) = std::exp(I * th);
  const ComplexMatrix r = weingarten_haar_integral(pauli::z(), x2, pauli::z(), 2);
  const ComplexMatrix expected =
      (4.0 / 3.0) * std::cos(th) * ComplexMatrix::Identity(2, 2) - x2 / 3.0;
  CHECK(max_abs(r - expected) < 1e-14);

  RngStream rng(51);
  const int n = 60000;
  ComplexMatrix mc = ComplexMatrix::Zero(2, 2);
  for (int k = 0; k < n; ++k) {
    const ComplexMatrix w = haar_unitary(2, rng);
    const ComplexMatrix a = w * pauli::z() * w.adjoint();
    mc += a * x2 * a;
  }
  mc /= n;
  CHECK(max_abs(mc - expected) < 5.0 / std::sqrt(double(n)));
}

TEST_CASE("weingarten matches mc for random triples at d=2,3") {
  RngStream rng(52);
  for (int trial = 0; trial < 4; ++trial) {
    const int d = (trial % 2) ? 3 : 2;
    ComplexMatrix x1(d, d), x2(d, d), x3(d, d);
    for (auto* x : {&x1, &x2, &x3})
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) (*x)(i, j) = cplx(rng.gaussian(), rng.gaussian());
    const int n = 40000;
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    Eigen::MatrixXd sum2 = Eigen::MatrixXd::Zero(d, d);
    for (int k = 0; k < n; ++k) {
      const ComplexMatrix w = haar_unitary(d, rng);
      const ComplexMatrix m = w * x1 * w.adjoint() * x2 * w * x3 * w.adjoint();
      sum += m;
      sum2 += m.cwiseAbs2();
    }
    const ComplexMatrix mean = sum / double(n);
    const ComplexMatrix closed = weingarten_haar_integral(x1, x2, x3, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) {
        const double se =
            std::sqrt(std::max(0.0, sum2(i, j) / n - std::norm(mean(i, j))) / n);
        CHECK(std::abs(mean(i, j) - closed(i, j)) < 4.0 * se + 1e-10);
      }
  }
}

TEST_CASE("weingarten d=1 degenerates to the plain product") {
  ComplexMatrix a(1, 1), b(1, 1), c(1, 1);
  a << cplx(1.0, 2.0);
  b << cplx(0.5, -1.0);
  c << cplx(-2.0, 0.3);
  const ComplexMatrix r = weingarten_haar_integral(a, b, c, 1);
  CHECK(std::abs(r(0, 0) - a(0, 0) * b(0, 0) * c(0, 0)) < 1e-14);
}

TEST_CASE("effective Hamiltonian limits") {
  const CentralSpinParams p{1.0, 0.09, 1.0};
  CHECK(max_abs(h_eff_central(p, 0.0) - pauli::z()) < 1e-14);
  // sinc(pi) = 0: bare Hamiltonian at omega t = pi
  CHECK(max_abs(h_eff_central(p, M_PI) - pauli::z()) < 1e-12);
  // omega -> 0 at fixed t: H -> hbar omega sz (1 + D2 t^2 / 6) -> 0
  const CentralSpinParams p0{1e-9, 0.09, 1.0};
  CHECK(max_abs(h_eff_central(p0, 2.0)) < 1e-8);
  const double corr = 0.09 * 4.0 / 6.0;  // t = 2
  CHECK(h_eff_central(p0, 2.0)(0, 0).real() / 1e-9 ==
        doctest::Approx(1.0 + corr).epsilon(1e-6));
}

TEST_CASE("master equation rhs: depolarization limit and stationarity") {
  const CentralSpinParams p{1e-12, 0.09, 1.0};
  RngStream rng(53);
  ComplexMatrix g(2, 2);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) g(i, j) = cplx(rng.gaussian(), rng.gaussian());
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  const double t = 1.3;
  // omega -> 0: rhs -> (2 D2 t / 3)(1/2 - rho)
  const ComplexMatrix rhs = me_rhs_central(p, t, rho);
  const ComplexMatrix expected =
      (2.0 * 0.09 * t / 3.0) * (0.5 * ComplexMatrix::Identity(2, 2) - rho);
  CHECK(max_abs(rhs - expected) < 1e-9);

  // maximally mixed state is stationary at any omega
  const CentralSpinParams pw{1.0, 0.09, 1.0};
  const ComplexMatrix mixed = 0.5 * ComplexMatrix::Identity(2, 2);
  CHECK(max_abs(me_rhs_central(pw, 0.9, mixed)) < 1e-14);

  // trace of the rhs vanishes
  for (int k = 0; k < 20; ++k) {
    ComplexMatrix h(2, 2);
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) h(i, j) = cplx(rng.gaussian(), rng.gaussian());
    ComplexMatrix r2 = h * h.adjoint();
    r2 /= r2.trace().real();
    CHECK(std::abs(me_rhs_central(pw, rng.uniform(0.0, 5.0), r2).trace()) < 1e-13);
  }
}

TEST_CASE("exact solution initial values and fixed point") {
  const CentralSpinParams p{1.0, 0.04, 1.0};
  ComplexMatrix rho0(2, 2);
  rho0 << 0.3, cplx(0.2, 0.1), cplx(0.2, -0.1), 0.7;
  const auto sol = exact_solution(p, rho0);
  CHECK(sol.rho_uu(0.0) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(std::abs(sol.rho_ud(0.0) - cplx(0.2, 0.1)) < 1e-14);

  ComplexMatrix half(2, 2);
  half << 0.5, 0.1, 0.1, 0.5;
  const auto sol2 = exact_solution(p, half);
  for (double t : {0.5, 3.0, 9.0})
    CHECK(sol2.rho_uu(t) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("exact solution equals the integrated ME rhs") {
  // independent cross-check: RK4 on me_rhs_central against the closed form
  const CentralSpinParams p{1.0, 0.04, 1.0};
  ComplexMatrix rho = fig2_initial_state(Fig2Case::ii);
  const auto sol = exact_solution(p, rho);
  const double dt = 5e-4;
  double t = 0.0;
  for (int step = 0; step < 8000; ++step) {
    const ComplexMatrix k1 = me_rhs_central(p, t, rho);
    const ComplexMatrix k2 = me_rhs_central(p, t + dt / 2, rho + dt / 2 * k1);
    const ComplexMatrix k3 = me_rhs_central(p, t + dt / 2, rho + dt / 2 * k2);
    const ComplexMatrix k4 = me_rhs_central(p, t + dt, rho + dt * k3);
    rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += dt;
  }
  CHECK(max_abs(rho - sol.state(t)) < 1e-8);
}

TEST_CASE("exact solution at omega = 0 uses the series limit") {
  const CentralSpinParams p{0.0, 0.04, 1.0};
  ComplexMatrix rho0(2, 2);
  rho0 << 0.5, 0.5, 0.5, 0.5;
  const auto sol = exact_solution(p, rho0);
  // phase factor tends to 1: rho_ud is real and positive at small t
  const cplx v = sol.rho_ud(0.3);
  CHECK(std::abs(std::arg(v)) < 1e-6);
  // decay (1 + sinc^2) -> 2: |rho_ud| = 0.5 exp(-D2 t^2 / 3)
  CHECK(std::abs(v) ==
        doctest::Approx(0.5 * std::exp(-0.04 * 0.09 / 3.0)).epsilon(1e-10));
}

TEST_CASE("case (iii) purity oscillates with minima near pi/2 mod pi") {
  const CentralSpinParams p{1.0, 0.04, 1.0};
  const auto sol = exact_solution(p, fig2_initial_state(Fig2Case::iii));
  // purity r = (1 + exp(-2 D2 t^2 sinc^2/3))/2
  for (double t : {1.0, 2.0, 5.0}) {
    const double s = sinc(t);
    const double expected = 0.5 * (1.0 + std::exp(-2.0 * 0.04 * t * t * s * s / 3.0));
    CHECK(sol.purity(t) == doctest::Approx(expected).epsilon(1e-12));
  }
  std::vector<double> ts, rs;
  for (int i = 0; i <= 1200; ++i) {
    ts.push_back(12.0 * i / 1200.0);
    rs.push_back(sol.purity(ts.back()));
  }
  int minima = 0;
  for (std::size_t i = 1; i + 1 < rs.size(); ++i)
    if (rs[i] < rs[i - 1] && rs[i] < rs[i + 1]) {
      const double frac = std::fmod(ts[i], M_PI);
      CHECK(std::abs(frac - M_PI / 2.0) < 0.05);
      ++minima;
    }
  CHECK(minima >= 3);
}

TEST_CASE("exact solution tracks integrate(build_lindblad) to 1e-6") {
  CentralSpinEnsembleSpec es;
  es.omega = 1.0;
  es.delta_sq_mean = 0.04;
  auto ens = HamiltonianEnsemble::central_spin(es);
  const auto gen = build_lindblad(ens, uniform_grid(10.0, 20000));
  const ComplexMatrix rho0 = fig2_initial_state(Fig2Case::ii);
  IntegratorSpec spec;
  spec.dt = 1e-3;
  spec.t_max = 10.0;
  spec.store_every = 50;
  const auto traj = integrate(gen, rho0, spec);
  const auto sol = exact_solution({1.0, 0.04, 1.0}, rho0);
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    CHECK(max_abs(traj.states[i] - sol.state(traj.times[i])) < 1e-6);
}

TEST_CASE("fig2 scenario runner shapes and qualitative features") {
  RngStream rng(54);
  const auto sc = run_fig2_scenario(Fig2Case::iii, 400, rng, 1.0, 1.0, 240);
  REQUIRE(sc.me.times.size() == 240);
  REQUIRE(sc.mc.times.size() == 240);
  REQUIRE(sc.purity_me.size() == 240);

  // z-axis symmetry: off-diagonals stay near zero in both records
  for (std::size_t i = 0; i < sc.me.times.size(); i += 40) {
    CHECK(std::abs(sc.me.states[i](0, 1)) < 1e-12);
    CHECK(std::abs(sc.mc.states[i](0, 1)) <
          4.0 * std::max({sc.mc.stderr_bloch[i][0], sc.mc.stderr_bloch[i][1], 1e-3}));
  }

  // ME purity oscillates undamped (equal minima); MC minima deepen with t
  // only through higher orders, so MC purity stays within a few percent
  for (std::size_t i = 0; i < sc.me.times.size(); ++i)
    CHECK(std::abs(sc.purity_me[i] - sc.purity_mc[i]) < 0.05);
}

TEST_CASE("fixed vs gaussian p_Delta against the case (iii) features") {
  // Both sampling choices must show damped purity oscillations with minima
  // near pi/2 mod pi; the damping depth difference is a higher-order effect.
  // The measured first-minimum depths are printed for the record.
  auto depth = [](DeltaDist dist, std::uint64_t seed) {
    RngStream rng(seed);
    const auto sc = run_fig2_scenario(Fig2Case::iii, 1000, rng, 1.0, 1.0, 400, dist, 2);
    double first_min = 1.0, t_min = 0.0;
    for (std::size_t i = 1; i + 1 < sc.purity_mc.size(); ++i)
      if (sc.me.times[i] < 3.0 && sc.purity_mc[i] < sc.purity_mc[i - 1] &&
          sc.purity_mc[i] < sc.purity_mc[i + 1] && sc.purity_mc[i] < first_min) {
        first_min = sc.purity_mc[i];
        t_min = sc.me.times[i];
      }
    CHECK(t_min == doctest::Approx(M_PI / 2.0).epsilon(0.15));
    return first_min;
  };
  const double d_fixed = depth(DeltaDist::fixed, 55);
  const double d_gauss = depth(DeltaDist::gaussian, 56);
  // undamped master-equation minimum: t^2 sinc^2(omega t) = 1 at omega t = pi/2
  const double d_me = 0.5 * (1.0 + std::exp(-2.0 * 0.04 / 3.0));
  std::printf("p_Delta comparison: first purity minimum me=%.4f fixed=%.4f "
              "gaussian=%.4f\n", d_me, d_fixed, d_gauss);
  CHECK(d_fixed < d_me + 0.01);   // ensemble minima sit at or below the ME value
  CHECK(d_gauss < d_me + 0.01);
  CHECK(std::abs(d_fixed - d_gauss) < 0.05);
}

TEST_CASE("case (ii) develops incoherent z oscillations") {
  const CentralSpinParams p{1.0, 0.01, 1.0};
  const auto sol = exact_solution(p, fig2_initial_state(Fig2Case::ii));
  // disorder-free evolution keeps a_z fixed; here rho_uu(t) moves
  const double t = M_PI / 2.0;
  CHECK(std::abs(sol.rho_uu(t) - sol.rho_uu(0.0)) > 1e-4);
}

TEST_SUITE_END();
