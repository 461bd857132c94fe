#include <doctest.h>

#include "ddqe/dirac/grid.hpp"
#include "ddqe/validate.hpp"

using namespace ddqe;
using namespace ddqe::dirac;

TEST_SUITE_BEGIN("dirac_grid");

TEST_CASE("mass field statistics: variance and two-point correlation") {
  const auto spec = CorrelatorSpec::gaussian_correlator(0.08, 1.0);
  RngStream rng(71);
  const int n = 1024;
  const double dx = 0.125;
  const int lag = 8;  // one correlation length
  const int reps = 4000;
  double v0 = 0.0, vl = 0.0;
  for (int k = 0; k < reps; ++k) {
    const auto f = sample_mass_field(spec, n, dx, rng);
    v0 += f[11] * f[11];
    vl += f[11] * f[11 + lag];
  }
  v0 /= reps;
  vl /= reps;
  const double se = spec.c0 * std::sqrt(2.0 / reps);
  CHECK(std::abs(v0 - spec.c0) < 4.0 * se);
  CHECK(std::abs(vl - spec.c0 * std::exp(-1.0)) < 4.0 * se);
}

TEST_CASE("zero-amplitude correlator gives the zero field") {
  const auto spec = CorrelatorSpec::gaussian_correlator(0.0, 1.0);
  RngStream rng(72);
  const auto f = sample_mass_field(spec, 256, 0.25, rng);
  for (double x : f) CHECK(x == 0.0);
}

TEST_CASE("mass field sampler requires a power-of-two grid") {
  const auto spec = CorrelatorSpec::gaussian_correlator(0.08, 1.0);
  RngStream rng(73);
  CHECK_THROWS_AS(sample_mass_field(spec, 1000, 0.25, rng), std::invalid_argument);
}

TEST_CASE("massless free propagation is an exact translation") {
  auto st = gaussian_grid_state(2048, 128.0, 3.0, 4.0);
  GridEvolver ev(st, 1.0, 1.0, 0.02);
  ev.steps(500);  // t = 10, translation by +10
  const auto& moved = ev.state();
  double worst = 0.0;
  const int shift = static_cast<int>(std::lround(10.0 / st.dx));
  for (int j = 0; j < st.n; ++j) {
    const int src = ((j - shift) % st.n + st.n) % st.n;
    worst = std::max(worst,
                     std::abs(std::norm(moved.up(j)) - std::norm(st.up(src))));
  }
  CHECK(worst < 1e-8);
  CHECK(std::abs(ev.observe().norm - 1.0) < 1e-12);
  CHECK(ev.observe().backscatter < 1e-10);
}

TEST_CASE("constant mass: plane wave returns after one dispersion period") {
  // E = sqrt((v p)^2 + (m v^2)^2); exp(-i H T) = 1 at T = 2 pi / E
  const int n = 64;
  const double L = 16.0;
  GridState st;
  st.n = n;
  st.dx = L / n;
  st.x0 = -L / 2;
  st.up.resize(n);
  st.down = ComplexVector::Zero(n);
  const double p = 2.0 * M_PI / L * 4.0;  // grid momentum, k = 4
  for (int j = 0; j < n; ++j)
    st.up(j) = std::exp(I * p * st.x_at(j)) / std::sqrt(L);
  const double m = 0.8;
  st.mass_field.assign(n, m);
  const double energy = std::hypot(p, m);
  const double period = 2.0 * M_PI / energy;
  const int steps = 4500;
  GridEvolver ev(st, 1.0, 1.0, period / steps);
  ev.steps(steps);
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    worst = std::max(worst, std::abs(ev.state().up(j) - st.up(j)) +
                                std::abs(ev.state().down(j)));
  CHECK(worst * st.dx < 1e-6);
}

TEST_CASE("grid preconditions are enforced") {
  auto st = gaussian_grid_state(512, 256.0, 4.0, 8.0);  // dx = 0.5, too coarse
  CHECK_THROWS_AS(check_grid_preconditions(st, 8.0, 1.0, 1.0, 0.01),
                  std::invalid_argument);
  auto fine = gaussian_grid_state(4096, 256.0, 4.0, 2.0);
  CHECK_THROWS_AS(check_grid_preconditions(fine, 2.0, 1.0, 1.0, 0.2),
                  std::invalid_argument);
  CHECK_NOTHROW(check_grid_preconditions(fine, 2.0, 1.0, 1.0, 0.04));
}

TEST_CASE("ensemble backscatter growth follows the golden-rule rate") {
  // reduced-size version of the acceptance check: 20% tolerance at K = 60
  const double p0 = 1.0;
  const auto spec = CorrelatorSpec::gaussian_correlator(0.02, 1.0);
  const auto res = dirac_grid_ensemble(spec, p0, 4.0, 2048, 128.0, 0.03, 15.0, 60,
                                       991, 30, false, 2);
  const double rate = fit_backscatter_rate(res.times, res.backscatter, 8.0, 15.0);
  const double target = 2.0 * M_PI * g_of_q(spec, 2.0 * p0);
  CHECK(rate == doctest::Approx(target).epsilon(0.20));
}

TEST_CASE("grid_evolve records norm-conserving observables") {
  const auto spec = CorrelatorSpec::gaussian_correlator(0.08, 1.0);
  RngStream rng(75);
  auto st = gaussian_grid_state(1024, 64.0, 3.0, 2.0);
  st.mass_field = sample_mass_field(spec, 1024, st.dx, rng);
  const auto traj = grid_evolve(st, 1.0, 1.0, 0.02, 200, 50);
  REQUIRE(traj.size() == 5);
  CHECK(traj.front().t == 0.0);
  CHECK(traj.back().t == doctest::Approx(4.0));
  for (const auto& o : traj) {
    CHECK(std::abs(o.norm - 1.0) < 1e-10);
    CHECK(o.backscatter >= 0.0);
  }
  // the packet drifts right at nearly v
  CHECK(traj.back().mean_x > 3.0);
}

TEST_CASE("ensemble determinism: worker count does not change the samples") {
  const auto spec = CorrelatorSpec::gaussian_correlator(0.02, 1.0);
  const auto a = dirac_grid_ensemble(spec, 1.0, 4.0, 1024, 64.0, 0.03, 2.1, 8, 17, 4,
                                     false, 1);
  const auto b = dirac_grid_ensemble(spec, 1.0, 4.0, 1024, 64.0, 0.03, 2.1, 8, 17, 4,
                                     false, 2);
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    CHECK(a.mean_x[i] == doctest::Approx(b.mean_x[i]).epsilon(1e-13));
    CHECK(a.backscatter[i] == doctest::Approx(b.backscatter[i]).epsilon(1e-13));
  }
}

TEST_CASE("ensemble purity estimate stays in (0, 1]") {
  const auto spec = CorrelatorSpec::gaussian_correlator(0.08, 1.0);
  const auto res = dirac_grid_ensemble(spec, 3.5, 4.0, 1024, 64.0, 0.02, 2.0, 24, 41,
                                       4, true, 2);
  REQUIRE(res.purity.size() == 1);
  CHECK(res.purity[0] > 0.0);
  CHECK(res.purity[0] <= 1.0 + 1e-9);
}

TEST_SUITE_END();
