#include <doctest.h>

#include "ddqe/dirac/characteristic.hpp"
#include "ddqe/dirac/kernels.hpp"

using namespace ddqe;
using namespace ddqe::dirac;

TEST_SUITE_BEGIN("dirac_analytic");

TEST_CASE("gaussian G(q): peak value, evenness, normalization") {
  const auto spec = CorrelatorSpec::gaussian_correlator(0.08, 1.5);
  CHECK(g_of_q(spec, 0.0) ==
        doctest::Approx(0.08 * 1.5 / (2.0 * std::sqrt(M_PI))).epsilon(1e-14));
  RngStream rng(61);
  for (int k = 0; k < 100; ++k) {
    const double q = rng.uniform(-12.0, 12.0);
    CHECK(g_of_q(spec, q) == doctest::Approx(g_of_q(spec, -q)).epsilon(1e-14));
  }
  CHECK(std::abs(g_integral(spec) / spec.c0 - 1.0) < 1e-6);
  // Fourier pair: C(x) = C0 exp(-(x/l)^2)
  CHECK(c_of_x(spec, 0.75) ==
        doctest::Approx(0.08 * std::exp(-0.25)).epsilon(1e-12));
}

TEST_CASE("custom correlator table: validation and interpolation") {
  CHECK_THROWS_AS(CorrelatorSpec::custom({0.1, -0.2, 0.1}, 1.0), std::domain_error);
  // tabulated Gaussian reproduces the closed form
  const auto ref = CorrelatorSpec::gaussian_correlator(0.05, 1.0);
  std::vector<double> g;
  const int n = 2001;
  const double qmax = ref.q_support();
  for (int j = 0; j < n; ++j)
    g.push_back(g_of_q(ref, -qmax + 2.0 * qmax * j / (n - 1)));
  const auto tab = CorrelatorSpec::custom(g, qmax);
  CHECK(std::abs(tab.c0 / 0.05 - 1.0) < 1e-5);
  CHECK(std::abs(tab.ell - 1.0) < 1e-3);
  CHECK(g_of_q(tab, 0.37) == doctest::Approx(g_of_q(ref, 0.37)).epsilon(1e-5));
}

TEST_CASE("kernels vanish at t=0") {
  const auto spec = CorrelatorSpec::gaussian_correlator(0.08, 1.0);
  const DisorderKernels ker(spec, 2.0, 5.0);
  CHECK(std::abs(ker.fg(0.3, 0.2, 0.0)) < 1e-14);
  CHECK(std::abs(ker.fu(0.3, 0.2, 0.0)) < 1e-14);
}

TEST_CASE("large-time kernel at s=0, q=0 equals (2 pi t/hbar v) G(2p0)") {
  const auto spec = CorrelatorSpec::gaussian_correlator(0.08, 1.0);
  const DisorderKernels ker(spec, 2.0, 30.0, KernelMode::large_time);
  const double t = 17.0;
  CHECK(ker.fg00(t) ==
        doctest::Approx(2.0 * M_PI * t * g_of_q(spec, 4.0)).epsilon(1e-12));
  CHECK(std::abs(ker.fu(0.4, 0.7, t)) == 0.0);
}

TEST_CASE("exact kernel in the suppressed regime follows sin^2(p0 v t)") {
  // p0 >> hbar/ell: Fg(0,0) ~ (C0/p0^2 v^2) sin^2(p0 v t / hbar) at early t
  const double p0 = 16.0;
  const auto spec = CorrelatorSpec::gaussian_correlator(0.01 * p0 * p0, 1.0);
  const DisorderKernels ker(spec, p0, 1.0);
  for (double t : {0.05, 0.1, 0.2}) {
    const double expected =
        spec.c0 / (p0 * p0) * std::pow(std::sin(p0 * t), 2);
    CHECK(ker.fg00(t) == doctest::Approx(expected).epsilon(0.02));
  }
}

TEST_CASE("kernel parity: Fg even, Fu odd in q") {
  const auto spec = CorrelatorSpec::gaussian_correlator(0.08, 1.0);
  const DisorderKernels ker(spec, 2.0, 6.0);
  RngStream rng(62);
  for (int k = 0; k < 10; ++k) {
    const double s = rng.uniform(-6.0, 6.0);
    const double q = rng.uniform(0.05, 1.5);
    const double t = rng.uniform(0.3, 6.0);
    const double scale = std::abs(ker.fg00(t)) + 1e-30;
    CHECK(std::abs(ker.fg(s, q, t) - ker.fg(s, -q, t)) / scale < 1e-10);
    CHECK(std::abs(ker.fu(s, q, t) + ker.fu(s, -q, t)) / scale < 1e-10);
  }
}

TEST_CASE("grid evaluation matches pointwise evaluation") {
  const auto spec = CorrelatorSpec::gaussian_correlator(0.08, 1.0);
  const DisorderKernels ker(spec, 2.0, 4.0);
  std::vector<double> s = {-3.0, -1.0, 0.0, 1.0, 3.0};
  std::vector<double> q = {-0.8, -0.2, 0.0, 0.2, 0.8};
  Eigen::MatrixXcd fg, fu;
  ker.eval_grid(s, q, 2.7, fg, fu);
  for (std::size_t is = 0; is < s.size(); ++is)
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      CHECK(std::abs(fg(is, iq) - ker.fg(s[is], q[iq], 2.7)) < 1e-12);
      CHECK(std::abs(fu(is, iq) - ker.fu(s[is], q[iq], 2.7)) < 1e-12);
    }
}

TEST_CASE("gaussian packet characteristic function and momentum distribution") {
  const double p0 = 8.0, sigma = 2.0;
  const auto chi = gaussian_packet(p0, sigma, 1.0, 257, 257);
  CHECK(chi.norm00() == doctest::Approx(1.0).epsilon(1e-14));
  // P(p) = sqrt(2/pi) (sigma/hbar) exp(-2 sigma^2 (p - p0)^2)
  const auto dist = momentum_distribution(chi);
  double max_err = 0.0;
  for (std::size_t k = 0; k < dist.p.size(); ++k) {
    const double expected = std::sqrt(2.0 / M_PI) * sigma *
                            std::exp(-2.0 * sigma * sigma * (dist.p[k] - p0) *
                                     (dist.p[k] - p0));
    max_err = std::max(max_err, std::abs(dist.up[k] - expected));
    CHECK(dist.down[k] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dist.up[k] > -1e-8);
  }
  CHECK(max_err < 1e-8);
}

TEST_CASE("zero disorder: phase rotation only, momentum distribution static") {
  const auto spec = CorrelatorSpec::gaussian_correlator(0.0, 1.0);
  const DisorderKernels ker(spec, 4.0, 5.0);
  const auto chi0 = gaussian_packet(4.0, 2.0, 1.0, 129, 129);
  const auto chi = evolve_characteristic(chi0, ker, 3.0);
  // chi+ picks up e^{-i v t q}, chi- stays zero
  for (int iq = 0; iq < 129; iq += 16)
    for (int is = 0; is < 129; is += 16) {
      const cplx expected =
          chi0.chi_plus(is, iq) * std::exp(-I * 3.0 * chi0.q_grid[iq]);
      CHECK(std::abs(chi.chi_plus(is, iq) - expected) < 1e-12);
      CHECK(std::abs(chi.chi_minus(is, iq)) < 1e-14);
    }
  const auto d0 = momentum_distribution(chi0);
  const auto dt = momentum_distribution(chi);
  for (std::size_t k = 0; k < d0.p.size(); ++k)
    CHECK(dt.up[k] == doctest::Approx(d0.up[k]).epsilon(1e-10));
}

TEST_CASE("right-mover weights follow (1 +- e^{-2Fg00})/2 and stay normalized") {
  const auto spec = CorrelatorSpec::gaussian_correlator(0.08, 1.0);
  const DisorderKernels ker(spec, 2.0, 10.0);
  const auto chi0 = gaussian_packet(2.0, 4.0, 1.0, 129, 129);
  for (double t : {1.0, 4.0, 9.0}) {
    const auto chi = evolve_characteristic(chi0, ker, t);
    const double f = ker.fg00(t);
    const int is0 = chi.s_zero_index(), iq0 = chi.q_zero_index();
    CHECK(std::real(chi.chi_plus(is0, iq0)) ==
          doctest::Approx(0.5 * (1.0 + std::exp(-2.0 * f))).epsilon(1e-10));
    CHECK(std::real(chi.chi_minus(is0, iq0)) ==
          doctest::Approx(0.5 * (1.0 - std::exp(-2.0 * f))).epsilon(1e-10));
    CHECK(chi.norm00() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("weak-disorder large-time momentum distribution: linear-in-time redistribution") {
  // left-mover weight (2 pi t/hbar v) G(2 p0), centered at -p0
  const double p0 = 3.0, sigma = 3.0;
  const auto spec = CorrelatorSpec::gaussian_correlator(0.02 * p0 * p0, 1.0);
  const DisorderKernels ker(spec, p0, 40.0, KernelMode::large_time);
  const auto chi0 = gaussian_packet(p0, sigma, 1.0, 257, 257);
  const double t = 12.0;
  const auto chi = evolve_characteristic(chi0, ker, t);
  const auto dist = momentum_distribution(chi);
  const double dp = dist.p[1] - dist.p[0];
  double w_down = 0.0, centroid = 0.0;
  for (std::size_t k = 0; k < dist.p.size(); ++k) {
    w_down += dist.down[k] * dp;
    centroid += dist.p[k] * dist.down[k] * dp;
  }
  const double expected_w = 2.0 * M_PI * t * g_of_q(spec, 2.0 * p0);
  CHECK(w_down == doctest::Approx(expected_w).epsilon(0.02));
  CHECK(centroid / w_down == doctest::Approx(-p0).epsilon(0.02));
}

TEST_CASE("characteristic purity: pure packet starts at 1, plateaus under disorder") {
  const double p0 = 8.0;
  const auto spec = CorrelatorSpec::gaussian_correlator(0.01 * p0 * p0, 1.0);
  const DisorderKernels ker(spec, p0, 25.0);
  const auto chi0 = gaussian_packet(p0, 4.0, 1.0, 257, 257);
  CHECK(purity(chi0) == doctest::Approx(1.0).epsilon(1e-6));
  const double r1 = purity(evolve_characteristic(chi0, ker, 6.0));
  const double r2 = purity(evolve_characteristic(chi0, ker, 12.0));
  CHECK(r1 < 1.0);
  // plateau: late-time slope far below the initial drop rate
  CHECK(std::abs(r2 - r1) < 0.2 * (1.0 - r1));
  // the closed-form plateau expression underestimates the measured loss by
  // a factor ~2 even for sigma >> ell; keep the comparison loose and recorded
  const double formula = purity_plateau(spec, p0, 4.0);
  const double ratio = (1.0 - r1) / (1.0 - formula);
  CHECK(ratio > 1.0);
  CHECK(ratio < 4.0);
}

TEST_CASE("purity plateau formula limits") {
  const auto spec = CorrelatorSpec::gaussian_correlator(0.25, 1.0);
  // sigma -> 0: no loss
  CHECK(purity_plateau(spec, 5.0, 1e-9) == doctest::Approx(1.0).epsilon(1e-9));
  // sigma >> ell: 1 - C0 / (2 v^2 p0^2)
  CHECK(purity_plateau(spec, 5.0, 1e6) ==
        doctest::Approx(1.0 - 0.25 / (2.0 * 25.0)).epsilon(1e-6));
  // the loss depends only on the dimensionless C0 / v^2 p0^2
  const auto spec2 = CorrelatorSpec::gaussian_correlator(0.25, 1.0, 1.0, 2.0);
  CHECK(purity_plateau(spec2, 2.5, 1e6) ==
        doctest::Approx(1.0 - 0.25 / (2.0 * 25.0)).epsilon(1e-6));
}

TEST_CASE("mean position closed form") {
  const auto free = CorrelatorSpec::gaussian_correlator(0.0, 1.0);
  CHECK(mean_position(free, 2.0, 7.0, 1.5) == doctest::Approx(1.5 + 7.0).epsilon(1e-14));

  const auto spec = CorrelatorSpec::gaussian_correlator(0.04, 1.0);
  // drift velocity 0.99, amplitude 0.0025, frequency 2 p0 v = 4
  const double p0 = 2.0;
  const double amp = 0.04 / (2.0 * p0 * p0 * p0);
  CHECK(amp == doctest::Approx(0.0025));
  const double period = M_PI / (p0 * 1.0);
  const double x1 = mean_position(spec, p0, 10.0 * period);
  CHECK(x1 == doctest::Approx(0.99 * 10.0 * period).epsilon(1e-12));
  // quarter period later the sine contributes its full amplitude
  const double t2 = 10.0 * period + period / 4.0;
  CHECK(mean_position(spec, p0, t2) - 0.99 * t2 == doctest::Approx(amp).epsilon(1e-10));
}

TEST_CASE("evolved mean position reduces to the closed form in the suppressed regime") {
  const double p0 = 16.0;
  const auto spec = CorrelatorSpec::gaussian_correlator(0.01 * p0 * p0, 1.0);
  const DisorderKernels ker(spec, p0, 0.6);
  std::vector<double> times;
  for (int i = 0; i <= 300; ++i) times.push_back(0.6 * i / 300.0);
  const auto xs = mean_position_evolved(ker, times);
  // early window vt << ell: Eq-31 sinusoid applies
  for (std::size_t i = 0; i < times.size(); i += 30) {
    const double t = times[i];
    CHECK(std::abs(xs[i] - mean_position(spec, p0, t)) < 3e-4 * (t + 0.01));
  }
}

TEST_CASE("momentum distribution rejects non-uniform s grids") {
  auto chi = gaussian_packet(4.0, 2.0, 1.0, 65, 65);
  chi.s_grid[3] += 1e-3;
  CHECK_THROWS_AS(momentum_distribution(chi), std::invalid_argument);
}

TEST_SUITE_END();
