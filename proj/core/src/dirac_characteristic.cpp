#include "ddqe/dirac/characteristic.hpp"

#include <cmath>
#include <stdexcept>

#include "ddqe/mat_exp.hpp"
#include "ddqe/threads.hpp"

namespace ddqe::dirac {

namespace {

std::vector<double> symmetric_grid(double span, int n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("characteristic grid: odd node count >= 3 required");
  std::vector<double> g(n);
  for (int j = 0; j < n; ++j) g[j] = -span + 2.0 * span * j / (n - 1);
  g[n / 2] = 0.0;
  return g;
}

void check_uniform(const std::vector<double>& g, const char* what) {
  if (g.size() < 2) throw std::invalid_argument(std::string(what) + ": too few nodes");
  const double h = g[1] - g[0];
  for (std::size_t j = 1; j < g.size(); ++j)
    if (std::abs((g[j] - g[j - 1]) - h) > 1e-9 * std::abs(h))
      throw std::invalid_argument(std::string(what) + ": grid not uniform");
}

}  // namespace

double CharacteristicSpinor::norm00() const {
  return std::real(chi_plus(s_zero_index(), q_zero_index()) +
                   chi_minus(s_zero_index(), q_zero_index()));
}

CharacteristicSpinor gaussian_packet(double p0, double sigma, double h_bar, int ns,
                                     int nq, double s_span, double q_span) {
  if (sigma <= 0.0) throw std::domain_error("gaussian_packet: sigma <= 0");
  if (ns <= 0) {
    // keep ds <= pi hbar / (|p0| + q-span momentum spread), with margin
    const double pmax = std::abs(p0) + 1.25 * q_span * h_bar / sigma;
    const int need =
        static_cast<int>(std::ceil(2.0 * s_span * sigma * pmax / (M_PI * h_bar)));
    ns = 512;
    while (ns < need) ns *= 2;
    ns += 1;
  }
  CharacteristicSpinor chi;
  chi.p0 = p0;
  chi.h_bar = h_bar;
  chi.s_grid = symmetric_grid(s_span * sigma, ns);
  chi.q_grid = symmetric_grid(q_span * h_bar / sigma, nq);
  chi.chi_plus.resize(ns, nq);
  chi.chi_minus = Eigen::MatrixXcd::Zero(ns, nq);
  for (int iq = 0; iq < nq; ++iq) {
    const double q = chi.q_grid[iq];
    const double gq = std::exp(-0.5 * q * q * sigma * sigma / (h_bar * h_bar));
    for (int is = 0; is < ns; ++is) {
      const double s = chi.s_grid[is];
      chi.chi_plus(is, iq) =
          gq * std::exp(cplx(-s * s / (8.0 * sigma * sigma), p0 * s / h_bar));
    }
  }
  return chi;
}

CharacteristicSpinor evolve_characteristic(const CharacteristicSpinor& chi0,
                                           const DisorderKernels& kernels, double t,
                                           int nworkers) {
  const int ns = static_cast<int>(chi0.s_grid.size());
  const int nq = static_cast<int>(chi0.q_grid.size());
  const double hb = chi0.h_bar;
  const double v = kernels.spec().v;

  Eigen::MatrixXcd fg, fu;
  kernels.eval_grid(chi0.s_grid, chi0.q_grid, t, fg, fu, nworkers);
  const int is0 = chi0.s_zero_index();

  CharacteristicSpinor out = chi0;
  out.t = t;
  parallel_for(nq, nworkers, [&](std::size_t iq) {
    const double q = chi0.q_grid[iq];
    const cplx fg0 = fg(is0, iq);
    const cplx fu0 = fu(is0, iq);
    const cplx bz = -I * (v * t * q / hb - fu0);
    for (int is = 0; is < ns; ++is) {
      const Matrix2c m = pauli_exp(-fg0, fg(is, iq), -fu(is, iq), bz);
      const cplx cp = chi0.chi_plus(is, iq);
      const cplx cm = chi0.chi_minus(is, iq);
      out.chi_plus(is, iq) = m(0, 0) * cp + m(0, 1) * cm;
      out.chi_minus(is, iq) = m(1, 0) * cp + m(1, 1) * cm;
    }
  });
  return out;
}

double right_mover_weight(const DisorderKernels& kernels, double t) {
  return 0.5 * (1.0 + std::exp(-2.0 * kernels.fg00(t)));
}

double left_mover_weight(const DisorderKernels& kernels, double t) {
  return 0.5 * (1.0 - std::exp(-2.0 * kernels.fg00(t)));
}

MomentumDistribution momentum_distribution(const CharacteristicSpinor& chi,
                                           const std::vector<double>& p_grid) {
  check_uniform(chi.s_grid, "momentum_distribution: s_grid");
  const int ns = static_cast<int>(chi.s_grid.size());
  const int iq0 = chi.q_zero_index();
  const double hb = chi.h_bar;
  const double ds = chi.s_grid[1] - chi.s_grid[0];

  MomentumDistribution out;
  out.p = p_grid;
  out.up.resize(p_grid.size());
  out.down.resize(p_grid.size());
  for (std::size_t k = 0; k < p_grid.size(); ++k) {
    cplx accp{0, 0}, accm{0, 0};
    for (int is = 0; is < ns; ++is) {
      const double w = (is == 0 || is == ns - 1) ? 0.5 : 1.0;
      const cplx ph = std::exp(-I * p_grid[k] * chi.s_grid[is] / hb) * w;
      accp += ph * chi.chi_plus(is, iq0);
      accm += ph * chi.chi_minus(is, iq0);
    }
    out.up[k] = std::real(accp) * ds / (2.0 * M_PI * hb);
    out.down[k] = std::real(accm) * ds / (2.0 * M_PI * hb);
  }
  return out;
}

MomentumDistribution momentum_distribution(const CharacteristicSpinor& chi) {
  // default p grid covering both band windows +-(p0 + spread), kept inside
  // the Nyquist window of the s sampling
  const double hb = chi.h_bar;
  const double qspan = chi.q_grid.back();  // ~ 8 hbar/sigma
  const double ds = chi.s_grid[1] - chi.s_grid[0];
  const double nyquist = M_PI * hb / ds;
  const double pmax = std::min(std::abs(chi.p0) + qspan, 0.999 * nyquist);
  std::vector<double> p(1025);
  for (std::size_t k = 0; k < p.size(); ++k)
    p[k] = -pmax + 2.0 * pmax * double(k) / (p.size() - 1);
  return momentum_distribution(chi, p);
}

double purity(const CharacteristicSpinor& chi) {
  const int ns = static_cast<int>(chi.s_grid.size());
  const int nq = static_cast<int>(chi.q_grid.size());
  const double ds = chi.s_grid[1] - chi.s_grid[0];
  const double dq = chi.q_grid[1] - chi.q_grid[0];
  cplx acc{0, 0};
  for (int iq = 0; iq < nq; ++iq) {
    const double wq = (iq == 0 || iq == nq - 1) ? 0.5 : 1.0;
    const int riq = nq - 1 - iq;
    for (int is = 0; is < ns; ++is) {
      const double w = wq * ((is == 0 || is == ns - 1) ? 0.5 : 1.0);
      const int ris = ns - 1 - is;
      acc += w * (chi.chi_plus(is, iq) * chi.chi_plus(ris, riq) +
                  chi.chi_minus(is, iq) * chi.chi_minus(ris, riq));
    }
  }
  return std::real(acc) * ds * dq / (2.0 * M_PI * chi.h_bar);
}

double mean_position(const CorrelatorSpec& spec, double p0, double t, double x0) {
  const double v = spec.v, hb = spec.h_bar, c0 = spec.c0;
  return x0 + (v - c0 / (p0 * p0 * v)) * t +
         c0 * hb / (2.0 * v * v * p0 * p0 * p0) * std::sin(2.0 * p0 * v * t / hb);
}

std::vector<double> mean_position_evolved(const DisorderKernels& kernels,
                                          const std::vector<double>& times, double x0) {
  const double v = kernels.spec().v;
  std::vector<double> out(times.size(), x0);
  double acc = x0;
  double prev_t = times.empty() ? 0.0 : times[0];
  double prev_v = times.empty() ? v : v * std::exp(-2.0 * kernels.fg00(prev_t));
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double vi = v * std::exp(-2.0 * kernels.fg00(times[i]));
    if (i > 0) acc += 0.5 * (prev_v + vi) * (times[i] - prev_t);
    out[i] = acc;
    prev_t = times[i];
    prev_v = vi;
  }
  return out;
}

double purity_plateau(const CorrelatorSpec& spec, double p0, double sigma) {
  const double l = spec.ell;
  const double frac = 1.0 - l / std::sqrt(l * l + 4.0 * sigma * sigma);
  return 1.0 - spec.c0 / (2.0 * spec.v * spec.v * p0 * p0) * frac;
}

}  // namespace ddqe::dirac
