#include "ddqe/dirac/correlator.hpp"

#include <cmath>
#include <stdexcept>

#include "fftw_util.hpp"

namespace ddqe::dirac {

CorrelatorSpec CorrelatorSpec::gaussian_correlator(double c0, double ell, double h_bar,
                                                   double v) {
  if (c0 < 0.0) throw std::domain_error("CorrelatorSpec: c0 < 0");
  if (ell <= 0.0) throw std::domain_error("CorrelatorSpec: ell <= 0");
  CorrelatorSpec s;
  s.c0 = c0;
  s.ell = ell;
  s.form = CorrelatorForm::gaussian;
  s.h_bar = h_bar;
  s.v = v;
  return s;
}

CorrelatorSpec CorrelatorSpec::custom(std::vector<double> g_values, double q_max,
                                      double h_bar, double v) {
  if (g_values.size() < 3 || q_max <= 0.0)
    throw std::invalid_argument("CorrelatorSpec::custom: bad table");
  for (double g : g_values)
    if (g < 0.0) throw std::domain_error("CorrelatorSpec::custom: negative G entry");
  CorrelatorSpec s;
  s.form = CorrelatorForm::custom_table;
  s.h_bar = h_bar;
  s.v = v;
  s.table_g = std::move(g_values);
  s.table_qmax = q_max;
  // symmetrize so G(q) = G(-q) holds exactly
  const std::size_t n = s.table_g.size();
  for (std::size_t j = 0; j < n / 2; ++j) {
    const double m = 0.5 * (s.table_g[j] + s.table_g[n - 1 - j]);
    s.table_g[j] = s.table_g[n - 1 - j] = m;
  }
  s.c0 = g_integral(s);
  // effective correlation length from the table's q variance
  double m0 = 0.0, m2 = 0.0;
  const double dq = 2.0 * q_max / (n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    const double q = -q_max + j * dq;
    m0 += s.table_g[j];
    m2 += q * q * s.table_g[j];
  }
  s.ell = (m0 > 0.0 && m2 > 0.0) ? std::sqrt(2.0) * h_bar / std::sqrt(m2 / m0) : 1.0;
  return s;
}

double CorrelatorSpec::q_support() const {
  if (form == CorrelatorForm::gaussian) return 8.0 * std::sqrt(2.0) * h_bar / ell;
  return table_qmax;
}

double g_of_q(const CorrelatorSpec& spec, double q) {
  if (spec.form == CorrelatorForm::gaussian) {
    const double z = q * spec.ell / (2.0 * spec.h_bar);
    return spec.c0 * spec.ell / (2.0 * std::sqrt(M_PI) * spec.h_bar) * std::exp(-z * z);
  }
  const double qmax = spec.table_qmax;
  if (q <= -qmax || q >= qmax) return 0.0;
  const std::size_t n = spec.table_g.size();
  const double u = (q + qmax) / (2.0 * qmax) * (n - 1);
  const std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(u), n - 2);
  const double w = u - j;
  return (1.0 - w) * spec.table_g[j] + w * spec.table_g[j + 1];
}

double c_of_x(const CorrelatorSpec& spec, double x) {
  if (spec.form == CorrelatorForm::gaussian) {
    const double z = x / spec.ell;
    return spec.c0 * std::exp(-z * z);
  }
  // C(x) = int dq e^{i q x / hbar} G(q), trapezoid over the table support
  const int n = 4097;
  const double qmax = spec.q_support();
  const double dq = 2.0 * qmax / (n - 1);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double q = -qmax + j * dq;
    const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    acc += w * g_of_q(spec, q) * std::cos(q * x / spec.h_bar);
  }
  return acc * dq;
}

double g_integral(const CorrelatorSpec& spec) {
  const int n = 8193;
  const double qmax = spec.q_support();
  const double dq = 2.0 * qmax / (n - 1);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    acc += w * g_of_q(spec, -qmax + j * dq);
  }
  return acc * dq;
}

std::vector<double> sample_mass_field(const CorrelatorSpec& spec, int n, double dx,
                                      RngStream& rng) {
  if (n < 4 || (n & (n - 1)) != 0)
    throw std::invalid_argument("sample_mass_field: n must be a power of two >= 4");
  if (dx <= 0.0) throw std::invalid_argument("sample_mass_field: dx <= 0");
  const double L = n * dx;
  const double hb = spec.h_bar;
  const double dq = 2.0 * M_PI * hb / L;

  auto spectrum = [&](int k) {
    const double q = dq * (k <= n / 2 ? k : k - n);
    return g_of_q(spec, q) * dq;  // E[|c_k|^2]
  };

  detail::Fft1d fft(n);
  cplx* c = fft.data();
  c[0] = std::sqrt(spectrum(0)) * rng.gaussian();
  c[n / 2] = std::sqrt(spectrum(n / 2)) * rng.gaussian();
  for (int k = 1; k < n / 2; ++k) {
    const double amp = std::sqrt(0.5 * spectrum(k));
    const cplx z(amp * rng.gaussian(), amp * rng.gaussian());
    c[k] = z;
    c[n - k] = std::conj(z);
  }
  fft.backward();  // f(x_j) = sum_k c_k e^{i q_k x_j / hbar}, x_j = j dx
  std::vector<double> field(n);
  for (int j = 0; j < n; ++j) field[j] = std::real(c[j]);
  return field;
}

}  // namespace ddqe::dirac
