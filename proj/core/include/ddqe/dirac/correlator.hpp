#pragma once

#include <vector>

#include "ddqe/matrix.hpp"
#include "ddqe/rng.hpp"

namespace ddqe::dirac {

enum class CorrelatorForm { gaussian, custom_table };

/// Disorder correlation C(x) = C0 exp(-(x/ell)^2) with momentum transfer
/// distribution G(q) = C0 ell/(2 sqrt(pi) hbar) exp(-(q ell / 2 hbar)^2),
/// normalized so that int dq G(q) = C(0) = C0. A custom table holds G on a
/// uniform symmetric q grid (linear interpolation, zero outside).
struct CorrelatorSpec {
  double c0 = 0.0;
  double ell = 1.0;
  CorrelatorForm form = CorrelatorForm::gaussian;
  double h_bar = 1.0;
  double v = 1.0;

  // custom table: G values at q = -q_max + j*dq, j = 0..n-1
  std::vector<double> table_g;
  double table_qmax = 0.0;

  static CorrelatorSpec gaussian_correlator(double c0, double ell, double h_bar = 1.0,
                                            double v = 1.0);
  static CorrelatorSpec custom(std::vector<double> g_values, double q_max,
                               double h_bar = 1.0, double v = 1.0);

  /// Half-width of the q support used by quadratures.
  double q_support() const;
};

double g_of_q(const CorrelatorSpec& spec, double q);
double c_of_x(const CorrelatorSpec& spec, double x);

/// int dq G(q) by quadrature (equals C0 for the Gaussian form).
double g_integral(const CorrelatorSpec& spec);

/// Real Gaussian random field with E[f] = 0 and E[f(x) f(x')] = C(x - x') on
/// a periodic grid of n points with spacing dx: white complex noise filtered
/// by sqrt(G(q_k) * 2 pi hbar / L), Hermitian-symmetrized, inverse FFT.
std::vector<double> sample_mass_field(const CorrelatorSpec& spec, int n, double dx,
                                      RngStream& rng);

}  // namespace ddqe::dirac
