#pragma once

#include <Eigen/Dense>

#include "ddqe/dirac/kernels.hpp"

namespace ddqe::dirac {

/// Two-component characteristic function chi^{+-}(s, q) of the Dirac state on
/// a uniform product grid. Grids are symmetric about 0 with an odd point
/// count, so s = 0 and q = 0 lie on the grid (the generator mixes values at
/// (s, q) and (0, q)) and (s, q) -> (-s, -q) is an index reflection.
struct CharacteristicSpinor {
  std::vector<double> s_grid;
  std::vector<double> q_grid;
  Eigen::MatrixXcd chi_plus;   // Ns x Nq
  Eigen::MatrixXcd chi_minus;  // Ns x Nq
  double p0 = 0.0;
  double t = 0.0;
  double h_bar = 1.0;

  int s_zero_index() const { return static_cast<int>(s_grid.size()) / 2; }
  int q_zero_index() const { return static_cast<int>(q_grid.size()) / 2; }

  /// chi_t^+(0,0) + chi_t^-(0,0); 1 for a normalized state at all times.
  double norm00() const;
};

/// Right-moving Gaussian wavepacket of width sigma centered at momentum p0:
/// chi0(s, q) = exp(-s^2/8 sigma^2 - q^2 sigma^2 / 2 hbar^2 + i p0 s/hbar).
/// Default grids: s in [-16 sigma, 16 sigma], q in [-8 hbar/sigma, 8 hbar/sigma].
/// The s span is wider than the q span because chi decays as
/// exp(-s^2/8 sigma^2): 16 sigma puts the truncation at e^{-32}, keeping the
/// transformed momentum density nonnegative to ~1e-10. ns = 0 picks the node
/// count automatically (>= 513, denser when p0 sigma/hbar is large so the
/// s sampling stays below the packet's Nyquist limit).
CharacteristicSpinor gaussian_packet(double p0, double sigma, double h_bar = 1.0,
                                     int ns = 0, int nq = 513, double s_span = 16.0,
                                     double q_span = 8.0);

/// One-shot evolution of chi0 to time t: the pointwise 2x2 matrix exponential
/// exp[-Fg(0,q) 1 + Fg(s,q) sx - Fu(s,q) sy - i (v t q/hbar - Fu(0,q)) sz]
/// applied at every grid point (closed Pauli form).
CharacteristicSpinor evolve_characteristic(const CharacteristicSpinor& chi0,
                                           const DisorderKernels& kernels, double t,
                                           int nworkers = 1);

/// Right-/left-mover weights chi^{+-}_t(0,0) for a right-moving initial state:
/// (1 +- exp(-2 Fg(0,0,t)))/2.
double right_mover_weight(const DisorderKernels& kernels, double t);
double left_mover_weight(const DisorderKernels& kernels, double t);

struct MomentumDistribution {
  std::vector<double> p;
  std::vector<double> up;    // P^+(p)
  std::vector<double> down;  // P^-(p)
};

/// P^{+-}(p) = (1/2 pi hbar) int ds e^{-i p s/hbar} chi^{+-}(s, 0), evaluated
/// as a discrete Fourier transform of the q = 0 column on the given p grid.
/// Requires a uniform s grid.
MomentumDistribution momentum_distribution(const CharacteristicSpinor& chi,
                                           const std::vector<double>& p_grid);
MomentumDistribution momentum_distribution(const CharacteristicSpinor& chi);

/// Tr[rho^2] = (1/2 pi hbar) int ds dq [chi+(s,q) chi+(-s,-q) + (-)-term].
double purity(const CharacteristicSpinor& chi);

/// Closed-form disorder-dressed mean position (weak disorder, p0 >> hbar/ell):
/// <x>(t) = x0 + (v - C0/p0^2 v) t + (C0 hbar / 2 v^2 p0^3) sin(2 p0 v t/hbar).
double mean_position(const CorrelatorSpec& spec, double p0, double t, double x0 = 0.0);

/// Mean position from the kernels: x0 + int_0^t v exp(-2 Fg(0,0,t')) dt'.
std::vector<double> mean_position_evolved(const DisorderKernels& kernels,
                                          const std::vector<double>& times,
                                          double x0 = 0.0);

/// Purity plateau estimate in the backscattering-suppressed regime:
/// r = 1 - (C0 / 2 v^2 p0^2) (1 - ell / sqrt(ell^2 + 4 sigma^2)).
/// The evolved characteristic state plateaus at a somewhat larger loss
/// (~C0/v^2 p0^2); see the analytic-path tests for the measured comparison.
double purity_plateau(const CorrelatorSpec& spec, double p0, double sigma);

}  // namespace ddqe::dirac
