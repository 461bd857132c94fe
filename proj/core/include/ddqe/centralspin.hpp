#pragma once

#include <functional>

#include "ddqe/ensemble.hpp"
#include "ddqe/rng.hpp"
#include "ddqe/trajectory.hpp"

namespace ddqe {

struct CentralSpinParams {
  double omega = 1.0;
  double delta_sq_mean = 0.0;
  double h_bar = 1.0;
};

/// Haar integral int dmu(W) W X1 W^dag X2 W X3 W^dag by the two-term
/// Weingarten formula; d = 1 degenerates to the scalar product X1 X2 X3.
ComplexMatrix weingarten_haar_integral(const ComplexMatrix& X1, const ComplexMatrix& X2,
                                       const ComplexMatrix& X3, int d);

/// Effective Hamiltonian of the isotropically disordered central spin:
/// hbar*omega*sigma_z * (1 + D2 t^2 sinc^2(omega t) / (6 hbar^2)).
///
/// Note the sign and magnitude of the correction: evaluating the Weingarten
/// integral of E[V, Vt(t')] gives +D2/6, which also matches the short-time
/// expansion Hbar + (t^2/4 hbar^2) E[[V,[V,Hbar]]] = Hbar (1 + D2 t^2/6 hbar^2)
/// and the brute-force disorder average.
ComplexMatrix h_eff_central(const CentralSpinParams& p, double t);

/// Right-hand side of the compact central-spin master equation:
/// -(i/hbar)[H_eff(t), rho] + (D2 t / 3 hbar^2) { L(P_up) + L(P_down)
///   + sinc(2 omega t) [L(sigma_+) + L(sigma_-)] } (rho).
ComplexMatrix me_rhs_central(const CentralSpinParams& p, double t,
                             const ComplexMatrix& rho);

struct CentralSpinSolution {
  CentralSpinParams params;
  double rho_uu_0 = 0.0;
  cplx rho_ud_0{0.0, 0.0};

  double rho_uu(double t) const;
  cplx rho_ud(double t) const;
  ComplexMatrix state(double t) const;
  double purity(double t) const;
};

/// Closed-form solution of the central-spin master equation:
///   rho_uu(t) = 1/2 + (rho_uu0 - 1/2) exp(-D2 t^2 sinc^2(omega t)/3 hbar^2)
///   rho_ud(t) = rho_ud0 e^{-2 i omega t}
///               * exp(-i (D2 t / 6 hbar^2 omega)(1 - sinc(2 omega t)))
///               * exp(-(D2 t^2 / 6 hbar^2)(1 + sinc^2(omega t)))
/// The phase factor's omega -> 0 limit is taken by series for |omega t| small.
CentralSpinSolution exact_solution(const CentralSpinParams& p, const ComplexMatrix& rho0);

enum class Fig2Case { i, ii, iii };

struct Fig2Scenario {
  CentralSpinParams params;
  ComplexMatrix rho0;
  TrajectoryRecord me;  // closed-form master-equation trajectory
  TrajectoryRecord mc;  // direct ensemble average
  std::vector<double> purity_me;
  std::vector<double> purity_mc;
};

/// Scenario runner for the three reference cases:
///   i:   sqrt(D2) = 0.05 omega, psi0 = (|down> + |up>)/sqrt(2)
///   ii:  sqrt(D2) = 0.10 omega, psi0 = cos(pi/12)|down> + sin(pi/12)|up>
///   iii: sqrt(D2) = 0.20 omega, psi0 = |down>
/// Grid: omega t in [0, 12], `points` samples. MC averaged over K realizations.
Fig2Scenario run_fig2_scenario(Fig2Case c, int K, RngStream& rng, double omega = 1.0,
                               double h_bar = 1.0, int points = 600,
                               DeltaDist delta_dist = DeltaDist::fixed,
                               int nworkers = 1);

ComplexMatrix fig2_initial_state(Fig2Case c);
double fig2_delta_sq(Fig2Case c, double omega);

}  // namespace ddqe
