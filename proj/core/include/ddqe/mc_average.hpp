#pragma once

#include "ddqe/ensemble.hpp"
#include "ddqe/trajectory.hpp"

namespace ddqe {

/// Brute-force disorder average: rho_bar(t) = (1/K) sum_k U_k(t) rho0 U_k(t)^dag
/// with U_k = exp(-i (Hbar + V_k) t / hbar). Realization k draws from
/// RngStream(base, k) where base is derived from rng, so the result is
/// independent of the worker count up to floating-point reduction order
/// (<= 1e-13); nworkers = 1 gives the serial, byte-stable reduction.
TrajectoryRecord mc_average_evolution(const HamiltonianEnsemble& ens,
                                      const ComplexMatrix& rho0,
                                      const std::vector<double>& times, int K,
                                      RngStream& rng, int nworkers = 1);

/// Deterministic disorder average for the central-spin ensemble by product
/// quadrature (Gauss-Legendre over the Haar sphere polar angle, midpoint over
/// the azimuth, Gauss-Hermite over a Gaussian p_Delta). Converges to the
/// exact average to machine precision; no sampling noise.
TrajectoryRecord exact_average_evolution(const HamiltonianEnsemble& ens,
                                         const ComplexMatrix& rho0,
                                         const std::vector<double>& times,
                                         int n_polar = 96, int n_azimuth = 96,
                                         int n_delta = 24);

/// Commuting dephasing ensemble H_eps = hbar (omega + eps) sigma_z with
/// eps ~ N(0, s^2): the exact averaged off-diagonal ratio
/// rho_ud(t)/rho_ud(0) = exp(-2 i omega t) exp(-2 s^2 t^2).
cplx dephasing_exact_offdiagonal(double omega, double s, double t);

}  // namespace ddqe
