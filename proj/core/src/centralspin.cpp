#include "ddqe/centralspin.hpp"

#include <cmath>
#include <stdexcept>

#include "ddqe/density.hpp"
#include "ddqe/mc_average.hpp"

namespace ddqe {

ComplexMatrix weingarten_haar_integral(const ComplexMatrix& X1, const ComplexMatrix& X2,
                                       const ComplexMatrix& X3, int d) {
  if (X1.rows() != d || X2.rows() != d || X3.rows() != d)
    throw std::invalid_argument("weingarten_haar_integral: dimension mismatch");
  if (d == 1) return X1 * X2 * X3;  // W is a scalar phase; it cancels
  const cplx t13 = (X1 * X3).trace();
  const cplx t1 = X1.trace();
  const cplx t3 = X3.trace();
  const double den = double(d) * (double(d) * d - 1.0);
  const cplx c_id = (double(d) * t13 - t1 * t3) / den;
  const cplx c_x2 = (double(d) * t1 * t3 - t13) / den;
  return c_id * X2.trace() * ComplexMatrix::Identity(d, d) + c_x2 * X2;
}

ComplexMatrix h_eff_central(const CentralSpinParams& p, double t) {
  const double s = sinc(p.omega * t);
  const double corr = p.delta_sq_mean * t * t * s * s / (6.0 * p.h_bar * p.h_bar);
  return p.h_bar * p.omega * (1.0 + corr) * pauli::z();
}

ComplexMatrix me_rhs_central(const CentralSpinParams& p, double t,
                             const ComplexMatrix& rho) {
  if (rho.rows() != 2) throw std::invalid_argument("me_rhs_central: d != 2");
  const double hb = p.h_bar;
  const ComplexMatrix h = h_eff_central(p, t);
  ComplexMatrix rhs = -(I / hb) * commutator(h, rho);
  const double rate = p.delta_sq_mean * t / (3.0 * hb * hb);
  rhs += rate * (lindblad_dissipator(pauli::proj_up(), rho) +
                 lindblad_dissipator(pauli::proj_down(), rho));
  rhs += rate * sinc(2.0 * p.omega * t) *
         (lindblad_dissipator(pauli::plus(), rho) + lindblad_dissipator(pauli::minus(), rho));
  return rhs;
}

double CentralSpinSolution::rho_uu(double t) const {
  const auto& p = params;
  const double s = sinc(p.omega * t);
  return 0.5 + (rho_uu_0 - 0.5) *
                   std::exp(-p.delta_sq_mean * t * t * s * s / (3.0 * p.h_bar * p.h_bar));
}

cplx CentralSpinSolution::rho_ud(double t) const {
  const auto& p = params;
  const double hb2 = p.h_bar * p.h_bar;
  const double s = sinc(p.omega * t);
  // phase exponent: -(D2 t / 6 hbar^2 omega) (1 - sinc(2 omega t)); the
  // omega -> 0 limit is (1 - sinc(2x))/omega -> 0, evaluated by series for
  // small |omega t| to avoid cancellation.
  const double x = p.omega * t;
  double phase;
  if (std::abs(x) < 1e-4) {
    // (1 - sinc(2x))/x = 2x/3 - 2x^3/15 + ...
    const double series = 2.0 * x / 3.0 - 2.0 * x * x * x / 15.0;
    phase = -(p.delta_sq_mean * t * t / (6.0 * hb2)) * series;
  } else {
    phase = -(p.delta_sq_mean * t / (6.0 * hb2 * p.omega)) * (1.0 - sinc(2.0 * x));
  }
  const double decay = -(p.delta_sq_mean * t * t / (6.0 * hb2)) * (1.0 + s * s);
  return rho_ud_0 * std::exp(cplx(decay, -2.0 * p.omega * t + phase));
}

ComplexMatrix CentralSpinSolution::state(double t) const {
  ComplexMatrix rho(2, 2);
  const double uu = rho_uu(t);
  const cplx ud = rho_ud(t);
  rho(0, 0) = uu;
  rho(1, 1) = 1.0 - uu;
  rho(0, 1) = ud;
  rho(1, 0) = std::conj(ud);
  return rho;
}

double CentralSpinSolution::purity(double t) const {
  const double uu = rho_uu(t);
  const double ud2 = std::norm(rho_ud(t));
  return uu * uu + (1.0 - uu) * (1.0 - uu) + 2.0 * ud2;
}

CentralSpinSolution exact_solution(const CentralSpinParams& p, const ComplexMatrix& rho0) {
  if (rho0.rows() != 2) throw std::invalid_argument("exact_solution: d != 2");
  CentralSpinSolution sol;
  sol.params = p;
  sol.rho_uu_0 = std::real(rho0(0, 0));
  sol.rho_ud_0 = rho0(0, 1);
  return sol;
}

ComplexMatrix fig2_initial_state(Fig2Case c) {
  ComplexVector psi(2);
  switch (c) {
    case Fig2Case::i:
      psi << 1.0, 1.0;  // (|down> + |up>)/sqrt(2); component 0 is |up>
      break;
    case Fig2Case::ii:
      psi << std::sin(M_PI / 12.0), std::cos(M_PI / 12.0);
      break;
    case Fig2Case::iii:
      psi << 0.0, 1.0;
      break;
  }
  return DensityMatrix::pure(psi).matrix();
}

double fig2_delta_sq(Fig2Case c, double omega) {
  switch (c) {
    case Fig2Case::i: return 0.05 * 0.05 * omega * omega;
    case Fig2Case::ii: return 0.10 * 0.10 * omega * omega;
    case Fig2Case::iii: return 0.20 * 0.20 * omega * omega;
  }
  return 0.0;
}

Fig2Scenario run_fig2_scenario(Fig2Case c, int K, RngStream& rng, double omega,
                               double h_bar, int points, DeltaDist delta_dist,
                               int nworkers) {
  Fig2Scenario out;
  out.params = {omega, fig2_delta_sq(c, omega), h_bar};
  out.rho0 = fig2_initial_state(c);

  std::vector<double> times(points);
  for (int i = 0; i < points; ++i) times[i] = 12.0 / omega * i / (points - 1);

  const CentralSpinSolution sol = exact_solution(out.params, out.rho0);
  out.me.source = TrajectorySource::me;
  out.me.times = times;
  for (double t : times) out.me.states.push_back(sol.state(t));

  CentralSpinEnsembleSpec spec;
  spec.omega = omega;
  spec.delta_sq_mean = out.params.delta_sq_mean;
  spec.delta_dist = delta_dist;
  const auto ens = HamiltonianEnsemble::central_spin(spec, h_bar);
  out.mc = mc_average_evolution(ens, out.rho0, times, K, rng, nworkers);

  for (std::size_t i = 0; i < times.size(); ++i) {
    out.purity_me.push_back(purity(out.me.states[i]));
    out.purity_mc.push_back(purity(out.mc.states[i]));
  }
  return out;
}

}  // namespace ddqe
