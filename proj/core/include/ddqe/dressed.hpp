#pragma once

#include <memory>
#include <vector>

#include "ddqe/ensemble.hpp"
#include "ddqe/trajectory.hpp"

namespace ddqe {

enum class Representation { redfield, lindblad, short_time };

struct IntegratorSpec {
  enum class Method { rk4 };
  Method method = Method::rk4;
  double dt = 0.0;
  double t_max = 0.0;
  bool renormalize = false;
  /// Store every n-th step in the trajectory (t=0 and t_max always kept).
  int store_every = 1;
};

/// Time-dependent generator of the disorder-dressed master equation.
///
/// Internally the t'-kernel integrals are accumulated once on a uniform grid
/// (composite Simpson, cumulative) and interpolated linearly at RK4 stage
/// times; the short-time representation needs no kernel grid and evaluates
/// its closed form directly.
class DressedGenerator {
 public:
  Representation representation() const { return rep_; }
  int dim() const { return dim_; }
  double hbar() const { return hbar_; }
  const ComplexMatrix& hbar_avg() const { return hbar_avg_; }
  double t_grid_max() const { return grid_.empty() ? 0.0 : grid_.back(); }
  double t_grid_step() const { return grid_.size() > 1 ? grid_[1] - grid_[0] : 0.0; }

  /// Full right-hand side d(rho)/dt at time t.
  ComplexMatrix apply(double t, const ComplexMatrix& rho) const;

  /// Hermitian (effective) Hamiltonian part at time t. For the Redfield
  /// representation this is the bare Hbar.
  ComplexMatrix h_eff(double t) const;

  /// Trace-annihilating remainder of the generator at time t.
  ComplexMatrix dissipator(double t, const ComplexMatrix& rho) const;

  /// (2/(hbar^2 d)) Tr E[V^2]: the integrated decoherence-rate scale per unit
  /// time used by the perturbative validity guard.
  double validity_rate() const { return validity_rate_; }

  friend DressedGenerator build_redfield(const HamiltonianEnsemble&,
                                         const std::vector<double>&);
  friend DressedGenerator build_lindblad(const HamiltonianEnsemble&,
                                         const std::vector<double>&);
  friend DressedGenerator build_short_time(const HamiltonianEnsemble&);

 private:
  Representation rep_ = Representation::redfield;
  int dim_ = 2;
  double hbar_ = 1.0;
  double validity_rate_ = 0.0;
  ComplexMatrix hbar_avg_;

  // gridded representations
  std::vector<double> grid_;
  std::vector<ComplexMatrix> h_nodes_;  // H_eff(t_j)
  std::vector<SuperOp> d_nodes_;        // dissipator superoperator at t_j

  // short-time representation
  ComplexMatrix evvh_;  // E[[V,[V,Hbar]]]
  ComplexMatrix ev2_;   // E[V^2]
  SuperOp evxv_;        // rho -> E[V rho V]

  std::pair<std::size_t, double> locate(double t) const;
};

/// Time-nonlocal Redfield form: d(rho)/dt = -(i/hbar)[Hbar, rho]
///   - (1/hbar^2) int_0^t dt' E[V, [Vt(t'), rho]].
/// t_grid must be uniform, start at 0 and cover every time the generator
/// will be evaluated at.
DressedGenerator build_redfield(const HamiltonianEnsemble& ens,
                                const std::vector<double>& t_grid);

/// Lindblad form with H_eff(t) = Hbar - (i/2 hbar) int_0^t dt' E[V, Vt(t')]
/// and dissipator sum_a (2a/hbar^2) int_0^t dt' E[L(L^a_t', .)],
/// L^a_t = (V + a Vt(t))/2. Algebraically identical to the Redfield form.
DressedGenerator build_lindblad(const HamiltonianEnsemble& ens,
                                const std::vector<double>& t_grid);

/// Next-to-leading short-time form: H_eff(t) = Hbar + (t^2/4 hbar^2)
/// E[[V,[V,Hbar]]], dissipator (2t/hbar^2) E[L(L(t), .)] with
/// L(t) = Ubar(t/4) V Ubar(t/4)^dag. Manifestly positive rates.
DressedGenerator build_short_time(const HamiltonianEnsemble& ens);

/// Per-realization Lindblad operators L^{(+-)}_{eps,t} = (V + a Vt(t))/2.
std::pair<ComplexMatrix, ComplexMatrix> lindblad_ops(const HamiltonianEnsemble& ens,
                                                     const ComplexMatrix& V, double t);

/// RK4 integration of the dressed master equation. Hermiticity is restored by
/// symmetrization after every step (drift recorded); trace is monitored and a
/// drift beyond 1e-8 raises an integration failure. The perturbative validity
/// guard fires once validity_rate * t > 0.5 (warning + breach time recorded).
TrajectoryRecord integrate(const DressedGenerator& gen, const ComplexMatrix& rho0,
                           const IntegratorSpec& spec);

/// Uniform grid helper: n+1 nodes over [0, t_max].
std::vector<double> uniform_grid(double t_max, int n);

}  // namespace ddqe
