#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ddqe/matrix.hpp"
#include "ddqe/rng.hpp"

namespace ddqe {

/// Disorder expectations entering the dressed master equation, evaluated
/// either in closed form (central spin, scalar dephasing), exactly (discrete
/// ensembles), or by Monte-Carlo sampling. Vt(t) denotes the interaction
/// picture potential Ubar(t) V Ubar(t)^dag.
class ExpectationKernel {
 public:
  virtual ~ExpectationKernel() = default;

  virtual ComplexMatrix evv(double t) const = 0;       // E[V Vt(t)]
  virtual SuperOp sandwich_v_vt(double t) const = 0;   // rho -> E[V rho Vt(t)]
  virtual SuperOp sandwich_vt_v(double t) const = 0;   // rho -> E[Vt(t) rho V]
  virtual ComplexMatrix ev2() const = 0;               // E[V^2]
  virtual SuperOp evxv() const = 0;                    // rho -> E[V rho V]
  virtual ComplexMatrix evvh() const = 0;              // E[[V, [V, Hbar]]]

  virtual bool closed_form() const = 0;
  /// Relative statistical error scale of the expectations (0 if exact).
  virtual double statistical_error() const = 0;
};

enum class EnsembleKind { central_spin, scalar_dephasing, custom };
enum class DeltaDist { fixed, gaussian };

struct CentralSpinEnsembleSpec {
  double omega = 1.0;          // level splitting of Hbar = hbar*omega*sigma_z
  double delta_sq_mean = 0.0;  // E[Delta^2]
  DeltaDist delta_dist = DeltaDist::fixed;
};

/// Hamiltonian ensemble {(Hbar + V_eps, p_eps)} with a seeded sampler of
/// disorder potentials. All V_eps are Hermitian and average to zero.
class HamiltonianEnsemble {
 public:
  /// Central spin: V = (Delta/2) W sigma_z W^dag, W Haar, Delta from p_Delta.
  static HamiltonianEnsemble central_spin(const CentralSpinEnsembleSpec& spec,
                                          double hbar = 1.0);

  /// Commuting dephasing: V = hbar * eps * sigma_z, eps ~ N(0, s^2).
  static HamiltonianEnsemble scalar_dephasing(double omega, double s, double hbar = 1.0);

  /// Finite ensemble with explicit weights; potentials are mean-subtracted so
  /// that sum_j w_j V_j = 0 holds exactly. Expectations are evaluated exactly.
  static HamiltonianEnsemble discrete(ComplexMatrix hbar_avg,
                                      std::vector<ComplexMatrix> potentials,
                                      std::vector<double> weights, double hbar = 1.0);

  /// Generic sampler; expectations fall back to MC with mc_samples draws.
  static HamiltonianEnsemble sampler(ComplexMatrix hbar_avg,
                                     std::function<ComplexMatrix(RngStream&)> draw,
                                     int mc_samples = 10000, std::uint64_t mc_seed = 0,
                                     double hbar = 1.0);

  int dim() const { return dim_; }
  double hbar() const { return hbar_; }
  EnsembleKind kind() const { return kind_; }
  const ComplexMatrix& hbar_avg() const { return hbar_avg_; }
  const CentralSpinEnsembleSpec& central_spin_spec() const { return cs_; }
  double dephasing_sigma() const { return deph_s_; }

  /// One disorder potential V_eps.
  ComplexMatrix sample_realization(RngStream& rng) const;

  /// Ubar(t) = exp(-i Hbar t / hbar).
  ComplexMatrix average_propagator(double t) const;

  /// Ubar(t) V Ubar(t)^dag.
  ComplexMatrix interaction_potential(const ComplexMatrix& V, double t) const;

  std::shared_ptr<const ExpectationKernel> expectation_kernel() const;

  /// Tr E[V^2] (exact where available, else the MC estimate).
  double trace_ev2() const;

 private:
  HamiltonianEnsemble() = default;

  int dim_ = 2;
  double hbar_ = 1.0;
  EnsembleKind kind_ = EnsembleKind::custom;
  ComplexMatrix hbar_avg_;
  CentralSpinEnsembleSpec cs_;
  double deph_s_ = 0.0;
  std::vector<ComplexMatrix> pots_;
  std::vector<double> weights_;
  std::function<ComplexMatrix(RngStream&)> draw_;
  int mc_samples_ = 10000;
  std::uint64_t mc_seed_ = 0;
  mutable std::shared_ptr<const ExpectationKernel> kernel_;
};

}  // namespace ddqe
