#include "ddqe/ensemble.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "ddqe/haar.hpp"
#include "ddqe/mat_exp.hpp"

namespace ddqe {

namespace {

// Haar averages over W for V = (Delta/2) W sigma_z W^dag at d = 2, obtained
// from the two-term Weingarten formula. With theta = omega*t:
//   E[V Vt(t)]        = (D2/4) [(cos^2 - sin^2/3) 1 + (2i/3) sin(2 theta) sz]
//   E[V rho Vt(t)]    = (D2/4) [(2/3) Tr(rho e^{-i th sz}) e^{+i th sz} - rho/3]
//   E[Vt(t) rho V]    = (D2/4) [(2/3) Tr(rho e^{+i th sz}) e^{-i th sz} - rho/3]
//   E[[V,[V, Hbar]]]  = (2 D2/3) Hbar
class CentralSpinKernel final : public ExpectationKernel {
 public:
  CentralSpinKernel(double omega, double d2, double hbar)
      : om_(omega), d2_(d2), hbar_(hbar) {}

  ComplexMatrix evv(double t) const override {
    const double th = om_ * t;
    const double c = std::cos(th), s = std::sin(th);
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    const double di = 0.25 * d2_ * (c * c - s * s / 3.0);
    const cplx zi = 0.25 * d2_ * (2.0 / 3.0) * std::sin(2.0 * th) * I;
    m(0, 0) = di + zi;
    m(1, 1) = di - zi;
    return m;
  }

  SuperOp sandwich_v_vt(double t) const override { return sandwich(t, +1); }
  SuperOp sandwich_vt_v(double t) const override { return sandwich(t, -1); }

  ComplexMatrix ev2() const override { return 0.25 * d2_ * ComplexMatrix::Identity(2, 2); }

  SuperOp evxv() const override {
    SuperOp s = SuperOp::Zero(4, 4);
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    s += (d2_ / 6.0) * rank1(id, id);
    s -= (d2_ / 12.0) * SuperOp::Identity(4, 4);
    return s;
  }

  ComplexMatrix evvh() const override {
    return (2.0 * d2_ / 3.0) * hbar_ * om_ * pauli::z();
  }

  bool closed_form() const override { return true; }
  double statistical_error() const override { return 0.0; }

 private:
  // superop vec(rho) -> X * Tr[Y rho]  (column-major vec)
  static SuperOp rank1(const ComplexMatrix& X, const ComplexMatrix& Y) {
    return vec(X) * vec(ComplexMatrix(Y.transpose())).transpose();
  }

  SuperOp sandwich(double t, int sgn) const {
    const double th = sgn * om_ * t;
    ComplexMatrix ep = ComplexMatrix::Zero(2, 2);  // e^{+i th sz}
    ep(0, 0) = std::exp(I * th);
    ep(1, 1) = std::exp(-I * th);
    SuperOp s = (d2_ / 6.0) * rank1(ep, ComplexMatrix(ep.adjoint()));
    s -= (d2_ / 12.0) * SuperOp::Identity(4, 4);
    return s;
  }

  double om_, d2_, hbar_;
};

// V = hbar eps sigma_z, eps ~ N(0, s^2): everything commutes with Hbar.
class DephasingKernel final : public ExpectationKernel {
 public:
  DephasingKernel(double s, double hbar) : v2_(hbar * hbar * s * s) {}

  ComplexMatrix evv(double) const override {
    return v2_ * ComplexMatrix::Identity(2, 2);
  }
  SuperOp sandwich_v_vt(double) const override { return szsz(); }
  SuperOp sandwich_vt_v(double) const override { return szsz(); }
  ComplexMatrix ev2() const override { return v2_ * ComplexMatrix::Identity(2, 2); }
  SuperOp evxv() const override { return szsz(); }
  ComplexMatrix evvh() const override { return ComplexMatrix::Zero(2, 2); }
  bool closed_form() const override { return true; }
  double statistical_error() const override { return 0.0; }

 private:
  SuperOp szsz() const { return v2_ * sandwich_superop(pauli::z(), pauli::z()); }
  double v2_;
};

// Exact weighted sums over a finite list of potentials.
class DiscreteKernel final : public ExpectationKernel {
 public:
  DiscreteKernel(const ComplexMatrix& hbar_avg, double hbar,
                 std::vector<ComplexMatrix> pots, std::vector<double> w, double stat_err)
      : hbar_avg_(hbar_avg), hbar_(hbar), pots_(std::move(pots)), w_(std::move(w)),
        stat_err_(stat_err) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(hbar_avg_));
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
  }

  ComplexMatrix evv(double t) const override {
    const ComplexMatrix U = prop(t);
    ComplexMatrix acc = ComplexMatrix::Zero(dim(), dim());
    for (std::size_t j = 0; j < pots_.size(); ++j)
      acc += w_[j] * pots_[j] * (U * pots_[j] * U.adjoint());
    return acc;
  }

  SuperOp sandwich_v_vt(double t) const override {
    const ComplexMatrix U = prop(t);
    SuperOp acc = SuperOp::Zero(dim() * dim(), dim() * dim());
    for (std::size_t j = 0; j < pots_.size(); ++j)
      acc += w_[j] * sandwich_superop(pots_[j], ComplexMatrix(U * pots_[j] * U.adjoint()));
    return acc;
  }

  SuperOp sandwich_vt_v(double t) const override {
    const ComplexMatrix U = prop(t);
    SuperOp acc = SuperOp::Zero(dim() * dim(), dim() * dim());
    for (std::size_t j = 0; j < pots_.size(); ++j)
      acc += w_[j] * sandwich_superop(ComplexMatrix(U * pots_[j] * U.adjoint()), pots_[j]);
    return acc;
  }

  ComplexMatrix ev2() const override {
    ComplexMatrix acc = ComplexMatrix::Zero(dim(), dim());
    for (std::size_t j = 0; j < pots_.size(); ++j) acc += w_[j] * pots_[j] * pots_[j];
    return acc;
  }

  SuperOp evxv() const override {
    SuperOp acc = SuperOp::Zero(dim() * dim(), dim() * dim());
    for (std::size_t j = 0; j < pots_.size(); ++j)
      acc += w_[j] * sandwich_superop(pots_[j], pots_[j]);
    return acc;
  }

  ComplexMatrix evvh() const override {
    ComplexMatrix acc = ComplexMatrix::Zero(dim(), dim());
    for (std::size_t j = 0; j < pots_.size(); ++j)
      acc += w_[j] * commutator(pots_[j], commutator(pots_[j], hbar_avg_));
    return acc;
  }

  bool closed_form() const override { return false; }
  double statistical_error() const override { return stat_err_; }

 private:
  int dim() const { return static_cast<int>(hbar_avg_.rows()); }

  ComplexMatrix prop(double t) const {
    ComplexVector ph(evals_.size());
    for (int i = 0; i < evals_.size(); ++i)
      ph(i) = std::exp(-I * evals_(i) * t / hbar_);
    return evecs_ * ph.asDiagonal() * evecs_.adjoint();
  }

  ComplexMatrix hbar_avg_;
  double hbar_;
  std::vector<ComplexMatrix> pots_;
  std::vector<double> w_;
  double stat_err_;
  Eigen::VectorXd evals_;
  ComplexMatrix evecs_;
};

}  // namespace

HamiltonianEnsemble HamiltonianEnsemble::central_spin(const CentralSpinEnsembleSpec& spec,
                                                      double hbar) {
  if (spec.delta_sq_mean < 0.0)
    throw std::domain_error("central_spin: delta_sq_mean < 0");
  HamiltonianEnsemble e;
  e.dim_ = 2;
  e.hbar_ = hbar;
  e.kind_ = EnsembleKind::central_spin;
  e.cs_ = spec;
  e.hbar_avg_ = hbar * spec.omega * pauli::z();
  return e;
}

HamiltonianEnsemble HamiltonianEnsemble::scalar_dephasing(double omega, double s,
                                                          double hbar) {
  if (s < 0.0) throw std::domain_error("scalar_dephasing: s < 0");
  HamiltonianEnsemble e;
  e.dim_ = 2;
  e.hbar_ = hbar;
  e.kind_ = EnsembleKind::scalar_dephasing;
  e.deph_s_ = s;
  e.cs_.omega = omega;
  e.hbar_avg_ = hbar * omega * pauli::z();
  return e;
}

HamiltonianEnsemble HamiltonianEnsemble::discrete(ComplexMatrix hbar_avg,
                                                  std::vector<ComplexMatrix> potentials,
                                                  std::vector<double> weights,
                                                  double hbar) {
  if (potentials.empty() || potentials.size() != weights.size())
    throw std::invalid_argument("discrete ensemble: size mismatch");
  const int d = static_cast<int>(hbar_avg.rows());
  double wsum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::domain_error("discrete ensemble: negative weight");
    wsum += w;
  }
  ComplexMatrix mean = ComplexMatrix::Zero(d, d);
  for (std::size_t j = 0; j < potentials.size(); ++j) {
    weights[j] /= wsum;
    potentials[j] = hermitize(potentials[j]);
    mean += weights[j] * potentials[j];
  }
  for (auto& V : potentials) V -= mean;

  HamiltonianEnsemble e;
  e.dim_ = d;
  e.hbar_ = hbar;
  e.kind_ = EnsembleKind::custom;
  e.hbar_avg_ = hermitize(hbar_avg);
  e.pots_ = std::move(potentials);
  e.weights_ = std::move(weights);
  return e;
}

HamiltonianEnsemble HamiltonianEnsemble::sampler(ComplexMatrix hbar_avg,
                                                 std::function<ComplexMatrix(RngStream&)> draw,
                                                 int mc_samples, std::uint64_t mc_seed,
                                                 double hbar) {
  if (mc_samples < 1) throw std::domain_error("sampler ensemble: mc_samples < 1");
  HamiltonianEnsemble e;
  e.dim_ = static_cast<int>(hbar_avg.rows());
  e.hbar_ = hbar;
  e.kind_ = EnsembleKind::custom;
  e.hbar_avg_ = hermitize(hbar_avg);
  e.draw_ = std::move(draw);
  e.mc_samples_ = mc_samples;
  e.mc_seed_ = mc_seed;
  return e;
}

ComplexMatrix HamiltonianEnsemble::sample_realization(RngStream& rng) const {
  switch (kind_) {
    case EnsembleKind::central_spin: {
      double delta = std::sqrt(cs_.delta_sq_mean);
      if (cs_.delta_dist == DeltaDist::gaussian)
        delta = rng.gaussian(0.0, std::sqrt(cs_.delta_sq_mean));
      const ComplexMatrix W = haar_unitary(2, rng);
      return 0.5 * delta * W * pauli::z() * W.adjoint();
    }
    case EnsembleKind::scalar_dephasing:
      return hbar_ * rng.gaussian(0.0, deph_s_) * pauli::z();
    case EnsembleKind::custom:
      if (draw_) return draw_(rng);
      {
        // weighted pick from the finite list
        double u = rng.uniform();
        double acc = 0.0;
        for (std::size_t j = 0; j < pots_.size(); ++j) {
          acc += weights_[j];
          if (u <= acc) return pots_[j];
        }
        return pots_.back();
      }
  }
  throw std::logic_error("unreachable");
}

ComplexMatrix HamiltonianEnsemble::average_propagator(double t) const {
  return mat_exp(hbar_avg_, -I * t / hbar_);
}

ComplexMatrix HamiltonianEnsemble::interaction_potential(const ComplexMatrix& V,
                                                         double t) const {
  const ComplexMatrix U = average_propagator(t);
  return U * V * U.adjoint();
}

std::shared_ptr<const ExpectationKernel> HamiltonianEnsemble::expectation_kernel() const {
  if (kernel_) return kernel_;
  switch (kind_) {
    case EnsembleKind::central_spin:
      kernel_ = std::make_shared<CentralSpinKernel>(cs_.omega, cs_.delta_sq_mean, hbar_);
      break;
    case EnsembleKind::scalar_dephasing:
      kernel_ = std::make_shared<DephasingKernel>(deph_s_, hbar_);
      break;
    case EnsembleKind::custom:
      if (!pots_.empty()) {
        kernel_ = std::make_shared<DiscreteKernel>(hbar_avg_, hbar_, pots_, weights_, 0.0);
      } else {
        // MC fallback: draw M realizations once, then treat as discrete with
        // equal weights. Statistical error ~ 1/sqrt(M) on each expectation.
        RngStream rng(mc_seed_, 0x4d43ull);
        std::vector<ComplexMatrix> pots(mc_samples_);
        std::vector<double> w(mc_samples_, 1.0 / mc_samples_);
        for (int m = 0; m < mc_samples_; ++m) pots[m] = hermitize(draw_(rng));
        ComplexMatrix mean = ComplexMatrix::Zero(dim_, dim_);
        for (const auto& V : pots) mean += V / static_cast<double>(mc_samples_);
        for (auto& V : pots) V -= mean;
        kernel_ = std::make_shared<DiscreteKernel>(hbar_avg_, hbar_, std::move(pots),
                                                   std::move(w),
                                                   1.0 / std::sqrt(double(mc_samples_)));
      }
      break;
  }
  return kernel_;
}

double HamiltonianEnsemble::trace_ev2() const {
  return std::real(expectation_kernel()->ev2().trace());
}

}  // namespace ddqe
