#pragma once

#include <Eigen/Dense>

#include "ddqe/dirac/correlator.hpp"

namespace ddqe::dirac {

enum class KernelMode { exact, large_time };

/// Accumulated disorder-impact kernels of the characteristic-function
/// solution, split into the q-even component Fg and the q-odd component Fu
/// (Fbar = Fg + i Fu). The exact mode performs the double quadrature with
/// sinc^2-type kernels; the large-time mode (vt >> ell, sigma) uses the
/// two-term G(2 p0 +- q) expression, whose odd component is dropped.
class DisorderKernels {
 public:
  DisorderKernels(CorrelatorSpec spec, double p0, double t_max,
                  KernelMode mode = KernelMode::exact, int quad_points = 0);

  const CorrelatorSpec& spec() const { return spec_; }
  double p0() const { return p0_; }
  KernelMode mode() const { return mode_; }

  cplx fg(double s, double q, double t) const;
  cplx fu(double s, double q, double t) const;

  /// Batched evaluation on an (s, q) product grid; outputs are Ns x Nq.
  void eval_grid(const std::vector<double>& s_grid, const std::vector<double>& q_grid,
                 double t, Eigen::MatrixXcd& fg_out, Eigen::MatrixXcd& fu_out,
                 int nworkers = 1) const;

  /// Fg(0, 0, t): the scalar controlling backscattered weight and <x>.
  double fg00(double t) const;

 private:
  CorrelatorSpec spec_;
  double p0_;
  double t_max_;
  KernelMode mode_;
  int nq_;  // quadrature nodes for the exact mode

  // trapezoid nodes/weights over the q' support
  std::vector<double> qp_, wq_;
};

}  // namespace ddqe::dirac
