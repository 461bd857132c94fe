#include "ddqe/dirac/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "ddqe/threads.hpp"

namespace ddqe::dirac {

namespace {

// g(c) = int_0^t (t - t') e^{i c t'} dt' = (1 + i c t - e^{i c t}) / c^2
// Re g = (t^2/2) sinc^2(c t / 2), Im g = (c t - sin(c t)) / c^2.
inline cplx g_accum(double c, double t) {
  const double ct = c * t;
  if (std::abs(ct) < 1e-5) {
    // series: t^2/2 + i c t^3/6 - c^2 t^4 / 24
    return cplx(0.5 * t * t * (1.0 - ct * ct / 12.0), c * t * t * t / 6.0);
  }
  const double re = (1.0 - std::cos(ct)) / (c * c);
  const double im = (ct - std::sin(ct)) / (c * c);
  return cplx(re, im);
}

}  // namespace

DisorderKernels::DisorderKernels(CorrelatorSpec spec, double p0, double t_max,
                                 KernelMode mode, int quad_points)
    : spec_(std::move(spec)), p0_(p0), t_max_(t_max), mode_(mode) {
  if (p0_ <= 0.0) throw std::domain_error("DisorderKernels: p0 must be positive");
  if (mode_ == KernelMode::exact) {
    const double qmax = spec_.q_support();
    if (quad_points <= 0) {
      // resolve both the e^{i q' s / hbar} oscillation (s up to ~16 ell-scale
      // packets) and the sinc^2 structure (q' scale hbar / v t)
      const double scale = std::max(1.0, spec_.v * t_max_ / spec_.h_bar);
      quad_points = static_cast<int>(std::min(20001.0, 64.0 * qmax / (2.0 * M_PI) * scale +
                                                           2049.0));
    }
    nq_ = quad_points | 1;  // odd
    qp_.resize(nq_);
    wq_.resize(nq_);
    const double dq = 2.0 * qmax / (nq_ - 1);
    for (int j = 0; j < nq_; ++j) {
      qp_[j] = -qmax + j * dq;
      wq_[j] = ((j == 0 || j == nq_ - 1) ? 0.5 : 1.0) * dq * g_of_q(spec_, qp_[j]);
    }
  }
}

cplx DisorderKernels::fg(double s, double q, double t) const {
  const double hb = spec_.h_bar, v = spec_.v;
  if (mode_ == KernelMode::large_time) {
    const double qa = 2.0 * p0_ + q, qb = 2.0 * p0_ - q;
    const cplx pref = M_PI * t / (hb * v);
    return pref * (g_of_q(spec_, qa) * std::exp(-I * qa * s / hb) +
                   g_of_q(spec_, qb) * std::exp(-I * qb * s / hb));
  }
  const double b = v * q / hb;
  cplx acc{0.0, 0.0};
  for (int j = 0; j < nq_; ++j) {
    const double a = v * (qp_[j] + 2.0 * p0_) / hb;
    const double re_k =
        0.5 * (std::real(g_accum(a - b, t)) + std::real(g_accum(a + b, t)));
    acc += wq_[j] * re_k * std::exp(I * qp_[j] * s / hb);
  }
  return acc * (2.0 / (hb * hb));
}

cplx DisorderKernels::fu(double s, double q, double t) const {
  if (mode_ == KernelMode::large_time) return {0.0, 0.0};
  const double hb = spec_.h_bar, v = spec_.v;
  const double b = v * q / hb;
  cplx acc{0.0, 0.0};
  for (int j = 0; j < nq_; ++j) {
    const double a = v * (qp_[j] + 2.0 * p0_) / hb;
    // Im K = (Im g(a-b) - Im g(a+b))/2, with Im g odd in its argument
    const double im_k =
        0.5 * (std::imag(g_accum(a - b, t)) - std::imag(g_accum(a + b, t)));
    acc += wq_[j] * im_k * std::exp(I * qp_[j] * s / hb);
  }
  return acc * (2.0 / (hb * hb));
}

double DisorderKernels::fg00(double t) const { return std::real(fg(0.0, 0.0, t)); }

void DisorderKernels::eval_grid(const std::vector<double>& s_grid,
                                const std::vector<double>& q_grid, double t,
                                Eigen::MatrixXcd& fg_out, Eigen::MatrixXcd& fu_out,
                                int nworkers) const {
  const int ns = static_cast<int>(s_grid.size());
  const int nqg = static_cast<int>(q_grid.size());
  fg_out.resize(ns, nqg);
  fu_out.resize(ns, nqg);
  const double hb = spec_.h_bar, v = spec_.v;

  if (mode_ == KernelMode::large_time) {
    for (int iq = 0; iq < nqg; ++iq)
      for (int is = 0; is < ns; ++is) {
        fg_out(is, iq) = fg(s_grid[is], q_grid[iq], t);
        fu_out(is, iq) = 0.0;
      }
    return;
  }

  // Fg(s, q) = sum_j w_j ReK(q'_j, q) e^{i q'_j s}: a matrix product
  // E(s, j) * K(j, q). Processed in q' blocks (real GEMMs on the real and
  // imaginary parts of E) to bound the working set.
  Eigen::MatrixXd fg_re = Eigen::MatrixXd::Zero(ns, nqg);
  Eigen::MatrixXd fg_im = Eigen::MatrixXd::Zero(ns, nqg);
  Eigen::MatrixXd fu_re = Eigen::MatrixXd::Zero(ns, nqg);
  Eigen::MatrixXd fu_im = Eigen::MatrixXd::Zero(ns, nqg);

  const int block = 2048;
  Eigen::MatrixXd osc_re(ns, block), osc_im(ns, block);
  Eigen::MatrixXd re_k(block, nqg), im_k(block, nqg);
  for (int j0 = 0; j0 < nq_; j0 += block) {
    const int nb = std::min(block, nq_ - j0);
    parallel_for(nb, nworkers, [&](std::size_t jj) {
      const int j = j0 + static_cast<int>(jj);
      const double ph = qp_[j] / hb;
      for (int is = 0; is < ns; ++is) {
        osc_re(is, jj) = wq_[j] * std::cos(ph * s_grid[is]);
        osc_im(is, jj) = wq_[j] * std::sin(ph * s_grid[is]);
      }
      const double a = v * (qp_[j] + 2.0 * p0_) / hb;
      for (int iq = 0; iq < nqg; ++iq) {
        const double b = v * q_grid[iq] / hb;
        const cplx gm = g_accum(a - b, t);
        const cplx gp = g_accum(a + b, t);
        re_k(jj, iq) = 0.5 * (std::real(gm) + std::real(gp));
        im_k(jj, iq) = 0.5 * (std::imag(gm) - std::imag(gp));
      }
    });
    fg_re.noalias() += osc_re.leftCols(nb) * re_k.topRows(nb);
    fg_im.noalias() += osc_im.leftCols(nb) * re_k.topRows(nb);
    fu_re.noalias() += osc_re.leftCols(nb) * im_k.topRows(nb);
    fu_im.noalias() += osc_im.leftCols(nb) * im_k.topRows(nb);
  }
  const double pref = 2.0 / (hb * hb);
  for (int iq = 0; iq < nqg; ++iq)
    for (int is = 0; is < ns; ++is) {
      fg_out(is, iq) = pref * cplx(fg_re(is, iq), fg_im(is, iq));
      fu_out(is, iq) = pref * cplx(fu_re(is, iq), fu_im(is, iq));
    }
}

}  // namespace ddqe::dirac
