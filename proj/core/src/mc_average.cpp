#include "ddqe/mc_average.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "ddqe/density.hpp"
#include "ddqe/threads.hpp"

namespace ddqe {

namespace {

struct McPartial {
  std::vector<ComplexMatrix> sum_rho;
  std::vector<std::array<double, 3>> sum_a;
  std::vector<std::array<double, 3>> sum_a2;
};

// U(t) rho0 U(t)^dag for H = Hbar + V via one spectral decomposition.
struct Propagated {
  Eigen::VectorXd evals;
  ComplexMatrix evecs;
  double hbar;

  ComplexMatrix at(const ComplexMatrix& rho0, double t) const {
    ComplexVector ph(evals.size());
    for (int i = 0; i < evals.size(); ++i) ph(i) = std::exp(-I * evals(i) * t / hbar);
    const ComplexMatrix U = evecs * ph.asDiagonal() * evecs.adjoint();
    return U * rho0 * U.adjoint();
  }
};

}  // namespace

TrajectoryRecord mc_average_evolution(const HamiltonianEnsemble& ens,
                                      const ComplexMatrix& rho0,
                                      const std::vector<double>& times, int K,
                                      RngStream& rng, int nworkers) {
  if (K < 1) throw std::domain_error("mc_average_evolution: K < 1");
  const int d = ens.dim();
  const std::size_t nt = times.size();
  const std::uint64_t base = rng.next_u64();
  const bool track_bloch = (d == 2);

  McPartial init;
  init.sum_rho.assign(nt, ComplexMatrix::Zero(d, d));
  if (track_bloch) {
    init.sum_a.assign(nt, {0, 0, 0});
    init.sum_a2.assign(nt, {0, 0, 0});
  }

  auto body = [&](std::size_t k, McPartial& acc) {
    RngStream stream(base, k);
    const ComplexMatrix V = ens.sample_realization(stream);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(ens.hbar_avg() + V));
    Propagated prop{es.eigenvalues(), es.eigenvectors(), ens.hbar()};
    for (std::size_t i = 0; i < nt; ++i) {
      const ComplexMatrix rho = prop.at(rho0, times[i]);
      acc.sum_rho[i] += rho;
      if (track_bloch) {
        const BlochVector a = bloch_map(rho);
        const double av[3] = {a.x, a.y, a.z};
        for (int c = 0; c < 3; ++c) {
          acc.sum_a[i][c] += av[c];
          acc.sum_a2[i][c] += av[c] * av[c];
        }
      }
    }
  };
  auto combine = [&](McPartial& acc, const McPartial& p) {
    for (std::size_t i = 0; i < nt; ++i) {
      acc.sum_rho[i] += p.sum_rho[i];
      if (track_bloch)
        for (int c = 0; c < 3; ++c) {
          acc.sum_a[i][c] += p.sum_a[i][c];
          acc.sum_a2[i][c] += p.sum_a2[i][c];
        }
    }
  };

  McPartial total =
      parallel_map_reduce(static_cast<std::size_t>(K), nworkers, init, body, combine);

  TrajectoryRecord rec;
  rec.source = TrajectorySource::mc;
  rec.times = times;
  rec.states.resize(nt);
  for (std::size_t i = 0; i < nt; ++i) rec.states[i] = total.sum_rho[i] / double(K);
  if (track_bloch) {
    rec.stderr_bloch.resize(nt);
    for (std::size_t i = 0; i < nt; ++i)
      for (int c = 0; c < 3; ++c) {
        const double mean = total.sum_a[i][c] / K;
        const double var =
            K > 1 ? std::max(0.0, (total.sum_a2[i][c] / K - mean * mean) * K / (K - 1.0))
                  : 0.0;
        rec.stderr_bloch[i][c] = std::sqrt(var / K);
      }
  }
  return rec;
}

TrajectoryRecord exact_average_evolution(const HamiltonianEnsemble& ens,
                                         const ComplexMatrix& rho0,
                                         const std::vector<double>& times, int n_polar,
                                         int n_azimuth, int n_delta) {
  if (ens.kind() != EnsembleKind::central_spin)
    throw std::invalid_argument("exact_average_evolution: central_spin ensembles only");
  const auto& cs = ens.central_spin_spec();
  const double hbar = ens.hbar();
  const double om = cs.omega;

  // Gauss-Legendre nodes on [-1, 1] via Newton on P_n.
  std::vector<double> gl_x(n_polar), gl_w(n_polar);
  for (int i = 0; i < n_polar; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n_polar + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n_polar; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n_polar * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n_polar; ++k) {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n_polar * (x * p1 - p0) / (x * x - 1.0);
    gl_x[i] = x;
    gl_w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }

  // Delta quadrature: single node for the fixed distribution; Gauss-Hermite
  // (physicists', rescaled) for the Gaussian one.
  std::vector<double> dl_x, dl_w;
  if (cs.delta_dist == DeltaDist::fixed || cs.delta_sq_mean == 0.0 || n_delta <= 1) {
    dl_x = {std::sqrt(cs.delta_sq_mean)};
    dl_w = {1.0};
  } else {
    // Gauss-Hermite: positive-half roots by Newton on the orthonormal
    // recurrence, mirrored to the negative axis.
    const int n = n_delta;
    const int m = (n + 1) / 2;
    std::vector<double> hx, hw;
    auto eval = [&](double x, double& h, double& dh) {
      double h0 = std::pow(M_PI, -0.25);
      double h1 = std::sqrt(2.0) * x * h0;
      for (int k = 2; k <= n; ++k) {
        const double h2 = x * std::sqrt(2.0 / k) * h1 - std::sqrt((k - 1.0) / k) * h0;
        h0 = h1;
        h1 = h2;
      }
      h = h1;
      dh = std::sqrt(2.0 * n) * h0;
    };
    double prev = 0.0, prev2 = 0.0;
    for (int i = 0; i < m; ++i) {
      double x;
      if (i == 0)
        x = std::sqrt(2.0 * n + 1) - 1.85575 * std::pow(2.0 * n + 1, -1.0 / 6.0);
      else if (i == 1)
        x = prev - 1.14 * std::pow(double(n), 0.426) / prev;
      else if (i == 2)
        x = 1.86 * prev - 0.86 * prev2;
      else if (i == 3)
        x = 1.91 * prev - 0.91 * prev2;
      else
        x = 2.0 * prev - prev2;
      double h, dh;
      for (int it = 0; it < 200; ++it) {
        eval(x, h, dh);
        const double dx = h / dh;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      eval(x, h, dh);
      prev2 = prev;
      prev = x;
      hx.push_back(x);
      hw.push_back(2.0 / (dh * dh));
    }
    const double sd = std::sqrt(cs.delta_sq_mean);
    // int dDelta N(0, sd^2) f(Delta) = (1/sqrt(pi)) sum_i w_i f(sqrt(2) sd x_i)
    for (std::size_t i = 0; i < hx.size(); ++i) {
      dl_x.push_back(std::sqrt(2.0) * sd * hx[i]);
      dl_w.push_back(hw[i] / std::sqrt(M_PI));
      if (hx[i] > 1e-12) {
        dl_x.push_back(-std::sqrt(2.0) * sd * hx[i]);
        dl_w.push_back(hw[i] / std::sqrt(M_PI));
      }
    }
    double wsum = 0.0;
    for (double w : dl_w) wsum += w;
    for (double& w : dl_w) w /= wsum;
  }

  const std::size_t nt = times.size();
  std::vector<ComplexMatrix> acc(nt, ComplexMatrix::Zero(2, 2));
  for (int iu = 0; iu < n_polar; ++iu) {
    const double u = gl_x[iu];
    const double st = std::sqrt(std::max(0.0, 1.0 - u * u));
    for (int ip = 0; ip < n_azimuth; ++ip) {
      const double phi = 2.0 * M_PI * (ip + 0.5) / n_azimuth;
      const double nx = st * std::cos(phi), ny = st * std::sin(phi);
      for (std::size_t id = 0; id < dl_x.size(); ++id) {
        const double delta = dl_x[id];
        const double w = 0.5 * gl_w[iu] / n_azimuth * dl_w[id];
        // H = hbar om sz + (delta/2) n.sigma ; closed 2x2 evolution
        const double bz = hbar * om + 0.5 * delta * u;
        const double bx = 0.5 * delta * nx, by = 0.5 * delta * ny;
        const double r = std::sqrt(bx * bx + by * by + bz * bz);
        for (std::size_t i = 0; i < nt; ++i) {
          const double th = r * times[i] / hbar;
          const double c = std::cos(th);
          const double s = (r > 0) ? std::sin(th) / r : times[i] / hbar;
          Matrix2c U;
          U(0, 0) = c - I * s * bz;
          U(0, 1) = -I * s * (bx - I * by);
          U(1, 0) = -I * s * (bx + I * by);
          U(1, 1) = c + I * s * bz;
          acc[i] += w * (U * rho0 * U.adjoint());
        }
      }
    }
  }

  TrajectoryRecord rec;
  rec.source = TrajectorySource::exact;
  rec.times = times;
  rec.states.assign(acc.begin(), acc.end());
  return rec;
}

cplx dephasing_exact_offdiagonal(double omega, double s, double t) {
  return std::exp(-2.0 * I * omega * t) * std::exp(-2.0 * s * s * t * t);
}

}  // namespace ddqe
