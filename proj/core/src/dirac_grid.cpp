#include "ddqe/dirac/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "ddqe/threads.hpp"
#include "fftw_util.hpp"

namespace ddqe::dirac {

double GridState::norm() const {
  return (up.squaredNorm() + down.squaredNorm()) * dx;
}

double GridState::mean_x() const {
  double acc = 0.0;
  for (int j = 0; j < n; ++j)
    acc += x_at(j) * (std::norm(up(j)) + std::norm(down(j)));
  return acc * dx / norm();
}

GridState gaussian_grid_state(int n, double length, double sigma, double p0,
                              double h_bar, double xc) {
  if (n < 4 || (n & (n - 1)) != 0)
    throw std::invalid_argument("gaussian_grid_state: n must be a power of two");
  GridState s;
  s.n = n;
  s.dx = length / n;
  s.x0 = -0.5 * length;
  s.up.resize(n);
  s.down = ComplexVector::Zero(n);
  s.mass_field.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const double x = s.x_at(j) - xc;
    s.up(j) = std::exp(cplx(-x * x / (4.0 * sigma * sigma), p0 * s.x_at(j) / h_bar));
  }
  const double nrm = std::sqrt(s.norm());
  s.up /= nrm;
  return s;
}

struct GridEvolver::Impl {
  explicit Impl(int n) : fft_up(n), fft_down(n) {}
  detail::Fft1d fft_up;
  detail::Fft1d fft_down;
  std::vector<cplx> kin_half_up;    // e^{-i v p dt / 2 hbar} per mode
  std::vector<double> mass_cos, mass_sin;
  std::vector<double> p_modes;
};

GridEvolver::GridEvolver(const GridState& init, double h_bar, double v, double dt)
    : impl_(std::make_unique<Impl>(init.n)), state_(init), h_bar_(h_bar), v_(v), dt_(dt) {
  const int n = init.n;
  const double L = init.length();
  impl_->p_modes.resize(n);
  impl_->kin_half_up.resize(n);
  for (int k = 0; k < n; ++k) {
    const int kk = (k <= n / 2) ? k : k - n;
    const double p = 2.0 * M_PI * h_bar_ * kk / L;
    impl_->p_modes[k] = p;
    impl_->kin_half_up[k] = std::exp(-I * v_ * p * dt_ / (2.0 * h_bar_));
  }
  set_state(init);
}

GridEvolver::~GridEvolver() = default;

void GridEvolver::set_state(const GridState& s) {
  if (s.n != impl_->fft_up.size())
    throw std::invalid_argument("GridEvolver: grid size mismatch");
  state_ = s;
  t_ = 0.0;
  const int n = s.n;
  impl_->mass_cos.resize(n);
  impl_->mass_sin.resize(n);
  for (int j = 0; j < n; ++j) {
    const double th = s.mass_field[j] * dt_ / h_bar_;
    impl_->mass_cos[j] = std::cos(th);
    impl_->mass_sin[j] = std::sin(th);
  }
}

void GridEvolver::steps(int nsteps) {
  const int n = state_.n;
  cplx* u = impl_->fft_up.data();
  cplx* d = impl_->fft_down.data();
  const double inv_n = 1.0 / n;
  for (int step = 0; step < nsteps; ++step) {
    for (int j = 0; j < n; ++j) u[j] = state_.up(j);
    for (int j = 0; j < n; ++j) d[j] = state_.down(j);
    impl_->fft_up.forward();
    impl_->fft_down.forward();
    for (int k = 0; k < n; ++k) {
      u[k] *= impl_->kin_half_up[k];
      d[k] *= std::conj(impl_->kin_half_up[k]);
    }
    impl_->fft_up.backward();
    impl_->fft_down.backward();
    for (int j = 0; j < n; ++j) {
      const cplx uj = u[j] * inv_n;
      const cplx dj = d[j] * inv_n;
      const double c = impl_->mass_cos[j];
      const double s = impl_->mass_sin[j];
      u[j] = c * uj - I * s * dj;
      d[j] = c * dj - I * s * uj;
    }
    impl_->fft_up.forward();
    impl_->fft_down.forward();
    for (int k = 0; k < n; ++k) {
      u[k] *= impl_->kin_half_up[k];
      d[k] *= std::conj(impl_->kin_half_up[k]);
    }
    impl_->fft_up.backward();
    impl_->fft_down.backward();
    for (int j = 0; j < n; ++j) state_.up(j) = u[j] * inv_n;
    for (int j = 0; j < n; ++j) state_.down(j) = d[j] * inv_n;
    t_ += dt_;
  }
}

GridObservables GridEvolver::observe() const {
  GridObservables o;
  o.t = t_;
  o.norm = state_.norm();
  o.mean_x = state_.mean_x();
  // backscattered weight: momentum modes p < 0 of both bands
  const int n = state_.n;
  cplx* u = impl_->fft_up.data();
  cplx* d = impl_->fft_down.data();
  for (int j = 0; j < n; ++j) u[j] = state_.up(j);
  for (int j = 0; j < n; ++j) d[j] = state_.down(j);
  impl_->fft_up.forward();
  impl_->fft_down.forward();
  double neg = 0.0, tot = 0.0;
  for (int k = 0; k < n; ++k) {
    const double w = std::norm(u[k]) + std::norm(d[k]);
    tot += w;
    if (impl_->p_modes[k] < 0.0) neg += w;
  }
  o.backscatter = (tot > 0.0) ? neg / tot : 0.0;
  return o;
}

void GridEvolver::momentum_weights(std::vector<double>& p, std::vector<double>& w_up,
                                   std::vector<double>& w_down) const {
  const int n = state_.n;
  cplx* u = impl_->fft_up.data();
  cplx* d = impl_->fft_down.data();
  for (int j = 0; j < n; ++j) u[j] = state_.up(j);
  for (int j = 0; j < n; ++j) d[j] = state_.down(j);
  impl_->fft_up.forward();
  impl_->fft_down.forward();
  p.resize(n);
  w_up.resize(n);
  w_down.resize(n);
  // reorder to ascending p
  std::vector<int> order(n);
  for (int k = 0; k < n; ++k) order[k] = (k + n / 2 + 1) % n;
  const double cell = state_.dx / n / (2.0 * M_PI * h_bar_ / state_.length());
  for (int i = 0; i < n; ++i) {
    const int k = order[i];
    p[i] = impl_->p_modes[k];
    w_up[i] = std::norm(u[k]) * cell;
    w_down[i] = std::norm(d[k]) * cell;
  }
}

void check_grid_preconditions(const GridState& s, double p_occ, double h_bar, double v,
                              double dt) {
  const double lambda = 2.0 * M_PI * h_bar / std::abs(p_occ);
  if (s.dx > lambda / 8.0)
    throw std::invalid_argument("grid: dx does not resolve the de Broglie wavelength");
  double mmax = 0.0;
  for (double m : s.mass_field) mmax = std::max(mmax, std::abs(m));
  const double rate = std::max(v * std::abs(p_occ), mmax);
  if (dt * rate / h_bar > 0.1 + 1e-12)
    throw std::invalid_argument("grid: dt violates the split-step rate bound");
}

std::vector<GridObservables> grid_evolve(GridState state, double h_bar, double v,
                                         double dt, int nsteps, int record_every) {
  GridEvolver ev(state, h_bar, v, dt);
  std::vector<GridObservables> out;
  out.push_back(ev.observe());
  int done = 0;
  while (done < nsteps) {
    const int chunk = std::min(record_every, nsteps - done);
    ev.steps(chunk);
    done += chunk;
    out.push_back(ev.observe());
  }
  return out;
}

DiracEnsembleResult dirac_grid_ensemble(const CorrelatorSpec& spec, double p0,
                                        double sigma, int n, double length, double dt,
                                        double t_max, int K, std::uint64_t seed,
                                        int record_points, bool with_purity,
                                        int nworkers) {
  if (K < 1) throw std::invalid_argument("dirac_grid_ensemble: K < 1");
  const int nsteps = std::max(1, static_cast<int>(std::llround(t_max / dt)));
  const int record_every = std::max(1, nsteps / std::max(1, record_points));
  const GridState base =
      gaussian_grid_state(n, length, sigma, p0, spec.h_bar, 0.0);
  {
    const double p_occ = std::abs(p0) + 6.0 * spec.h_bar / sigma;
    GridState probe = base;
    // bound the field by its 5-sigma amplitude for the rate check
    probe.mass_field.assign(n, 5.0 * std::sqrt(std::max(spec.c0, 0.0)));
    check_grid_preconditions(probe, p_occ, spec.h_bar, spec.v, dt);
  }

  const std::size_t nt = nsteps / record_every + 1 + (nsteps % record_every ? 1 : 0);

  struct Partial {
    std::vector<double> sx, sx2, sb, sb2;
    std::vector<ComplexVector> snapshots_up, snapshots_down;  // final-time states
    std::size_t count = 0;
  };
  Partial init;
  init.sx.assign(nt, 0.0);
  init.sx2.assign(nt, 0.0);
  init.sb.assign(nt, 0.0);
  init.sb2.assign(nt, 0.0);

  std::vector<double> times;

  auto body = [&](std::size_t k, Partial& acc) {
    RngStream rng(seed, k);
    GridState st = base;
    st.mass_field = sample_mass_field(spec, n, st.dx, rng);
    GridEvolver ev(st, spec.h_bar, spec.v, dt);
    std::size_t idx = 0;
    auto record = [&]() {
      const GridObservables o = ev.observe();
      acc.sx[idx] += o.mean_x;
      acc.sx2[idx] += o.mean_x * o.mean_x;
      acc.sb[idx] += o.backscatter;
      acc.sb2[idx] += o.backscatter * o.backscatter;
      if (k == 0 && times.size() < nt) times.push_back(o.t);
      ++idx;
    };
    record();
    int done = 0;
    while (done < nsteps) {
      const int chunk = std::min(record_every, nsteps - done);
      ev.steps(chunk);
      done += chunk;
      record();
    }
    if (with_purity) {
      acc.snapshots_up.push_back(ev.state().up);
      acc.snapshots_down.push_back(ev.state().down);
    }
    ++acc.count;
  };
  auto combine = [&](Partial& a, const Partial& b) {
    for (std::size_t i = 0; i < nt; ++i) {
      a.sx[i] += b.sx[i];
      a.sx2[i] += b.sx2[i];
      a.sb[i] += b.sb[i];
      a.sb2[i] += b.sb2[i];
    }
    a.snapshots_up.insert(a.snapshots_up.end(), b.snapshots_up.begin(),
                          b.snapshots_up.end());
    a.snapshots_down.insert(a.snapshots_down.end(), b.snapshots_down.begin(),
                            b.snapshots_down.end());
    a.count += b.count;
  };

  // realization 0 runs first (serially) so `times` is filled without races
  Partial first = init;
  body(0, first);
  Partial rest = parallel_map_reduce(
      static_cast<std::size_t>(K - 1), nworkers, init,
      [&](std::size_t k, Partial& acc) { body(k + 1, acc); }, combine);
  combine(first, rest);
  const Partial& total = first;

  DiracEnsembleResult res;
  res.times = times;
  res.mean_x.resize(nt);
  res.mean_x_stderr.resize(nt);
  res.backscatter.resize(nt);
  res.backscatter_stderr.resize(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    const double mx = total.sx[i] / K;
    const double mb = total.sb[i] / K;
    res.mean_x[i] = mx;
    res.backscatter[i] = mb;
    const double vx =
        K > 1 ? std::max(0.0, (total.sx2[i] / K - mx * mx) * K / (K - 1.0)) : 0.0;
    const double vb =
        K > 1 ? std::max(0.0, (total.sb2[i] / K - mb * mb) * K / (K - 1.0)) : 0.0;
    res.mean_x_stderr[i] = std::sqrt(vx / K);
    res.backscatter_stderr[i] = std::sqrt(vb / K);
  }

  if (with_purity && K > 1) {
    // unbiased Tr[rho_bar^2] at final time from off-diagonal pair overlaps
    const double dx = base.dx;
    double acc = 0.0;
    for (int a = 0; a < K; ++a)
      for (int b = a + 1; b < K; ++b) {
        const cplx ov = (total.snapshots_up[a].dot(total.snapshots_up[b]) +
                         total.snapshots_down[a].dot(total.snapshots_down[b])) *
                        dx;
        acc += 2.0 * std::norm(ov);
      }
    res.purity.assign(1, acc / (double(K) * (K - 1.0)));
  }
  return res;
}

}  // namespace ddqe::dirac
