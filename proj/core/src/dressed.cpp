#include "ddqe/dressed.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "ddqe/mat_exp.hpp"

namespace ddqe {

namespace {

void check_grid(const std::vector<double>& g) {
  if (g.size() < 3) throw std::invalid_argument("kernel grid: need >= 3 nodes");
  if (std::abs(g.front()) > 1e-15) throw std::invalid_argument("kernel grid: must start at 0");
  const double h = g[1] - g[0];
  if (h <= 0) throw std::invalid_argument("kernel grid: not increasing");
  for (std::size_t j = 1; j < g.size(); ++j)
    if (std::abs((g[j] - g[j - 1]) - h) > 1e-9 * h)
      throw std::invalid_argument("kernel grid: not uniform");
}

// Cumulative integral of f over a uniform grid, O(h^4): composite Simpson on
// even node pairs, quadratic-through-three-nodes closure for odd nodes.
template <typename T>
std::vector<T> cumulative_simpson(const std::vector<T>& f, double h) {
  const std::size_t n = f.size();
  std::vector<T> I(n, f[0]);
  I[0] = f[0] * 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    if (j % 2 == 0) {
      I[j] = I[j - 2] + (h / 3.0) * (f[j - 2] + 4.0 * f[j - 1] + f[j]);
    } else if (j + 1 < n) {
      I[j] = I[j - 1] + (h / 12.0) * (5.0 * f[j - 1] + 8.0 * f[j] - f[j + 1]);
    } else {
      I[j] = I[j - 1] + (h / 12.0) * (-f[j - 2] + 8.0 * f[j - 1] + 5.0 * f[j]);
    }
  }
  return I;
}

double guard_rate(const HamiltonianEnsemble& ens) {
  const double h = ens.hbar();
  return 2.0 * ens.trace_ev2() / (h * h * ens.dim());
}

}  // namespace

std::vector<double> uniform_grid(double t_max, int n) {
  std::vector<double> g(n + 1);
  for (int j = 0; j <= n; ++j) g[j] = t_max * j / n;
  return g;
}

std::pair<std::size_t, double> DressedGenerator::locate(double t) const {
  const double h = grid_[1] - grid_[0];
  if (t < -1e-12 || t > grid_.back() + 1e-9 * h)
    throw std::out_of_range("DressedGenerator: t outside kernel grid");
  double u = t / h;
  std::size_t j = static_cast<std::size_t>(u);
  if (j >= grid_.size() - 1) j = grid_.size() - 2;
  return {j, u - j};
}

ComplexMatrix DressedGenerator::h_eff(double t) const {
  if (rep_ == Representation::short_time) {
    return hbar_avg_ + (t * t / (4.0 * hbar_ * hbar_)) * evvh_;
  }
  const auto [j, w] = locate(t);
  return (1.0 - w) * h_nodes_[j] + w * h_nodes_[j + 1];
}

ComplexMatrix DressedGenerator::dissipator(double t, const ComplexMatrix& rho) const {
  if (rep_ == Representation::short_time) {
    // (2t/hbar^2) [ U4 E[V U4^dag rho U4 V] U4^dag - 1/2 {U4 E[V^2] U4^dag, rho} ]
    const ComplexMatrix U4 = mat_exp(hbar_avg_, -I * t / (4.0 * hbar_));
    const ComplexMatrix inner = unvec(evxv_ * vec(ComplexMatrix(U4.adjoint() * rho * U4)), dim_);
    const ComplexMatrix m = U4 * ev2_ * U4.adjoint();
    return (2.0 * t / (hbar_ * hbar_)) *
           (U4 * inner * U4.adjoint() - 0.5 * (m * rho + rho * m));
  }
  const auto [j, w] = locate(t);
  const ComplexVector r = vec(rho);
  return unvec(ComplexVector((1.0 - w) * (d_nodes_[j] * r) + w * (d_nodes_[j + 1] * r)),
               dim_);
}

ComplexMatrix DressedGenerator::apply(double t, const ComplexMatrix& rho) const {
  const ComplexMatrix h = h_eff(t);
  return -(I / hbar_) * (h * rho - rho * h) + dissipator(t, rho);
}

DressedGenerator build_redfield(const HamiltonianEnsemble& ens,
                                const std::vector<double>& t_grid) {
  check_grid(t_grid);
  auto kernel = ens.expectation_kernel();
  const int d = ens.dim();
  const double hb = ens.hbar();
  const std::size_t n = t_grid.size();

  // integrand superoperator Z(t') : rho -> E[V, [Vt(t'), rho]]
  std::vector<SuperOp> z(n);
  for (std::size_t j = 0; j < n; ++j) {
    const ComplexMatrix a = kernel->evv(t_grid[j]);
    z[j] = left_superop(a) + right_superop(ComplexMatrix(a.adjoint())) -
           kernel->sandwich_v_vt(t_grid[j]) - kernel->sandwich_vt_v(t_grid[j]);
  }
  std::vector<SuperOp> cum = cumulative_simpson(z, t_grid[1] - t_grid[0]);

  DressedGenerator g;
  g.rep_ = Representation::redfield;
  g.dim_ = d;
  g.hbar_ = hb;
  g.hbar_avg_ = ens.hbar_avg();
  g.grid_ = t_grid;
  g.h_nodes_.assign(n, ens.hbar_avg());
  g.d_nodes_.resize(n);
  for (std::size_t j = 0; j < n; ++j) g.d_nodes_[j] = -cum[j] / (hb * hb);
  g.validity_rate_ = guard_rate(ens);
  return g;
}

DressedGenerator build_lindblad(const HamiltonianEnsemble& ens,
                                const std::vector<double>& t_grid) {
  check_grid(t_grid);
  auto kernel = ens.expectation_kernel();
  const int d = ens.dim();
  const double hb = ens.hbar();
  const std::size_t n = t_grid.size();

  // H integrand: -(i/2 hbar) E[V, Vt(t')]; dissipator integrand:
  // sum_a (2a/hbar^2) E[L(L^a_t')] = (1/hbar^2) (S1 + S2 - 1/2 {E{V,Vt}, .})
  std::vector<ComplexMatrix> hint(n);
  std::vector<SuperOp> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const ComplexMatrix a = kernel->evv(t_grid[j]);
    const ComplexMatrix comm = a - a.adjoint();
    const ComplexMatrix anti = a + a.adjoint();
    hint[j] = -(I / (2.0 * hb)) * comm;
    w[j] = (kernel->sandwich_v_vt(t_grid[j]) + kernel->sandwich_vt_v(t_grid[j]) -
            0.5 * (left_superop(anti) + right_superop(anti))) /
           (hb * hb);
  }
  const double h = t_grid[1] - t_grid[0];
  std::vector<ComplexMatrix> hcum = cumulative_simpson(hint, h);
  std::vector<SuperOp> wcum = cumulative_simpson(w, h);

  DressedGenerator g;
  g.rep_ = Representation::lindblad;
  g.dim_ = d;
  g.hbar_ = hb;
  g.hbar_avg_ = ens.hbar_avg();
  g.grid_ = t_grid;
  g.h_nodes_.resize(n);
  g.d_nodes_ = std::move(wcum);
  for (std::size_t j = 0; j < n; ++j) g.h_nodes_[j] = ens.hbar_avg() + hermitize(hcum[j]);
  g.validity_rate_ = guard_rate(ens);
  return g;
}

DressedGenerator build_short_time(const HamiltonianEnsemble& ens) {
  auto kernel = ens.expectation_kernel();
  DressedGenerator g;
  g.rep_ = Representation::short_time;
  g.dim_ = ens.dim();
  g.hbar_ = ens.hbar();
  g.hbar_avg_ = ens.hbar_avg();
  g.evvh_ = hermitize(kernel->evvh());
  g.ev2_ = hermitize(kernel->ev2());
  g.evxv_ = kernel->evxv();
  g.validity_rate_ = guard_rate(ens);
  return g;
}

std::pair<ComplexMatrix, ComplexMatrix> lindblad_ops(const HamiltonianEnsemble& ens,
                                                     const ComplexMatrix& V, double t) {
  const ComplexMatrix vt = ens.interaction_potential(V, t);
  return {0.5 * (V + vt), 0.5 * (V - vt)};
}

TrajectoryRecord integrate(const DressedGenerator& gen, const ComplexMatrix& rho0,
                           const IntegratorSpec& spec) {
  if (spec.dt <= 0.0) throw std::invalid_argument("integrate: dt <= 0");
  if (spec.t_max < 0.0) throw std::invalid_argument("integrate: t_max < 0");
  {
    // dt must resolve the fastest scale: 0.01 * min(2 pi / omega_max, hbar/|V|)
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(gen.hbar_avg()));
    const double span = es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
    double bound = std::numeric_limits<double>::infinity();
    if (span > 0.0) bound = 2.0 * M_PI * gen.hbar() / span;
    const double vrms = gen.hbar() * std::sqrt(0.5 * gen.validity_rate());
    if (vrms > 0.0) bound = std::min(bound, gen.hbar() / vrms);
    if (spec.dt > 0.01 * bound * (1.0 + 1e-12))
      throw std::invalid_argument("integrate: dt does not resolve the fastest scale");
  }
  if (gen.representation() != Representation::short_time) {
    if (gen.t_grid_step() > spec.dt * (1.0 + 1e-12))
      throw std::invalid_argument("integrate: kernel grid coarser than dt");
    if (gen.t_grid_max() < spec.t_max - 1e-12)
      throw std::invalid_argument("integrate: kernel grid does not cover t_max");
  }

  const int nsteps = static_cast<int>(std::llround(spec.t_max / spec.dt));
  const double dt = nsteps > 0 ? spec.t_max / nsteps : spec.dt;

  TrajectoryRecord rec;
  rec.source = TrajectorySource::me;
  ComplexMatrix rho = rho0;
  double trace_drift_max = 0.0;

  auto store = [&](double t, const ComplexMatrix& r) {
    rec.times.push_back(t);
    rec.states.push_back(r);
  };
  store(0.0, rho);

  bool warned = false;
  for (int step = 0; step < nsteps; ++step) {
    const double t = step * dt;
    const ComplexMatrix k1 = gen.apply(t, rho);
    const ComplexMatrix k2 = gen.apply(t + 0.5 * dt, ComplexMatrix(rho + 0.5 * dt * k1));
    const ComplexMatrix k3 = gen.apply(t + 0.5 * dt, ComplexMatrix(rho + 0.5 * dt * k2));
    const ComplexMatrix k4 = gen.apply(t + dt, ComplexMatrix(rho + dt * k3));
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    rec.hermiticity_drift_max = std::max(rec.hermiticity_drift_max, hermiticity_drift(rho));
    rho = hermitize(rho);

    const double tr = std::real(rho.trace());
    trace_drift_max = std::max(trace_drift_max, std::abs(tr - 1.0));
    if (std::abs(tr - 1.0) > 1e-8)
      throw std::runtime_error("integrate: trace drift exceeded 1e-8");
    if (spec.renormalize) rho /= tr;

    const double tnext = (step + 1) * dt;
    if (gen.validity_rate() * tnext > 0.5 &&
        rec.validity_breach_time == std::numeric_limits<double>::infinity()) {
      rec.validity_breach_time = tnext;
      if (!warned) {
        std::cerr << "[ddqe] warning: accumulated dissipator strength exceeded 0.5 at t="
                  << tnext << "; perturbative validity range left\n";
        warned = true;
      }
    }
    if ((step + 1) % std::max(1, spec.store_every) == 0 || step + 1 == nsteps)
      store(tnext, rho);
  }
  return rec;
}

}  // namespace ddqe
