#pragma once

#include <memory>

#include "ddqe/dirac/correlator.hpp"
#include "ddqe/rng.hpp"

namespace ddqe::dirac {

/// Two-component spinor field on a uniform periodic grid (N a power of two).
/// mass_field holds m(x) v^2 samples (energy units).
struct GridState {
  int n = 0;
  double dx = 0.0;
  double x0 = 0.0;  // position of site 0
  ComplexVector up;
  ComplexVector down;
  std::vector<double> mass_field;

  double x_at(int j) const { return x0 + j * dx; }
  double length() const { return n * dx; }
  double norm() const;   // sum |psi|^2 dx
  double mean_x() const;
};

/// Right-moving Gaussian packet psi_up ~ exp(-(x-xc)^2/4 sigma^2 + i p0 x/hbar)
/// on an N-point grid of length L centered at x = 0; mass field zeroed.
GridState gaussian_grid_state(int n, double length, double sigma, double p0,
                              double h_bar = 1.0, double xc = 0.0);

struct GridObservables {
  double t = 0.0;
  double norm = 1.0;
  double mean_x = 0.0;
  double backscatter = 0.0;  // momentum weight at p < 0 (both bands)
};

/// Strang split-step propagator for H = v p sigma_z + m(x) v^2 sigma_x:
/// half-step momentum phase, full-step local sigma_x rotation, half-step
/// momentum phase. Owns the FFT plans; one instance per worker thread.
class GridEvolver {
 public:
  GridEvolver(const GridState& init, double h_bar, double v, double dt);
  ~GridEvolver();
  GridEvolver(const GridEvolver&) = delete;
  GridEvolver& operator=(const GridEvolver&) = delete;

  void set_state(const GridState& s);
  const GridState& state() const { return state_; }
  double time() const { return t_; }

  void steps(int nsteps);
  GridObservables observe() const;

  /// Momentum densities P^{+-}(p_k) per band; sum P dp equals the norm.
  void momentum_weights(std::vector<double>& p, std::vector<double>& w_up,
                        std::vector<double>& w_down) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  GridState state_;
  double h_bar_, v_, dt_, t_ = 0.0;
};

/// Precondition checks for the split-step run: >= 8 grid points per de
/// Broglie wavelength 2 pi hbar / p_occ and dt * max(v p_occ, max|m v^2|)
/// <= 0.1 hbar, with p_occ the largest occupied momentum scale.
void check_grid_preconditions(const GridState& s, double p_occ, double h_bar, double v,
                              double dt);

/// Convenience: evolve one mass-field realization, recording observables
/// every `record_every` steps (plus t = 0).
std::vector<GridObservables> grid_evolve(GridState state, double h_bar, double v,
                                         double dt, int nsteps, int record_every);

struct DiracEnsembleResult {
  std::vector<double> times;
  std::vector<double> mean_x;          // ensemble mean of <x>(t)
  std::vector<double> mean_x_stderr;
  std::vector<double> backscatter;     // ensemble mean backscattered weight
  std::vector<double> backscatter_stderr;
  std::vector<double> purity;          // at times; empty unless requested
};

/// Disorder ensemble of K mass-field realizations, map-reduced over workers
/// with per-realization RngStream(seed, k). with_purity additionally
/// estimates Tr[rho_bar(t)^2] from pairwise state overlaps (unbiased,
/// diagonal excluded).
DiracEnsembleResult dirac_grid_ensemble(const CorrelatorSpec& spec, double p0,
                                        double sigma, int n, double length, double dt,
                                        double t_max, int K, std::uint64_t seed,
                                        int record_points, bool with_purity = false,
                                        int nworkers = 1);

}  // namespace ddqe::dirac
