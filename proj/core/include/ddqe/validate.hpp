#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ddqe {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;  // check-specific figure of merit
  double bound = 0.0;     // pass threshold the figure is compared against
  double seconds = 0.0;
  double seconds_bound = 0.0;  // runtime budget (0 = unbounded)
};

struct ValidateOptions {
  bool quick = false;
  std::uint64_t seed = 20240501;
  int nworkers = 1;
};

/// Runs the complete validation battery: the ten acceptance checks plus the
/// per-module invariant suites. Each entry prints nothing; callers render the
/// results (CSV table or PASS/FAIL lines).
std::vector<CheckResult> run_validation(const ValidateOptions& opt);

/// Least-squares backscatter rate: slope of y(t) = -log(1 - 2 w(t))/2 over
/// [t_lo, t_hi] (the transform removes the depletion saturation of the
/// two-band rate model).
double fit_backscatter_rate(const std::vector<double>& t, const std::vector<double>& w,
                            double t_lo, double t_hi);

struct ZitterFit {
  double omega = 0.0;
  double amplitude = 0.0;
  double drift_velocity = 0.0;
};

/// Fits <x>(t) = x0 + u t + env(t) [a sin(Om t) + b cos(Om t)] with the
/// correlation/packet envelope env(t) = exp(-(vt/ell)^2 - (vt/sigma)^2/2),
/// scanning Om around om_guess.
ZitterFit fit_zitter(const std::vector<double>& t, const std::vector<double>& x, double v,
                     double ell, double sigma, double om_guess);

}  // namespace ddqe
