#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddqe::io {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Scenario { central_spin, dirac, validate };

/// Validated run configuration. The seed is mandatory (no wall-clock
/// default); unknown keys are rejected; every physical parameter is checked
/// for sign/range with the offending key named in the error.
struct RunConfig {
  Scenario scenario = Scenario::central_spin;
  std::uint64_t seed = 0;
  bool serial = false;
  bool emit_svg = false;
  std::string output = "ddqe_out";
  double hbar = 1.0;

  struct CentralSpin {
    double omega = 1.0;
    std::string case_label;        // "i" | "ii" | "iii" | "" (custom)
    double delta_sq_mean = -1.0;   // derived from case when < 0
    int K = 1000;
    double t_max = 12.0;
    int points = 600;
    std::string delta_dist = "fixed";  // "fixed" | "gaussian"

    bool operator==(const CentralSpin&) const = default;
  } cs;

  struct Dirac {
    double p0 = 16.0;
    double c0 = 2.56;
    double ell = 1.0;
    double sigma = 4.0;
    double v = 1.0;
    double t_max = 3.0;
    int points = 13;
    std::vector<double> snapshot_times = {};
    std::string kernel_mode = "exact";  // "exact" | "large-time"
    int K = 0;                          // grid-oracle realizations; 0 = analytic only
    int n = 4096;
    double length = 0.0;  // 0 = auto
    double dt = 0.0;      // 0 = auto

    bool operator==(const Dirac&) const = default;
  } dirac;

  struct Validate {
    bool quick = false;
    bool operator==(const Validate&) const = default;
  } validate;

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& toml_text);
std::string serialize_config(const RunConfig& cfg);

}  // namespace ddqe::io
