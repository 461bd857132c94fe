#pragma once

#include <array>
#include <limits>
#include <vector>

#include "ddqe/matrix.hpp"

namespace ddqe {

enum class TrajectorySource { mc, me, exact };

/// Time-resolved state record. stderr_bloch holds the per-time MC standard
/// error of the Bloch components (d = 2 Monte-Carlo sources only; empty for
/// deterministic sources).
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<ComplexMatrix> states;
  std::vector<std::array<double, 3>> stderr_bloch;
  TrajectorySource source = TrajectorySource::me;

  /// First time the perturbative validity guard fired; +inf if never.
  double validity_breach_time = std::numeric_limits<double>::infinity();

  /// Max |rho - rho^dag| entry seen while producing the record.
  double hermiticity_drift_max = 0.0;
};

}  // namespace ddqe
