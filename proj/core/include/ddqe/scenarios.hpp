#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ddqe/io/config.hpp"
#include "ddqe/io/csv.hpp"

namespace ddqe {

struct ScenarioOutput {
  /// (file suffix, table) pairs; written as <output>_<suffix>.csv.
  std::vector<std::pair<std::string, io::CsvTable>> tables;
  /// (file suffix, svg bytes) pairs; written as <output>_<suffix>.svg.
  std::vector<std::pair<std::string, std::string>> svgs;
  /// 0 ok, 2 when a numerical-validity guard fired during the run.
  int exit_code = 0;
};

/// Dispatches a validated configuration to the scenario runners and collects
/// deterministic CSV tables (and optional SVG plots).
ScenarioOutput run_scenario(const io::RunConfig& cfg);

}  // namespace ddqe
