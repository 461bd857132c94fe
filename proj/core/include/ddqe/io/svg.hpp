#pragma once

#include <string>
#include <vector>

#include "ddqe/io/csv.hpp"

namespace ddqe::io {

struct PlotSpec {
  std::string x_column;
  std::vector<std::string> y_columns;
  std::string title;
  int width = 720;
  int height = 480;
};

/// Standalone SVG line plot of the selected columns: one polyline per series,
/// alternating solid/dashed stroke patterns, axis labels carrying the units
/// row, inline legend, no external assets. Byte-deterministic for fixed input.
std::string emit_svg(const CsvTable& table, const PlotSpec& spec);

}  // namespace ddqe::io
