#include "ddqe/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ddqe::io {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// round limits outward to a tidy step
void nice_limits(double& lo, double& hi) {
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
    return;
  }
  const double span = hi - lo;
  const double step = std::pow(10.0, std::floor(std::log10(span)) - 1.0);
  lo = std::floor(lo / step) * step;
  hi = std::ceil(hi / step) * step;
}

const char* kStrokes[] = {"#1f6fb4", "#c44e52", "#2d8a57", "#8172b2", "#937860"};
const char* kDashes[] = {"none", "7,4", "2,3", "9,2,2,2", "4,4"};

}  // namespace

std::string emit_svg(const CsvTable& table, const PlotSpec& spec) {
  if (table.rows() == 0) throw std::invalid_argument("emit_svg: empty table");
  const int ix = table.column_index(spec.x_column);
  if (ix < 0) throw std::invalid_argument("emit_svg: no column '" + spec.x_column + "'");
  if (spec.y_columns.empty()) throw std::invalid_argument("emit_svg: no y columns");
  std::vector<int> iy;
  for (const auto& name : spec.y_columns) {
    const int c = table.column_index(name);
    if (c < 0) throw std::invalid_argument("emit_svg: no column '" + name + "'");
    iy.push_back(c);
  }

  double xlo = table.at(0, ix), xhi = xlo, ylo = table.at(0, iy[0]), yhi = ylo;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    xlo = std::min(xlo, table.at(r, ix));
    xhi = std::max(xhi, table.at(r, ix));
    for (int c : iy) {
      ylo = std::min(ylo, table.at(r, c));
      yhi = std::max(yhi, table.at(r, c));
    }
  }
  nice_limits(xlo, xhi);
  nice_limits(ylo, yhi);

  const double ml = 64, mr = 16, mt = 28, mb = 44;
  const double pw = spec.width - ml - mr, ph = spec.height - mt - mb;
  auto px = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ylo) / (yhi - ylo) * ph; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) +
       "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " +
       std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // frame and ticks
  s += "<g stroke=\"#333\" fill=\"none\" stroke-width=\"1\">\n";
  s += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" + fmt(pw) +
       "\" height=\"" + fmt(ph) + "\"/>\n";
  s += "</g>\n";
  s += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  const int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    const double xv = xlo + (xhi - xlo) * i / nticks;
    const double yv = ylo + (yhi - ylo) * i / nticks;
    s += "<line x1=\"" + fmt(px(xv)) + "\" y1=\"" + fmt(mt + ph) + "\" x2=\"" +
         fmt(px(xv)) + "\" y2=\"" + fmt(mt + ph + 4) + "\" stroke=\"#333\"/>\n";
    s += "<text x=\"" + fmt(px(xv)) + "\" y=\"" + fmt(mt + ph + 16) +
         "\" text-anchor=\"middle\">" + fmt(xv) + "</text>\n";
    s += "<line x1=\"" + fmt(ml - 4) + "\" y1=\"" + fmt(py(yv)) + "\" x2=\"" + fmt(ml) +
         "\" y2=\"" + fmt(py(yv)) + "\" stroke=\"#333\"/>\n";
    s += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(py(yv) + 4) +
         "\" text-anchor=\"end\">" + fmt(yv) + "</text>\n";
  }
  s += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(mt + ph + 34) +
       "\" text-anchor=\"middle\">" + spec.x_column + "</text>\n";
  if (!spec.title.empty())
    s += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(mt - 10) +
         "\" text-anchor=\"middle\" font-size=\"13\">" + spec.title + "</text>\n";
  s += "</g>\n";

  for (std::size_t k = 0; k < iy.size(); ++k) {
    const char* color = kStrokes[k % 5];
    const char* dash = kDashes[k % 5];
    s += "<polyline fill=\"none\" stroke=\"";
    s += color;
    s += "\" stroke-width=\"1.5\"";
    if (std::string(dash) != "none") s += " stroke-dasharray=\"" + std::string(dash) + "\"";
    s += " points=\"";
    for (std::size_t r = 0; r < table.rows(); ++r) {
      if (r) s += ' ';
      s += fmt(px(table.at(r, ix))) + "," + fmt(py(table.at(r, iy[k])));
    }
    s += "\"/>\n";
    // legend entry
    const double ly = mt + 14 + 16 * double(k);
    s += "<line x1=\"" + fmt(ml + pw - 120) + "\" y1=\"" + fmt(ly) + "\" x2=\"" +
         fmt(ml + pw - 96) + "\" y2=\"" + fmt(ly) + "\" stroke=\"" + color +
         "\" stroke-width=\"1.5\"" +
         (std::string(dash) != "none" ? " stroke-dasharray=\"" + std::string(dash) + "\""
                                      : "") +
         "/>\n";
    s += "<text font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\" x=\"" +
         fmt(ml + pw - 90) + "\" y=\"" + fmt(ly + 4) + "\">" + spec.y_columns[k] +
         "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace ddqe::io
