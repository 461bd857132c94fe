#include "ddqe/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ddqe::io {

std::string format_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("CsvTable: non-finite value");
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> columns, std::vector<std::string> units)
    : columns_(std::move(columns)), units_(std::move(units)) {
  if (columns_.empty()) throw std::invalid_argument("CsvTable: no columns");
  if (units_.size() != columns_.size())
    throw std::invalid_argument("CsvTable: units row size mismatch");
}

CsvTable::CsvTable(std::string label_column, std::vector<std::string> columns,
                   std::vector<std::string> units)
    : CsvTable(std::move(columns), std::move(units)) {
  if (label_column.empty()) throw std::invalid_argument("CsvTable: empty label column");
  label_column_ = std::move(label_column);
}

void CsvTable::add_row(const std::vector<double>& row) {
  if (has_labels()) throw std::logic_error("CsvTable: label required");
  if (row.size() != columns_.size())
    throw std::invalid_argument("CsvTable: row size mismatch");
  for (double x : row)
    if (!std::isfinite(x)) throw std::domain_error("CsvTable: non-finite entry");
  data_.push_back(row);
}

void CsvTable::add_row(const std::string& label, const std::vector<double>& row) {
  if (!has_labels()) throw std::logic_error("CsvTable: table has no label column");
  if (row.size() != columns_.size())
    throw std::invalid_argument("CsvTable: row size mismatch");
  for (double x : row)
    if (!std::isfinite(x)) throw std::domain_error("CsvTable: non-finite entry");
  labels_.push_back(label);
  data_.push_back(row);
}

int CsvTable::column_index(const std::string& name) const {
  for (std::size_t c = 0; c < columns_.size(); ++c)
    if (columns_[c] == name) return static_cast<int>(c);
  return -1;
}

std::string CsvTable::to_string() const {
  std::string out;
  if (has_labels()) out += label_column_ + ",";
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += columns_[c];
  }
  out += '\n';
  out += "# units:";
  if (has_labels()) out += " -,";
  else out += ' ';
  for (std::size_t c = 0; c < units_.size(); ++c) {
    if (c) out += ',';
    out += units_[c];
  }
  out += '\n';
  for (std::size_t r = 0; r < data_.size(); ++r) {
    if (has_labels()) out += labels_[r] + ",";
    for (std::size_t c = 0; c < data_[r].size(); ++c) {
      if (c) out += ',';
      out += format_double(data_[r][c]);
    }
    out += '\n';
  }
  return out;
}

void CsvTable::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("CsvTable: cannot open " + path);
  f << to_string();
}

CsvTable CsvTable::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("CsvTable: cannot open " + path);
  std::string line;
  CsvTable t;
  bool have_header = false;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    if (!have_header) {
      while (std::getline(ss, cell, ',')) t.columns_.push_back(cell);
      t.units_.assign(t.columns_.size(), "");
      have_header = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      double x = 0.0;
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (res.ec != std::errc())
        throw std::runtime_error("CsvTable: bad numeric cell '" + cell + "'");
      row.push_back(x);
    }
    if (row.size() != t.columns_.size())
      throw std::runtime_error("CsvTable: ragged row in " + path);
    t.data_.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("CsvTable: empty file " + path);
  return t;
}

}  // namespace ddqe::io
