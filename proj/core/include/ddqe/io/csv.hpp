#pragma once

#include <string>
#include <vector>

namespace ddqe::io {

/// Rectangular numeric table with a header row and a '#'-prefixed units
/// annotation row. Numbers are rendered with shortest round-trip
/// representation (<= 17 significant digits, '.' decimal separator), so the
/// byte output is a pure function of the values.
class CsvTable {
 public:
  CsvTable(std::vector<std::string> columns, std::vector<std::string> units);

  /// Adds a leading non-numeric label column (used by the validate report).
  CsvTable(std::string label_column, std::vector<std::string> columns,
           std::vector<std::string> units);

  void add_row(const std::vector<double>& row);
  void add_row(const std::string& label, const std::vector<double>& row);

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return columns_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }
  double at(std::size_t r, std::size_t c) const { return data_[r][c]; }
  const std::string& label(std::size_t r) const { return labels_[r]; }
  bool has_labels() const { return !label_column_.empty(); }
  int column_index(const std::string& name) const;  // -1 if absent

  std::string to_string() const;
  void save(const std::string& path) const;

  static CsvTable load(const std::string& path);

 private:
  CsvTable() = default;
  std::string label_column_;
  std::vector<std::string> labels_;
  std::vector<std::string> columns_;
  std::vector<std::string> units_;
  std::vector<std::vector<double>> data_;
};

/// Shortest round-trip decimal rendering of a double.
std::string format_double(double x);

}  // namespace ddqe::io
