#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fkdv {

using Cell = std::variant<double, std::string>;

/// Column-major-free table: one header, rows of equal width.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  Table() = default;
  Table(std::string n, std::vector<std::string> cols) : name(std::move(n)), columns(std::move(cols)) {}

  /// Throws std::invalid_argument when the row width differs from the header.
  void add_row(std::vector<Cell> row);
  /// Numeric column by name; string cells become NaN.
  std::vector<double> column(const std::string& col) const;
};

/// A named check of a measured quantity against a prediction.
struct Verdict {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double predicted = 0.0;
  double tolerance = 0.0;
  /// The statement being tested, e.g. "u2 H^s norm grows like n^(-s/4-1/2)".
  std::string prediction;
};

/// A plot drawn from the columns of one of the report's tables.
struct FigureSpec {
  std::string name;
  std::string title;
  std::string table;
  std::string x_column;
  std::vector<std::string> y_columns;
  bool log_x = false;
  bool log_y = false;
  /// Draw markers only (exponent fits) instead of polylines.
  bool scatter = false;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<Table> tables;
  std::vector<FigureSpec> figures;
  std::vector<Verdict> verdicts;
  /// Per-case failures that did not abort the whole experiment.
  std::vector<std::string> errors;
  std::vector<std::pair<std::string, std::string>> provenance;

  bool all_passed() const;
  Verdict& add_verdict(std::string name, bool passed, double measured, double predicted,
                       double tolerance, std::string prediction);
  /// |measured - predicted| <= tolerance.
  Verdict& check_abs(std::string name, double measured, double predicted, double tolerance,
                     std::string prediction);
  /// |measured - predicted| <= tolerance * |predicted|.
  Verdict& check_rel(std::string name, double measured, double predicted, double tolerance,
                     std::string prediction);
  /// measured < bound.
  Verdict& check_below(std::string name, double measured, double bound, std::string prediction);
  const Table* find_table(const std::string& name) const;
  void param(std::string key, double value);
  void param(std::string key, std::string value);
};

/// Runs job(i) for i in [0, count) on up to `workers` threads (0 = hardware
/// concurrency). Exceptions are rethrown in index order after all jobs end.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& job);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

}  // namespace fkdv
