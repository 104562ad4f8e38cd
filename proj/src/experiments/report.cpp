#include "fkdv/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

namespace fkdv {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("table '" + name + "': row has " + std::to_string(row.size()) +
                                " cells, header has " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::vector<double> Table::column(const std::string& col) const {
  const auto it = std::find(columns.begin(), columns.end(), col);
  if (it == columns.end()) throw std::out_of_range("table '" + name + "' has no column " + col);
  const std::size_t k = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    const double* d = std::get_if<double>(&r[k]);
    out.push_back(d ? *d : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

bool ExperimentReport::all_passed() const {
  if (!errors.empty()) return false;
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

Verdict& ExperimentReport::add_verdict(std::string name, bool passed, double measured,
                                       double predicted, double tolerance, std::string prediction) {
  verdicts.push_back({std::move(name), passed, measured, predicted, tolerance, std::move(prediction)});
  return verdicts.back();
}

Verdict& ExperimentReport::check_abs(std::string name, double measured, double predicted,
                                     double tolerance, std::string prediction) {
  const bool ok = std::abs(measured - predicted) <= tolerance;
  return add_verdict(std::move(name), ok, measured, predicted, tolerance, std::move(prediction));
}

Verdict& ExperimentReport::check_rel(std::string name, double measured, double predicted,
                                     double tolerance, std::string prediction) {
  const bool ok = std::abs(measured - predicted) <= tolerance * std::abs(predicted);
  return add_verdict(std::move(name), ok, measured, predicted, tolerance, std::move(prediction));
}

Verdict& ExperimentReport::check_below(std::string name, double measured, double bound,
                                       std::string prediction) {
  return add_verdict(std::move(name), measured < bound, measured, bound, 0.0, std::move(prediction));
}

const Table* ExperimentReport::find_table(const std::string& n) const {
  for (const auto& t : tables) {
    if (t.name == n) return &t;
  }
  return nullptr;
}

void ExperimentReport::param(std::string key, double value) {
  params.emplace_back(std::move(key), format_double(value));
}

void ExperimentReport::param(std::string key, std::string value) {
  params.emplace_back(std::move(key), std::move(value));
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& job) {
  if (count == 0) return;
  unsigned k = workers > 0 ? workers : std::max(1u, std::thread::hardware_concurrency());
  k = static_cast<unsigned>(std::min<std::size_t>(k, count));
  std::vector<std::exception_ptr> errors(count);
  if (k == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < k; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            job(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace fkdv
