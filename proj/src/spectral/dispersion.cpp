#include "fkdv/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fkdv {
namespace {

double whitham_value(double k) {
  if (k < 1e-4) return 1.0 - k * k / 6.0 + 19.0 * k * k * k * k / 360.0;
  return std::sqrt(std::tanh(k) / k);
}

double ilw_value(double k, double depth) {
  const double z = k * depth;
  if (z < 1e-4) return (z * z / 3.0 - z * z * z * z / 45.0) / depth;
  return k / std::tanh(z) - 1.0 / depth;
}

double table_value(const std::vector<std::pair<double, double>>& t, double k) {
  if (k < t.front().first || k > t.back().first) {
    throw std::out_of_range("wavenumber outside tabulated symbol range");
  }
  auto hi = std::lower_bound(t.begin(), t.end(), k,
                             [](const auto& row, double v) { return row.first < v; });
  if (hi == t.begin()) return hi->second;
  auto lo = std::prev(hi);
  const double w = (k - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

}  // namespace

DispersionSpec DispersionSpec::fractional(double alpha, double scale) {
  if (!(alpha >= -1.0 && alpha <= 2.0)) {
    throw std::invalid_argument("fractional dispersion exponent must lie in [-1, 2]");
  }
  return DispersionSpec(FractionalSymbol{alpha}, scale);
}

DispersionSpec DispersionSpec::whitham() { return DispersionSpec(WhithamSymbol{}, 1.0); }

DispersionSpec DispersionSpec::ilw(double depth) {
  if (!(depth > 0.0)) throw std::invalid_argument("ILW depth must be positive");
  return DispersionSpec(IlwSymbol{depth}, 1.0);
}

DispersionSpec DispersionSpec::tabulated(std::vector<std::pair<double, double>> table) {
  if (table.size() < 2) throw std::invalid_argument("tabulated symbol needs at least two rows");
  std::sort(table.begin(), table.end());
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].first < 0.0) throw std::invalid_argument("tabulated symbol needs xi >= 0");
    if (i > 0 && table[i].first == table[i - 1].first) {
      throw std::invalid_argument("tabulated symbol has duplicate wavenumbers");
    }
  }
  return DispersionSpec(TabulatedSymbol{std::move(table)}, 1.0);
}

DispersionSpec DispersionSpec::none() { return DispersionSpec(FractionalSymbol{0.0}, 0.0); }

DispersionSpec DispersionSpec::scaled(double factor) const {
  return DispersionSpec(kind_, scale_ * factor);
}

double DispersionSpec::alpha() const {
  if (const auto* f = std::get_if<FractionalSymbol>(&kind_)) return f->alpha;
  return std::numeric_limits<double>::quiet_NaN();
}

double DispersionSpec::symbol(double xi) const {
  if (scale_ == 0.0) return 0.0;
  const double k = std::abs(xi);
  const double m = std::visit(
      [k](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FractionalSymbol>) {
          if (k == 0.0) return s.alpha == 0.0 ? 1.0 : 0.0;
          return std::pow(k, s.alpha);
        } else if constexpr (std::is_same_v<T, WhithamSymbol>) {
          return whitham_value(k);
        } else if constexpr (std::is_same_v<T, IlwSymbol>) {
          return ilw_value(k, s.depth);
        } else {
          return table_value(s.table, k);
        }
      },
      kind_);
  return scale_ * m;
}

std::vector<double> DispersionSpec::symbol_table(const PeriodicGrid& grid) const {
  const auto xi = grid.wavenumbers();
  std::vector<double> out(xi.size());
  for (std::size_t j = 0; j < xi.size(); ++j) out[j] = symbol(xi[j]);
  return out;
}

std::vector<double> DispersionSpec::frequency_table(const PeriodicGrid& grid) const {
  const auto xi = grid.wavenumbers();
  std::vector<double> out = symbol_table(grid);
  for (std::size_t j = 0; j < xi.size(); ++j) out[j] *= xi[j];
  return out;
}

std::string DispersionSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&os](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FractionalSymbol>) {
          os << "fractional(alpha=" << s.alpha << ")";
        } else if constexpr (std::is_same_v<T, WhithamSymbol>) {
          os << "whitham";
        } else if constexpr (std::is_same_v<T, IlwSymbol>) {
          os << "ilw(depth=" << s.depth << ")";
        } else {
          os << "tabulated(" << s.table.size() << " rows)";
        }
      },
      kind_);
  os << " x " << scale_;
  return os.str();
}

}  // namespace fkdv
