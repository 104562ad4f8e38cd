#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fkdv/grid.hpp"

namespace fkdv {

/// m(xi) = |xi|^alpha, with m(0) = 0 when alpha < 0.
struct FractionalSymbol {
  double alpha;
};

/// m(xi) = sqrt(tanh(xi) / xi), m(0) = 1.
struct WhithamSymbol {};

/// m(xi) = xi coth(depth xi) - 1/depth, m(0) = 0.
struct IlwSymbol {
  double depth;
};

/// Tabulated (xi, m) pairs for xi >= 0, linearly interpolated in |xi|.
struct TabulatedSymbol {
  std::vector<std::pair<double, double>> table;
};

/// Real, even Fourier-multiplier symbol of the linear operator in
///   u_t + M u_x + u u_x = 0,
/// times a scale factor (scale = nu^-alpha for the rescaled zero-dispersion
/// problem, scale = 0 for inviscid Burgers).
class DispersionSpec {
 public:
  using Kind = std::variant<FractionalSymbol, WhithamSymbol, IlwSymbol, TabulatedSymbol>;

  /// alpha must lie in [-1, 2].
  static DispersionSpec fractional(double alpha, double scale = 1.0);
  static DispersionSpec whitham();
  static DispersionSpec ilw(double depth);
  static DispersionSpec tabulated(std::vector<std::pair<double, double>> table);
  /// Zero symbol: the evolution reduces to inviscid Burgers.
  static DispersionSpec none();

  DispersionSpec scaled(double factor) const;

  double symbol(double xi) const;
  /// m(xi_j) for j = 0 .. N/2.
  std::vector<double> symbol_table(const PeriodicGrid& grid) const;
  /// Linear dispersion frequencies omega_j = m(xi_j) xi_j for j = 0 .. N/2.
  std::vector<double> frequency_table(const PeriodicGrid& grid) const;

  const Kind& kind() const { return kind_; }
  double scale() const { return scale_; }
  /// Fractional exponent; NaN for the other kinds.
  double alpha() const;
  bool is_fractional() const { return std::holds_alternative<FractionalSymbol>(kind_); }
  std::string describe() const;

 private:
  DispersionSpec(Kind kind, double scale) : kind_(std::move(kind)), scale_(scale) {}

  Kind kind_;
  double scale_;
};

}  // namespace fkdv
