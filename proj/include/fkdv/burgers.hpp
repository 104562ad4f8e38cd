#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fkdv/grid.hpp"
#include "fkdv/spectral_field.hpp"

namespace fkdv::burgers {

/// Datum decaying at infinity; extrema are searched on [-half_width, half_width].
struct RealLine {
  double half_width;
};

/// Datum periodic on [origin, origin + period).
struct Torus {
  double period;
  double origin = 0.0;
};

using Domain = std::variant<RealLine, Torus>;

/// An initial profile u0 together with u0', u0'', u0'''.
class InitialDatum {
 public:
  using Fn = std::function<double(double)>;

  InitialDatum(std::string name, Fn value, Fn d1, Fn d2, Fn d3, Domain domain);

  /// u0 = -A sin(k x) on the torus of period 2 pi / k, centred on 0.
  static InitialDatum negative_sine(double amplitude = 1.0, double wavenumber = 1.0);

  /// u0 = -A x exp(-x^2).
  static InitialDatum gaussian_derivative(double amplitude = 1.0, double half_width = 12.0);

  /// u0 = A (cos(n x) + cos((n+1) x)) on the 2 pi torus.
  static InitialDatum two_mode(double amplitude, int n);

  /// Derivatives by sixth-order central differences with step h = L * 1e-4,
  /// L being the period or the search window width.
  static InitialDatum from_function(std::string name, Fn value, Domain domain);

  double value(double x) const { return value_(x); }
  double d1(double x) const { return d1_(x); }
  double d2(double x) const { return d2_(x); }
  double d3(double x) const { return d3_(x); }

  const std::string& name() const { return name_; }
  const Domain& domain() const { return domain_; }
  /// Length of the period or of the search window.
  double extent() const;
  /// Left end of the period or search window.
  double lower() const;

  /// sup |u0| over the domain (grid scan).
  double sup_abs() const { return sup_abs_; }
  /// inf u0' and its location, refined to 1e-10.
  double min_slope() const { return min_slope_; }
  double argmin_slope() const { return argmin_slope_; }
  /// -1 / inf u0', or +inf when u0' >= 0.
  double blowup_time() const;

 private:
  std::string name_;
  Fn value_, d1_, d2_, d3_;
  Domain domain_;
  double sup_abs_ = 0.0;
  double min_slope_ = 0.0;
  double argmin_slope_ = 0.0;
};

struct BlowupData {
  double x_star;
  double T_star;
  double slope_min;    // u0'(x*)
  double second_deriv;  // u0''(x*), zero up to the rootfinding tolerance
  double third_deriv;  // u0'''(x*)
  double C1;
  double C3;
  double value_at_x_star;  // u0(x*)
};

class NoBlowupError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateBlowupError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class MultivaluedRegionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class RootFindError : public std::runtime_error {
 public:
  RootFindError(const std::string& what, double lo, double hi)
      : std::runtime_error(what + " (bracket [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "])"),
        bracket_lo(lo),
        bracket_hi(hi) {}
  double bracket_lo;
  double bracket_hi;
};

class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws NoBlowupError when u0' >= 0, DegenerateBlowupError when u0'''(x*) <= 0.
BlowupData blowup_data(const InitialDatum& u0);

/// Foot x of the characteristic X = x + u0(x) T. Requires 0 <= T < T*.
double characteristic_foot(const InitialDatum& u0, double X, double T);

/// u(X, T) = u0(x) on the characteristic through x.
double eval_burgers(const InitialDatum& u0, double X, double T);

/// u_X(X, T) = u0'(x) / (1 + u0'(x) T).
double eval_burgers_derivative(const InitialDatum& u0, double X, double T);

/// u(X_k, T) for every X_k. Points are processed in sorted runs with warm
/// starts and split across worker threads.
std::vector<double> sample_burgers(const InitialDatum& u0, double T, std::span<const double> X,
                                   unsigned workers = 0);

/// u(., T) sampled on the grid and transformed.
SpectralField burgers_field(const InitialDatum& u0, double T, const PeriodicGrid& grid,
                            unsigned workers = 0);

/// Unique real root U of C3 U^3 + C1 U = Y.
double self_similar_profile(double Y, double C1, double C3);

struct ProfileSample {
  double Y;
  double U_measured;
};

/// U_measured = -T* (u(X, T) - u0(x*)) / (T* - T)^{1/2} at
/// X = x* + u0(x*) T + Y (T* - T)^{3/2}.
std::vector<ProfileSample> rescale_to_profile(const InitialDatum& u0, const BlowupData& bd,
                                              double T, std::span<const double> Y_grid);

struct NormGrowthFit {
  double exponent;
  double log_log_residual;
  std::vector<double> gaps;   // T* - T
  std::vector<double> norms;  // homogeneous H^s norms
};

/// Least-squares slope of log ||u(., T)||_{H^s dot} against log(T* - T).
/// Throws ResolutionError unless spacing < (T* - T_max)^{3/2} / 8.
NormGrowthFit norm_growth_fit(const InitialDatum& u0, double s, std::span<const double> T_samples,
                              const PeriodicGrid& grid, unsigned workers = 0);

}  // namespace fkdv::burgers
