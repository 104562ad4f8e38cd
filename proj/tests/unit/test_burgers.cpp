#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fkdv/burgers.hpp"
#include "fkdv/spectral_ops.hpp"
#include "fkdv/transform.hpp"

using namespace fkdv;
using namespace fkdv::burgers;
using std::numbers::pi;

namespace {

// u0(x) = -x on a wide line segment; characteristics are X = x (1 - T).
InitialDatum linear_ramp() {
  return InitialDatum("ramp", [](double x) { return -x; }, [](double) { return -1.0; },
                      [](double) { return 0.0; }, [](double) { return 0.0; }, RealLine{5.0});
}

// Independent Burgers solution: Newton on x + u0(x) T = X from the
// characteristic through the nearest grid foot.
double brute_force_burgers(const InitialDatum& u0, double X, double T) {
  double best = 0.0, best_r = INFINITY;
  for (int k = 0; k <= 20000; ++k) {
    const double x = -pi + 2.0 * pi * k / 20000.0;
    const double r = std::abs(x + u0.value(x) * T - X);
    if (r < best_r) {
      best_r = r;
      best = x;
    }
  }
  for (int it = 0; it < 50; ++it) best -= (best + u0.value(best) * T - X) / (1.0 + u0.d1(best) * T);
  return u0.value(best);
}

}  // namespace

TEST_CASE("blowup data for -sin x") {
  const auto bd = blowup_data(InitialDatum::negative_sine());
  CHECK(std::abs(bd.x_star) < 1e-10);
  CHECK(bd.T_star == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bd.C1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bd.C3 == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(std::abs(bd.second_deriv) < 1e-8);
}

TEST_CASE("blowup time scales inversely with the amplitude") {
  CHECK(blowup_data(InitialDatum::negative_sine(2.0)).T_star == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(InitialDatum::negative_sine(20.0).blowup_time() == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("blowup time matches the slope along the critical characteristic") {
  // u0 = -x sech^2 x, derivatives by automatic finite differences.
  const auto u0 = InitialDatum::from_function(
      "sech_ramp", [](double x) { return -x / (std::cosh(x) * std::cosh(x)); }, RealLine{15.0});
  const auto bd = blowup_data(u0);
  CHECK(bd.T_star == doctest::Approx(-1.0 / u0.min_slope()).epsilon(1e-10));
  CHECK(bd.slope_min == doctest::Approx(-1.0).epsilon(1e-8));
  for (double gap : {1e-2, 1e-3, 1e-4}) {
    const double T = bd.T_star - gap;
    const double X = bd.x_star + bd.value_at_x_star * T;
    const double slope = eval_burgers_derivative(u0, X, T);
    CAPTURE(gap);
    CHECK(gap * std::abs(slope) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("data without blowup are rejected") {
  const auto flat = InitialDatum::from_function("zero", [](double) { return 0.0; }, Torus{2.0 * pi, -pi});
  CHECK_THROWS_AS(blowup_data(flat), NoBlowupError);
}

TEST_CASE("Burgers evaluation") {
  const auto u0 = InitialDatum::negative_sine();
  for (double X : {-2.0, 0.3, 1.7}) CHECK(eval_burgers(u0, X, 0.0) == doctest::Approx(u0.value(X)));
  for (double T : {0.1, 0.5, 0.99}) CHECK(std::abs(eval_burgers(u0, 0.0, T)) < 1e-14);
  for (double X : {-2.0, 0.3, 1.7}) CHECK(eval_burgers_derivative(u0, X, 0.0) == doctest::Approx(u0.d1(X)));

  const auto ramp = linear_ramp();
  for (double T : {0.2, 0.7}) {
    for (double X : {-1.0, 0.5, 1.2}) CHECK(eval_burgers(ramp, X, T) == doctest::Approx(-X / (1.0 - T)).epsilon(1e-12));
  }

  for (double T : {0.3, 0.8}) {
    for (double X : {-2.5, -0.4, 0.9, 3.0}) {
      CAPTURE(T);
      CAPTURE(X);
      CHECK(eval_burgers(u0, X, T) == doctest::Approx(brute_force_burgers(u0, X, T)).epsilon(1e-11));
    }
  }
}

TEST_CASE("past the blowup time the solution is multivalued") {
  CHECK_THROWS_AS(eval_burgers(InitialDatum::negative_sine(), 0.0, 1.2), MultivaluedRegionError);
}

TEST_CASE("characteristic round trip") {
  const auto u0 = InitialDatum::negative_sine();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ux(-pi, pi), ut(0.0, 0.99);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = ux(rng), T = ut(rng);
    const double X = x + u0.value(x) * T;
    const double back = characteristic_foot(u0, X, T);
    // Compare feet modulo the period.
    double d = std::remainder(back - x, 2.0 * pi);
    worst = std::max(worst, std::abs(d));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("batch sampling matches pointwise evaluation") {
  const auto u0 = InitialDatum::gaussian_derivative();
  std::vector<double> X;
  for (int k = 0; k < 300; ++k) X.push_back(-3.0 + 0.02 * k);
  const double T = 0.5 * u0.blowup_time();
  const auto batch = sample_burgers(u0, T, X, 2);
  for (std::size_t i = 0; i < X.size(); i += 17) CHECK(batch[i] == doctest::Approx(eval_burgers(u0, X[i], T)).epsilon(1e-12));

  const PeriodicGrid g(256, 2.0 * pi, -pi);
  const auto f = burgers_field(InitialDatum::negative_sine(), 0.5, g, 1);
  const auto v = to_physical(f);
  for (std::size_t k = 0; k < v.size(); k += 31) {
    CHECK(v[k] == doctest::Approx(eval_burgers(InitialDatum::negative_sine(), g.x(k), 0.5)).epsilon(1e-10));
  }
}

TEST_CASE("self-similar profile") {
  CHECK(self_similar_profile(0.0, 1.0, 1.0) == 0.0);
  CHECK(self_similar_profile(2.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(0.05, 5.0), y(-50.0, 50.0);
  for (int i = 0; i < 500; ++i) {
    const double C1 = c(rng), C3 = c(rng), Y = y(rng);
    const double U = self_similar_profile(Y, C1, C3);
    CHECK(std::abs(C1 * U + C3 * U * U * U - Y) < 1e-12 * std::max(1.0, std::abs(Y)));
    CHECK((U > 0) == (Y > 0));
  }
}

TEST_CASE("rescaled profile collapses onto the cubic") {
  const auto u0 = InitialDatum::negative_sine();
  const auto bd = blowup_data(u0);
  std::vector<double> Y;
  for (int k = -20; k <= 20; ++k) Y.push_back(k / 20.0);
  auto mismatch = [&](double gap) {
    double m = 0.0;
    for (const auto& p : rescale_to_profile(u0, bd, bd.T_star - gap, Y)) {
      m = std::max(m, std::abs(p.U_measured - self_similar_profile(p.Y, bd.C1, bd.C3)));
    }
    return m;
  };
  const auto centre = rescale_to_profile(u0, bd, 1.0 - 1e-3, std::vector<double>{0.0});
  CHECK(std::abs(centre.front().U_measured) < 1e-12);
  const double m2 = mismatch(1e-2), m3 = mismatch(1e-3), m4 = mismatch(1e-4);
  CHECK(m3 < 0.05);
  CHECK(m4 < m2);
  CHECK(m4 < m3);
}

TEST_CASE("norm growth fit for s = 1") {
  // T* - T = 0.1 * 2^-k, k = 0..6.
  std::vector<double> T;
  for (int k = 0; k <= 6; ++k) T.push_back(1.0 - 0.1 * std::pow(2.0, -k));
  const PeriodicGrid g(1 << 20, 2.0 * pi, -pi);
  const auto fit = norm_growth_fit(InitialDatum::negative_sine(), 1.0, T, g);
  CHECK(fit.exponent > -0.30);
  CHECK(fit.exponent < -0.20);
  CHECK(fit.gaps.size() == T.size());
}

TEST_CASE("resolution gate") {
  const PeriodicGrid coarse(1024, 2.0 * pi, -pi);
  CHECK_THROWS_AS(norm_growth_fit(InitialDatum::negative_sine(), 1.0, std::vector<double>{0.9, 0.999}, coarse),
                  ResolutionError);
}

TEST_CASE("finite-difference derivatives of a sampled function") {
  const auto f = InitialDatum::from_function("cubic_sine", [](double x) { return std::sin(x) + x * x * x / 6.0; },
                                             RealLine{4.0});
  for (double x : {-1.3, 0.0, 0.4, 2.1}) {
    CAPTURE(x);
    CHECK(f.d1(x) == doctest::Approx(std::cos(x) + x * x / 2.0).epsilon(1e-9));
    CHECK(f.d2(x) == doctest::Approx(-std::sin(x) + x).epsilon(1e-7).scale(1.0));
    CHECK(f.d3(x) == doctest::Approx(-std::cos(x) + 1.0).epsilon(1e-6).scale(1.0));
  }
}
