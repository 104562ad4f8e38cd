#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fkdv/dispersion.hpp"
#include "fkdv/experiments.hpp"
#include "fkdv/fit.hpp"
#include "fkdv/quadrature.hpp"
#include "fkdv/spectral_ops.hpp"
#include "fkdv/transform.hpp"

using namespace fkdv;
using std::numbers::pi;

namespace {

PeriodicGrid torus(std::size_t n) { return PeriodicGrid(n, 2.0 * pi); }

std::vector<double> sample(const PeriodicGrid& g, const std::function<double(double)>& f) {
  std::vector<double> v = g.points();
  for (auto& x : v) x = f(x);
  return v;
}

std::vector<double> random_samples(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Trigonometric polynomial sum_k a_k cos(kx) + b_k sin(kx), k >= 1, plus a mean.
struct TrigPoly {
  double mean = 0.0;
  std::vector<double> a, b;

  double operator()(double x) const {
    double v = mean;
    for (std::size_t k = 1; k <= a.size(); ++k) {
      v += a[k - 1] * std::cos(k * x) + b[k - 1] * std::sin(k * x);
    }
    return v;
  }
  // |D|^alpha applied term by term.
  double frac(double x, double alpha) const {
    double v = 0.0;
    for (std::size_t k = 1; k <= a.size(); ++k) {
      v += std::pow(double(k), alpha) * (a[k - 1] * std::cos(k * x) + b[k - 1] * std::sin(k * x));
    }
    return v;
  }
};

}  // namespace

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(PeriodicGrid(7, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicGrid(6, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicGrid(8, 0.0), std::invalid_argument);
  const PeriodicGrid g(16, 4.0, -2.0);
  CHECK(g.wavenumber(0) == 0.0);
  CHECK(g.wavenumber(-3) == -g.wavenumber(3));
  CHECK(g.wavenumber(3) == doctest::Approx(2.0 * pi * 3 / 4.0));
  CHECK(g.x(0) == -2.0);
  CHECK(g.half_size() == 9);
}

TEST_CASE("forward transform of simple fields") {
  const auto g = torus(32);
  const SpectralField one = to_spectral(std::vector<double>(32, 1.0), g);
  CHECK(one.coefficient(0).real() == doctest::Approx(1.0));
  for (long j = 1; j <= 16; ++j) CHECK(std::abs(one.coefficient(j)) < 1e-15);

  const int n = 5;
  const SpectralField c = to_spectral(sample(g, [&](double x) { return std::cos(n * x); }), g);
  CHECK(std::abs(c.coefficient(n) - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(c.coefficient(-n) - cplx(0.5, 0.0)) < 1e-15);
  for (long j = -15; j <= 16; ++j) {
    if (std::abs(j) != n) CHECK(std::abs(c.coefficient(j)) < 1e-15);
  }
}

TEST_CASE("inverse transform of simple spectra") {
  const auto g = torus(16);
  SpectralField f(g);
  f.set_mode(0, 1.0);
  for (double v : to_physical(f)) CHECK(v == doctest::Approx(1.0));
  SpectralField c(g);
  c.set_mode(1, 0.5);
  CHECK(c.coefficient(-1) == cplx(0.5, 0.0));
  CHECK(max_diff(to_physical(c), sample(g, [](double x) { return std::cos(x); })) < 1e-15);
}

TEST_CASE("transform round trip") {
  for (std::size_t n : {8u, 64u, 1000u, 4096u}) {
    const PeriodicGrid g(n, 3.7, -1.1);
    const auto x = random_samples(n, static_cast<unsigned>(n));
    CHECK(max_diff(to_physical(to_spectral(x, g)), x) < 1e-12);
  }
  CHECK_THROWS_AS(to_spectral(std::vector<double>(10), torus(16)), std::invalid_argument);
}

TEST_CASE("transform against the direct sum") {
  const PeriodicGrid g(24, 5.0, 0.7);
  const auto x = random_samples(24, 3);
  const SpectralField f = to_spectral(x, g);
  for (long j = 0; j <= 12; ++j) {
    cplx direct = 0.0;
    for (std::size_t k = 0; k < 24; ++k) {
      direct += x[k] * std::exp(cplx(0.0, -g.wavenumber(j) * (g.x(k) - g.origin())));
    }
    CHECK(std::abs(direct / 24.0 - f.coefficient(j)) < 1e-14);
  }
}

TEST_CASE("Hermitian input checks") {
  const auto g = torus(8);
  std::vector<cplx> bad(5, 0.0);
  bad[0] = cplx(1.0, 0.5);
  CHECK_THROWS_AS(SpectralField(g, bad), std::invalid_argument);
  CHECK_THROWS_AS(SpectralField(g, std::vector<cplx>(3)), std::invalid_argument);
  std::vector<cplx> full(8, 0.0);
  full[3 + 1] = cplx(1.0, 1.0);  // index j = 1 sits at position j + N/2 - 1
  CHECK_THROWS_AS(SpectralField::from_full_spectrum(g, full), std::invalid_argument);
}

TEST_CASE("Fourier multipliers") {
  const auto g = torus(64);
  const auto cosx = to_spectral(sample(g, [](double x) { return std::cos(x); }), g);
  const std::vector<double> ones(g.half_size(), 1.0);
  CHECK(max_diff(to_physical(apply_multiplier(cosx, ones)), to_physical(cosx)) < 1e-15);

  std::vector<double> absxi(g.wavenumbers().begin(), g.wavenumbers().end());
  CHECK(max_diff(to_physical(apply_multiplier(cosx, absxi)), to_physical(cosx)) < 1e-14);

  const int n = 7;
  const auto s = to_spectral(sample(g, [&](double x) { return std::sin(n * x); }), g);
  CHECK(max_diff(to_physical(derivative(s)), sample(g, [&](double x) { return n * std::cos(n * x); })) <
        1e-12);
  std::vector<cplx> ixi(g.half_size());
  for (std::size_t j = 0; j < ixi.size(); ++j) ixi[j] = cplx(0.0, g.wavenumbers()[j]);
  CHECK(max_diff(to_physical(apply_multiplier(s, ixi)), to_physical(derivative(s))) < 1e-12);
  CHECK(max_diff(to_physical(derivative(s, 2)), sample(g, [&](double x) { return -n * n * std::sin(n * x); })) <
        1e-10);
}

TEST_CASE("dispersion symbols") {
  CHECK(DispersionSpec::fractional(-0.5).symbol(0.0) == 0.0);
  CHECK(DispersionSpec::fractional(0.0).symbol(0.0) == 1.0);
  CHECK(DispersionSpec::fractional(2.0).symbol(-3.0) == doctest::Approx(9.0));
  CHECK(DispersionSpec::fractional(1.0, 0.25).symbol(4.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(DispersionSpec::fractional(2.5), std::invalid_argument);
  CHECK_THROWS_AS(DispersionSpec::fractional(-1.5), std::invalid_argument);

  const auto w = DispersionSpec::whitham();
  CHECK(w.symbol(0.0) == 1.0);
  CHECK(w.symbol(2.0) == doctest::Approx(std::sqrt(std::tanh(2.0) / 2.0)));
  CHECK(w.symbol(-2.0) == w.symbol(2.0));
  CHECK(w.symbol(1e-9) == doctest::Approx(1.0));

  const auto ilw = DispersionSpec::ilw(0.5);
  CHECK(ilw.symbol(0.0) == 0.0);
  CHECK(ilw.symbol(3.0) == doctest::Approx(3.0 / std::tanh(1.5) - 2.0));
  CHECK(ilw.symbol(1e-7) == doctest::Approx(0.0).epsilon(1e-6));

  const auto tab = DispersionSpec::tabulated({{0.0, 1.0}, {1.0, 3.0}, {2.0, 4.0}});
  CHECK(tab.symbol(0.5) == doctest::Approx(2.0));
  CHECK(tab.symbol(-1.5) == doctest::Approx(3.5));

  CHECK(DispersionSpec::none().symbol(5.0) == 0.0);
  CHECK(std::isnan(DispersionSpec::whitham().alpha()));
  const auto g = torus(16);
  const auto om = DispersionSpec::fractional(1.0).frequency_table(g);
  CHECK(om[3] == doctest::Approx(9.0));
}

TEST_CASE("linear semigroup") {
  const auto g = torus(64);
  auto u = to_spectral(random_samples(64, 11), g);
  u.set_mode(32, 0.0);
  const auto spec = DispersionSpec::fractional(1.0);
  CHECK(max_diff(to_physical(linear_semigroup(u, spec, 0.0)), to_physical(u)) < 1e-15);
  CHECK(max_diff(to_physical(linear_semigroup(linear_semigroup(u, spec, 0.7), spec, -0.7)), to_physical(u)) <
        1e-12);

  for (double alpha : {-1.0, -0.5, 0.0, 1.0, 2.0}) {
    const int n = 3;
    const double t = 0.37;
    const auto c = to_spectral(sample(g, [&](double x) { return std::cos(n * x); }), g);
    const auto out = linear_semigroup(c, DispersionSpec::fractional(alpha), t);
    const double w = std::pow(double(n), alpha + 1.0);
    CAPTURE(alpha);
    CHECK(max_diff(to_physical(out), sample(g, [&](double x) { return std::cos(n * x - w * t); })) < 1e-13);
  }
}

TEST_CASE("Sobolev norms") {
  const auto g = torus(64);
  CHECK(sobolev_norm(SpectralField(g), {1.0, true}) == 0.0);
  const int n = 6;
  const auto c = to_spectral(sample(g, [&](double x) { return std::cos(n * x); }), g);
  for (double s : {-2.5, 0.0, 0.5, 1.0}) {
    CHECK(sobolev_norm(c, {s, true}) == doctest::Approx(std::pow(double(n), s) / std::sqrt(2.0)));
    CHECK(sobolev_norm(c, {s, false}) == doctest::Approx(std::pow(1.0 + n * n, s / 2) / std::sqrt(2.0)));
  }

  // Parseval: the L2 norm squared is (1/2pi) int u^2 over one period.
  const PeriodicGrid h(128, 9.0, -4.5);
  const auto x = random_samples(128, 5);
  double sum = 0.0;
  for (double v : x) sum += v * v;
  const double l2 = std::sqrt(h.period() / (2.0 * pi) * sum / 128.0);
  CHECK(sobolev_norm(to_spectral(x, h), {0.0, false}) == doctest::Approx(l2).epsilon(1e-13));

  // Two-mode datum has homogeneous H^s norm ~ eps.
  for (int m : {16, 32, 64}) {
    const PeriodicGrid gg(default_num_modes(m), 2.0 * pi);
    const double norm = sobolev_norm(build_two_mode_datum(0.1, -2.5, m, gg), {-2.5, true});
    CAPTURE(m);
    CHECK(norm >= 0.09);
    CHECK(norm <= 0.11);
  }
}

TEST_CASE("conserved quantities") {
  const auto g = torus(64);
  const auto z = conserved_triplet(SpectralField(g), DispersionSpec::fractional(2.0));
  CHECK(z.mass == 0.0);
  CHECK(z.momentum == 0.0);
  CHECK(z.hamiltonian == 0.0);

  const auto c = to_spectral(sample(g, [](double x) { return std::cos(x); }), g);
  const auto q = conserved_triplet(c, DispersionSpec::fractional(2.0));
  CHECK(std::abs(q.mass) < 1e-14);
  CHECK(q.momentum == doctest::Approx(pi));
  CHECK(q.hamiltonian == doctest::Approx(pi / 2));

  // Random trigonometric polynomial against quadrature of the analytic
  // integrands on a much finer grid (exact for these degrees).
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  TrigPoly p;
  p.mean = 0.3;
  for (int k = 0; k < 12; ++k) {
    p.a.push_back(d(rng) / (k + 1));
    p.b.push_back(d(rng) / (k + 1));
  }
  for (double alpha : {1.0, 2.0, 0.5}) {
    const auto u = to_spectral(sample(g, p), g);
    const auto got = conserved_triplet(u, DispersionSpec::fractional(alpha));
    const std::size_t M = 512;
    double mass = 0.0, mom = 0.0, ham = 0.0;
    for (std::size_t k = 0; k < M; ++k) {
      const double x = 2.0 * pi * k / M;
      const double v = p(x);
      mass += v;
      mom += v * v;
      ham += 0.5 * v * (alpha == 0.0 ? v : p.frac(x, alpha)) + v * v * v / 6.0;
    }
    const double dx = 2.0 * pi / M;
    CAPTURE(alpha);
    CHECK(got.mass == doctest::Approx(mass * dx).epsilon(1e-12));
    CHECK(got.momentum == doctest::Approx(mom * dx).epsilon(1e-12));
    CHECK(got.hamiltonian == doctest::Approx(ham * dx).epsilon(1e-12));
  }
}

TEST_CASE("two-thirds dealiasing") {
  const auto g = torus(48);
  SpectralField low(g), high(g);
  for (long j = 1; j <= 16; ++j) low.set_mode(j, cplx(1.0 / j, 0.5));
  for (long j = 17; j < 24; ++j) high.set_mode(j, cplx(1.0, -1.0));
  high.set_mode(24, 1.0);
  const auto l = dealias_two_thirds(low);
  for (long j = 0; j <= 24; ++j) CHECK(l.coefficient(j) == low.coefficient(j));
  const auto h = dealias_two_thirds(high);
  for (long j = 0; j <= 24; ++j) CHECK(h.coefficient(j) == cplx(0.0, 0.0));
  CHECK(dealias_cutoff(48) == 16);
}

TEST_CASE("least squares fits") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y;
  for (double v : x) y.push_back(-0.25 * v + 3.0);
  const auto f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(-0.25));
  CHECK(f.intercept == doctest::Approx(3.0));
  CHECK(f.residual < 1e-14);
  CHECK_THROWS_AS(fit_line(std::vector<double>{1, 1}, std::vector<double>{0, 1}), std::invalid_argument);

  const std::vector<double> a{0, 1, 0, 1, 2}, b{0, 0, 1, 1, 3};
  std::vector<double> z;
  for (std::size_t i = 0; i < a.size(); ++i) z.push_back(2.0 * a[i] - 0.5 * b[i] + 1.0);
  const auto pf = fit_plane(a, b, z);
  CHECK(pf.coef_a == doctest::Approx(2.0));
  CHECK(pf.coef_b == doctest::Approx(-0.5));
  CHECK(pf.intercept == doctest::Approx(1.0));
}

TEST_CASE("Gauss-Legendre quadrature") {
  for (int n : {1, 2, 5, 16, 40}) {
    const auto q = gauss_legendre(n);
    // Exact for x^k, k < 2n.
    for (int k = 0; k < 2 * n; k += 3) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += q.weights[i] * std::pow(q.nodes[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      CAPTURE(n);
      CAPTURE(k);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
  }
  const auto c = composite_gauss_legendre(0.0, pi, 8, 4);
  double s = 0.0;
  for (std::size_t i = 0; i < c.nodes.size(); ++i) s += c.weights[i] * std::sin(c.nodes[i]);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
}
