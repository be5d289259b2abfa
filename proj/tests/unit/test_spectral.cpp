#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "kdvbbm/errors.hpp"
#include "kdvbbm/random_fields.hpp"
#include "kdvbbm/spectral.hpp"

using namespace kdvbbm;
using testing::pi;

TEST_SUITE("spectral") {
  TEST_CASE("grid layout") {
    const PeriodicGrid g(2.0 * pi, 8);
    CHECK(g.wavenumber(0) == 0);
    CHECK(g.wavenumber(3) == 3);
    CHECK(g.wavenumber(4) == -4);
    CHECK(g.wavenumber(7) == -1);
    CHECK(g.index_of(-1) == 7);
    CHECK(g.is_nyquist(4));
    CHECK(g.x(0) == doctest::Approx(-pi));
    CHECK(g.max_frequency() == doctest::Approx(4.0));
    CHECK_THROWS_AS(PeriodicGrid(1.0, 12), InvalidParameter);
    CHECK_THROWS_AS(PeriodicGrid(1.0, 2), InvalidParameter);
    CHECK_THROWS_AS(PeriodicGrid(-1.0, 8), InvalidParameter);
    CHECK_THROWS_AS(Field(g, std::vector<double>(7)), ShapeError);
  }

  TEST_CASE("transform matches the direct sum") {
    const PeriodicGrid g(10.0, 32);
    std::vector<double> f(32);
    for (std::size_t j = 0; j < 32; ++j) f[j] = std::sin(0.3 * j) + 0.25 * std::cos(1.7 * j * j);
    const Spectrum fast = transform(Field(g, f));
    const auto slow = testing::direct_dft(g, f);
    for (std::size_t k = 0; k < 32; ++k) CHECK(std::abs(fast.coeffs[k] - slow[k]) < 1e-14);
  }

  TEST_CASE("single exponential maps to one coefficient") {
    const PeriodicGrid g(7.0, 64);
    const long m = 5;
    std::vector<double> f(64);
    for (std::size_t j = 0; j < 64; ++j) f[j] = std::cos(g.frequency(g.index_of(m)) * g.x(j));
    const Spectrum s = transform(Field(g, f));
    CHECK(std::abs(s.coeffs[g.index_of(m)] - complex(0.5, 0.0)) < 1e-14);
    CHECK(std::abs(s.coeffs[g.index_of(-m)] - complex(0.5, 0.0)) < 1e-14);
    CHECK(hermitian_defect(s) < 1e-15);
  }

  TEST_CASE("round trip and Parseval") {
    const PeriodicGrid g(20.0, 128);
    const Field f = inverse(random_gaussian_spectrum(g, 1.0, g.max_frequency(), 3));
    const Field back = inverse(transform(f));
    double l2 = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      CHECK(back.samples[j] == doctest::Approx(f.samples[j]).epsilon(1e-12));
      l2 += f.samples[j] * f.samples[j] * g.spacing();
    }
    CHECK(sobolev_norm(f, SobolevIndex(0.0)) == doctest::Approx(std::sqrt(l2)).epsilon(1e-12));
  }

  TEST_CASE("sobolev norm of one mode") {
    const PeriodicGrid g(2.0 * pi, 32);
    const Spectrum s = testing::cosine_mode(g, 3, 2.0);
    for (double sv : {0.0, 0.5, 1.0, 2.0}) {
      const double expect = std::sqrt(2.0 * pi * 2.0 * std::pow(1.0 + 9.0, sv));
      CHECK(sobolev_norm(s, SobolevIndex(sv)) == doctest::Approx(expect).epsilon(1e-14));
    }
    CHECK_THROWS_AS(SobolevIndex(NAN), InvalidParameter);
  }

  TEST_CASE("energy matches physical quadrature of the integrand") {
    const PeriodicGrid g(12.0, 64);
    const ModelParams p = make_params(0.2, 0.07);
    const Spectrum s = random_gaussian_spectrum(g, 2.0, 8.0, 5);
    // Trapezoid sum on a finer grid of the exact polynomial and its derivatives.
    const int m = 512;
    double integral = 0.0;
    for (int j = 0; j < m; ++j) {
      const double x = -6.0 + 12.0 * j / m;
      const double e = testing::evaluate(s, x);
      const double ex = testing::evaluate(s, x, 1);
      const double exx = testing::evaluate(s, x, 2);
      integral += (e * e + 0.2 * ex * ex + 0.07 * exx * exx) * 12.0 / m;
    }
    CHECK(energy(s, p) == doctest::Approx(0.5 * integral).epsilon(1e-12));
    CHECK(energy(inverse(s), p) == doctest::Approx(energy(s, p)).epsilon(1e-12));
  }

  TEST_CASE("multiplier and derivative") {
    const PeriodicGrid g(9.0, 32);
    const Spectrum s = random_gaussian_spectrum(g, 0.0, g.max_frequency(), 8);
    const Spectrum d = derivative(s, 1);
    const Spectrum m = apply_multiplier(s, [](double xi) { return complex(0.0, xi); });
    CHECK(testing::max_abs_diff(d, m) < 1e-15);
    const Spectrum d2 = derivative(s, 2);
    const Spectrum dd = derivative(derivative(s, 1), 1);
    CHECK(testing::max_abs_diff(d2, dd) < 1e-12);
    Spectrum with_nyquist = s;
    with_nyquist.coeffs[16] = 1.0;
    CHECK(derivative(with_nyquist, 1).coeffs[16] == complex{});
    CHECK(derivative(with_nyquist, 2).coeffs[16] != complex{});
  }

  TEST_CASE("resample keeps shared modes") {
    const PeriodicGrid g(5.0, 16);
    const Spectrum s = random_gaussian_spectrum(g, 0.0, g.max_frequency(), 2);
    const Spectrum up = resample(s, 64);
    CHECK(up.grid.size() == 64);
    for (long k = -7; k <= 7; ++k) {
      CHECK(up.coeffs[up.grid.index_of(k)] == s.coeffs[g.index_of(k)]);
    }
    const Spectrum down = resample(up, 8);
    for (long k = -3; k <= 3; ++k) CHECK(down.coeffs[down.grid.index_of(k)] == s.coeffs[g.index_of(k)]);
    CHECK(down.coeffs[4] == complex{});
  }

  TEST_CASE("low pass and arithmetic") {
    const PeriodicGrid g(2.0 * pi, 16);
    Spectrum s = testing::cosine_mode(g, 2) + testing::cosine_mode(g, 5);
    const Spectrum low = low_pass(s, 3.0);
    CHECK(low.coeffs[g.index_of(2)] == complex(0.5));
    CHECK(low.coeffs[g.index_of(5)] == complex{});
    Spectrum t = 2.0 * s - s;
    CHECK(testing::max_abs_diff(t, s) == 0.0);
    CHECK_THROWS_AS(s += Spectrum(PeriodicGrid(2.0 * pi, 32)), ShapeError);
    CHECK(sobolev_inner(s, s, SobolevIndex(1.0)) ==
          doctest::Approx(std::pow(sobolev_norm(s, SobolevIndex(1.0)), 2)).epsilon(1e-14));
  }
}
