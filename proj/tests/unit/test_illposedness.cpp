#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "kdvbbm/errors.hpp"
#include "kdvbbm/illposedness.hpp"
#include "kdvbbm/quadrature.hpp"

using namespace kdvbbm;
using testing::pi;

namespace {

// Continuum |eta_N|_{H^s}^2 = 2 int_{I_N} N^{-2} alpha^{-1} (1 + xi^2)^s dxi.
double continuum_data_norm(double N, double alpha, double s) {
  const GaussRule rule = gauss_legendre(16);
  const double integral = integrate_panels(
      [s](double xi) { return std::pow(1.0 + xi * xi, s); }, N, N + 2.0 * alpha, 4, rule);
  return std::sqrt(2.0 * integral / (N * N * alpha));
}

}  // namespace

TEST_SUITE("illposedness") {
  TEST_CASE("kernel follows from the gradient-square convolution") {
    // -7/48 psi(xi) (i xi1)(i (xi - xi1)) written with the common factor
    // xi / (4 varphi): the cross term is +7/12 xi1 (xi - xi1).
    const ModelParams p = default_params();
    for (double xi : {-3.0, 0.4, 7.0}) {
      for (double xi1 : {-2.0, 1.5, 20.0}) {
        const double prefactor = xi / (4.0 * symbol_varphi(p, xi));
        const double tau_part = symbol_tau(p, xi);
        const double grad_part = -7.0 / 48.0 * symbol_psi(p, xi) * (-(xi1 * (xi - xi1)));
        CHECK(prefactor * kernel_g(p, xi, xi1) == doctest::Approx(tau_part + grad_part).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("resonance function") {
    const ModelParams p = default_params();
    CHECK(theta(p, 3.0, 1.0) ==
          doctest::Approx(symbol_phi(p, 3.0) - symbol_phi(p, 2.0) - symbol_phi(p, 1.0)).epsilon(1e-15));
    CHECK(theta(p, 0.0, 5.0) == doctest::Approx(0.0).epsilon(1e-15));
  }

  TEST_CASE("time factor") {
    CHECK(std::abs(time_factor(0.0, 0.5) - 0.5) < 1e-15);
    for (double th : {1e-9, 1e-7, 3e-6, 1e-3, 2.0}) {
      // (exp(i t th) - 1) / (i th) = t exp(i t th / 2) sinc(t th / 2)
      const std::complex<double> exact =
          0.5 * std::exp(std::complex<double>(0.0, th * 0.25)) * (std::sin(th * 0.25) / (th * 0.25));
      CHECK(std::abs(time_factor(th, 0.5) - exact) < 1e-14);
    }
  }

  TEST_CASE("resonance constant") {
    const ModelParams p = default_params();
    double best = p.delta2() / p.delta1();
    for (int i = 0; i <= 2000000; ++i) best = std::max(best, std::abs(symbol_phi_derivative(p, 1e-5 * i)));
    CHECK(resonance_constant(p) == doctest::Approx(2.0 * best).epsilon(1e-9));
    CHECK(alpha_for_time(p, 0.5) == doctest::Approx(pi / (4.0 * resonance_constant(p) * 0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(alpha_for_time(p, 0.0), InvalidParameter);
  }

  TEST_CASE("resonance set measure") {
    const BandData band{20.0, 0.5};
    for (double xi : {0.0, 0.3, -0.7, 1.0, 1.5}) {
      CHECK(resonance_set_measure(band, xi) == doctest::Approx(2.0 * std::max(0.0, 1.0 - std::abs(xi))).epsilon(1e-14));
    }
  }

  TEST_CASE("band datum norms") {
    const double alpha = 0.5;
    // Edge cells carry fractional weight, so the discrete norm sits below the continuum one by about a
    // quarter of a cell out of the band width.
    for (double N : {16.0, 64.0}) {
      for (double length : {64.0 * pi, 256.0 * pi}) {
      const BandData band{N, alpha};
      const PeriodicGrid g = grid_for_band(band, length);
      const double cells = alpha / (2.0 * pi / length);
      CHECK(g.max_frequency() > 2.0 * band.upper());
      const Spectrum s = make_eta_N_spectrum(g, band);
      CHECK(hermitian_defect(s) == 0.0);
      for (double sv : {0.5, 1.0}) {
        CHECK(sobolev_norm(s, SobolevIndex(sv)) ==
              doctest::Approx(continuum_data_norm(N, alpha, sv)).epsilon(0.5 / cells));
      }
      }
    }
    // |eta_N|_{H^1} tends to 2.
    const BandData wide{4096.0, 0.5};
    CHECK(continuum_data_norm(wide.N, wide.alpha, 1.0) == doctest::Approx(2.0).epsilon(1e-3));
  }

  TEST_CASE("band datum errors") {
    CHECK_THROWS_AS(make_eta_N_spectrum(PeriodicGrid(2.0 * pi, 64), BandData{8.0, 0.5}), ResolutionError);
    CHECK_THROWS_AS(make_eta_N_spectrum(PeriodicGrid(64.0 * pi, 64), BandData{30.0, 0.5}), ResolutionError);
    CHECK_THROWS_AS(grid_for_band(BandData{16.0, 0.5}, 2.0 * pi), ResolutionError);
    CHECK_THROWS_AS(BandData({0.0, 1.0}).validate(), InvalidParameter);
  }

  TEST_CASE("quadrature converges and respects the output bands") {
    const ModelParams p = default_params();
    const BandData band{16.0, alpha_for_time(p, 0.5)};
    const SecondIterateNorm q = second_iterate_quadrature(p, band, 0.5, 0.5, 1e-8);
    CHECK(q.last_relative_change < 1e-8);
    CHECK(q.core_norm > 0.0);
    CHECK(q.core_norm < q.norm);
    CHECK(std::abs(second_iterate_density(p, band, 0.5, 5.0)) == 0.0);
    CHECK(std::abs(second_iterate_density(p, band, 0.5, 2.0 * band.N + band.alpha)) > 0.0);
    CHECK(picard_second_quadrature(p, band.N, band.alpha, 0.5, 0.5) ==
          doctest::Approx(second_iterate_quadrature(p, band, 0.5, 0.5).norm).epsilon(1e-6));
    CHECK_THROWS_AS(second_iterate_quadrature(p, band, 0.0, 0.5), InvalidParameter);
  }

  TEST_CASE("low output band has the phase-free lower bound") {
    // On K(xi), |Theta| t <= pi/4, so Re of the time factor is >= t cos(pi/4).
    const ModelParams p = default_params();
    const double t = 0.5;
    const BandData band{32.0, alpha_for_time(p, t)};
    const double C = resonance_constant(p);
    for (double xi : {0.1, 0.5, 0.9}) {
      const double x = xi * band.alpha;
      for (double frac : {0.1, 0.5, 0.9}) {
        const double xi1 = -band.upper() + frac * (2.0 * band.alpha - x) + x;
        CHECK(std::abs(theta(p, x, xi1)) <= C * band.alpha + 1e-12);
        CHECK(time_factor(theta(p, x, xi1), t).real() >= t * std::cos(pi / 4.0) - 1e-12);
      }
    }
  }

  TEST_CASE("extraction agrees with quadrature") {
    const ModelParams p = default_params();
    const double t = 0.5;
    const BandData band{16.0, alpha_for_time(p, t)};
    const PeriodicGrid g = grid_for_band(band, 64.0 * pi);
    const Spectrum data = make_eta_N_spectrum(g, band);
    const ExtractionResult ex = picard_second_extraction(data, t, 1e-3, 1e-3, p);
    const double quad = second_iterate_quadrature(p, band, t, 0.5).norm;
    CHECK(sobolev_norm(ex.coefficient, SobolevIndex(0.5)) == doctest::Approx(quad).epsilon(1e-3));
    // Richardson removes the O(eps) term of the single quotient.
    CHECK(std::abs(sobolev_norm(ex.coefficient, SobolevIndex(0.5)) - quad) <=
          std::abs(sobolev_norm(ex.single, SobolevIndex(0.5)) - quad) + 1e-9);
    CHECK_THROWS_AS(picard_second_extraction(data, t, 0.0, 1e-3, p), InvalidParameter);
  }

  TEST_CASE("sweep verdicts") {
    const ModelParams p = default_params();
    SweepConfig cfg;
    cfg.cutoffs = {16, 32};
    cfg.run_extraction = false;
    cfg.s = 1.0;
    for (const SweepRow& r : illposedness_sweep(p, cfg)) CHECK(r.verdict == "control");
    cfg.s = 0.5;
    const auto rows = illposedness_sweep(p, cfg);
    CHECK(rows[1].verdict == "discontinuity");
    CHECK(std::isnan(rows[1].solution_norm));
    cfg.length = 2.0 * pi;
    const auto bad = illposedness_sweep(p, cfg);
    CHECK(bad[0].verdict == "error");
    CHECK_FALSE(bad[0].error.empty());
    cfg.cutoffs.clear();
    CHECK_THROWS_AS(illposedness_sweep(p, cfg), InvalidParameter);
  }
}
