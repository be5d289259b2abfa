#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "kdvbbm/errors.hpp"
#include "kdvbbm/estimates.hpp"
#include "kdvbbm/random_fields.hpp"
#include "kdvbbm/spectral.hpp"

using namespace kdvbbm;
using testing::pi;

namespace {

// Exact product of band-limited spectra on a grid four times finer.
Spectrum product(const std::vector<Spectrum>& factors) {
  const std::size_t m = 4 * factors.front().grid.size();
  std::vector<double> values(m, 1.0);
  for (const auto& f : factors) {
    const Field x = inverse(resample(f, m));
    for (std::size_t j = 0; j < m; ++j) values[j] *= x.samples[j];
  }
  return transform(Field(factors.front().grid.resized(m), values));
}

double ratio(Estimate id, double s, const std::vector<Spectrum>& in) {
  return estimate_ratio(id, s, in, default_params());
}

}  // namespace

TEST_SUITE("estimates") {
  TEST_CASE("names and thresholds") {
    CHECK(all_estimates().size() == 7);
    for (Estimate id : all_estimates()) CHECK(estimate_from_string(to_string(id)) == id);
    CHECK_THROWS_AS(estimate_from_string("omega"), InvalidParameter);
    CHECK(threshold(Estimate::psi_trilinear) == doctest::Approx(1.0 / 6.0));
    CHECK(threshold(Estimate::psi_derivative_product) == 1.0);
    CHECK(threshold(Estimate::tau_bilinear) == 0.0);
    CHECK(arity(Estimate::psi_trilinear) == 3);
  }

  TEST_CASE("single mode ratios in closed form") {
    const ModelParams p = default_params();
    const PeriodicGrid g(2.0 * pi, 64);
    const double xi = 5.0;
    const Spectrum u = testing::cosine_mode(g, 5);
    const double L = g.length();
    for (double s : {0.0, 0.5, 1.0, 2.0}) {
      const double norm2 = 0.5 * L * std::pow(1.0 + xi * xi, s);
      const double w2 = std::pow(1.0 + 4.0 * xi * xi, s);
      const auto cosine_ratio = [&](double a) { return std::sqrt(0.5 * L * a * a * w2) / norm2; };
      CHECK(ratio(Estimate::omega_bilinear, s, {u, u}) ==
            doctest::Approx(cosine_ratio(0.5 * symbol_omega(2.0 * xi))).epsilon(1e-10));
      CHECK(ratio(Estimate::tau_bilinear, s, {u, u}) ==
            doctest::Approx(cosine_ratio(0.5 * std::abs(symbol_tau(p, 2.0 * xi)))).epsilon(1e-10));
      CHECK(ratio(Estimate::tau_bilinear_dx, s, {u, u}) ==
            doctest::Approx(cosine_ratio(xi * std::abs(symbol_tau(p, 2.0 * xi)))).epsilon(1e-10));
      CHECK(ratio(Estimate::psi_derivative_product, s, {u, u}) ==
            doctest::Approx(cosine_ratio(0.5 * xi * xi * symbol_psi(p, 2.0 * xi))).epsilon(1e-10));
      CHECK(ratio(Estimate::psi_derivative_product_dx, s, {u, u}) ==
            doctest::Approx(cosine_ratio(xi * xi * xi * symbol_psi(p, 2.0 * xi))).epsilon(1e-10));
      // cos^3 = 3/4 cos + 1/4 cos 3
      const double a1 = 0.75 * symbol_psi(p, xi);
      const double a3 = 0.25 * symbol_psi(p, 3.0 * xi);
      const double cubic = std::sqrt(0.5 * L * (a1 * a1 * std::pow(1.0 + xi * xi, s) +
                                                a3 * a3 * std::pow(1.0 + 9.0 * xi * xi, s))) /
                           std::pow(norm2, 1.5);
      CHECK(ratio(Estimate::psi_trilinear, s, {u, u, u}) == doctest::Approx(cubic).epsilon(1e-10));
    }
  }

  TEST_CASE("ratios are scale free") {
    const PeriodicGrid g(16.0 * pi, 256);
    const Spectrum u = random_gaussian_spectrum(g, 2.0, g.max_frequency(), 1);
    const Spectrum v = random_gaussian_spectrum(g, 2.0, g.max_frequency(), 2);
    const Spectrum w = random_gaussian_spectrum(g, 2.0, g.max_frequency(), 3);
    for (Estimate id : all_estimates()) {
      std::vector<Spectrum> in{u, v, w};
      in.erase(in.begin() + arity(id), in.end());
      std::vector<Spectrum> scaled = in;
      scaled[0] *= 37.0;
      scaled.back() *= 1e-3;
      CHECK(ratio(id, 1.0, scaled) == doctest::Approx(ratio(id, 1.0, in)).epsilon(1e-12));
    }
  }

  TEST_CASE("input validation") {
    const PeriodicGrid g(10.0, 32);
    const Spectrum u = testing::cosine_mode(g, 2);
    CHECK_THROWS_AS(ratio(Estimate::omega_bilinear, 1.0, {u}), ShapeError);
    CHECK_THROWS_AS(ratio(Estimate::omega_bilinear, 1.0, {u, Spectrum(g)}), InvalidParameter);
    CHECK_THROWS_AS(ratio(Estimate::omega_bilinear, 1.0, {u, testing::cosine_mode(PeriodicGrid(10.0, 64), 2)}),
                    ShapeError);
  }

  TEST_CASE("threshold enforcement and override") {
    ProbeOptions o;
    o.ensemble = 4;
    o.ladder = {64, 128};
    const ModelParams p = default_params();
    CHECK_THROWS_AS(probe_derivative_product_psi(0.9, p, o), DomainError);
    CHECK_THROWS_AS(probe_trilinear_psi(0.1, p, o), DomainError);
    CHECK_THROWS_AS(probe_bilinear_tau(-0.1, p, o), DomainError);
    o.allow_out_of_theorem = true;
    const ProbeReport r = probe_derivative_product_psi(0.9, p, o);
    CHECK(r.out_of_theorem);
    CHECK(r.max_ratio.size() == 2);
    CHECK_FALSE(probe_bilinear_omega(0.9, p, o).out_of_theorem);
  }

  TEST_CASE("bounded probes at s = 1") {
    ProbeOptions o;
    o.ensemble = 40;
    o.ladder = {256, 512, 1024};
    for (Estimate id : all_estimates()) {
      const ProbeReport r = probe_estimate(id, 1.0, default_params(), o);
      CHECK(r.bounded);
      for (double x : r.max_ratio) {
        CHECK(std::isfinite(x));
        CHECK(x > 0.0);
      }
    }
  }

  TEST_CASE("maxima grow with the ensemble and are reproducible") {
    ProbeOptions small, large;
    small.ensemble = 10;
    large.ensemble = 25;
    small.ladder = large.ladder = {128, 256};
    const ProbeReport a = probe_bilinear_tau(1.0, default_params(), small);
    const ProbeReport b = probe_bilinear_tau(1.0, default_params(), large);
    const ProbeReport c = probe_bilinear_tau(1.0, default_params(), large);
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(a.max_ratio[j] <= b.max_ratio[j]);
      CHECK(b.max_ratio[j] == c.max_ratio[j]);
    }
    large.workers = 3;
    const ProbeReport d = probe_bilinear_tau(1.0, default_params(), large);
    CHECK(d.max_ratio == b.max_ratio);
  }

  TEST_CASE("symbol suprema") {
    const ModelParams p = default_params();
    const SymbolBounds b = probe_symbol_bounds(p);
    // |xi psi| peaks at xi^2 = delta1^{-1/2}.
    const double x2 = 1.0 / std::sqrt(p.delta1());
    const double xi_psi = x2 / symbol_varphi(p, std::sqrt(x2));
    CHECK(b.xi_psi.maximum.value == doctest::Approx(xi_psi).epsilon(1e-12));
    CHECK(b.xi_psi.maximum.value == doctest::Approx(1.5137).epsilon(1e-4));
    CHECK(b.xi_psi.maximum.argmax == doctest::Approx(std::sqrt(x2)).epsilon(1e-7));
    CHECK(std::abs(b.xi_tau.maximum.value - 7.0 / 4.0) < 1e-8);
    CHECK(b.xi_tau.limit == doctest::Approx(7.0 / 4.0).epsilon(1e-15));
    // <xi> xi^2/(varphi omega) = xi (1 + xi^2)^{3/2} / varphi; root of the log-derivative.
    const auto dlog = [&](double xi) {
      return 1.0 / xi + 3.0 * xi / (1.0 + xi * xi) -
             (2.0 * p.gamma1() * xi + 4.0 * p.delta1() * xi * xi * xi) / symbol_varphi(p, xi);
    };
    double lo = 2.0, hi = 20.0;
    REQUIRE(dlog(lo) > 0.0);
    REQUIRE(dlog(hi) < 0.0);
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (dlog(mid) > 0.0 ? lo : hi) = mid;
    }
    const double root = 0.5 * (lo + hi);
    const double oracle = root * std::pow(1.0 + root * root, 1.5) / symbol_varphi(p, root);
    CHECK(b.weighted_psi.maximum.value == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(b.weighted_psi.maximum.value > b.weighted_psi.limit);
    CHECK(b.weighted_psi.limit == doctest::Approx(12.0).epsilon(1e-15));
  }

  TEST_CASE("suprema are stable under denser sampling") {
    const ModelParams p = make_params(0.2, 0.05);
    const SymbolBounds a = probe_symbol_bounds(p, 1 << 15);
    const SymbolBounds b = probe_symbol_bounds(p, 1 << 16);
    CHECK(std::abs(a.xi_tau.maximum.value - b.xi_tau.maximum.value) < 1e-8);
    CHECK(std::abs(a.xi_psi.maximum.value - b.xi_psi.maximum.value) < 1e-8);
    CHECK(std::abs(a.weighted_psi.maximum.value - b.weighted_psi.maximum.value) < 1e-8);
  }

  TEST_CASE("symbol suprema bound the output multipliers") {
    const ModelParams p = default_params();
    const SymbolBounds b = probe_symbol_bounds(p);
    const PeriodicGrid g(16.0 * pi, 256);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Spectrum u = random_gaussian_spectrum(g, 1.0, g.max_frequency(), seed);
      const Spectrum v = random_gaussian_spectrum(g, 1.0, g.max_frequency(), seed + 10);
      const Spectrum w = random_gaussian_spectrum(g, 1.0, g.max_frequency(), seed + 20);
      const SobolevIndex l2(0.0), h1(1.0);
      const double uv = sobolev_norm(product({u, v}), l2);
      CHECK(ratio(Estimate::tau_bilinear_dx, 0.0, {u, v}) * sobolev_norm(u, l2) * sobolev_norm(v, l2) <=
            b.xi_tau.maximum.value * uv * (1.0 + 1e-12));
      const double uvw = sobolev_norm(product({u, v, w}), l2);
      CHECK(ratio(Estimate::psi_trilinear_dx, 0.0, {u, v, w}) * sobolev_norm(u, l2) * sobolev_norm(v, l2) *
                sobolev_norm(w, l2) <=
            b.xi_psi.maximum.value * uvw * (1.0 + 1e-12));
      const Spectrum grad = product({derivative(u), derivative(v)});
      const double omega_grad =
          sobolev_norm(apply_multiplier(grad, [](double xi) { return symbol_omega(xi); }), l2);
      CHECK(ratio(Estimate::psi_derivative_product_dx, 1.0, {u, v}) * sobolev_norm(u, h1) * sobolev_norm(v, h1) <=
            b.weighted_psi.maximum.value * omega_grad * (1.0 + 1e-12));
    }
  }
}
