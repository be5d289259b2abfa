#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "kdvbbm/errors.hpp"
#include "kdvbbm/picard.hpp"
#include "kdvbbm/random_fields.hpp"

using namespace kdvbbm;

namespace {

Spectrum small_datum(std::uint64_t seed, double h1 = 0.5) {
  const PeriodicGrid g(16.0 * testing::pi, 128);
  return normalized(random_gaussian_spectrum(g, 3.0, g.max_frequency(), seed), SobolevIndex(1.0), h1);
}

double sup_h1_gap(const PicardResult& r, const Spectrum& eta0, const ModelParams& p) {
  EvolutionConfig cfg;
  const double T = r.ledger.times.back();
  cfg.dt = T / (4.0 * r.mesh);
  cfg.t_end = T;
  cfg.record_every = 4;
  cfg.store_snapshots = true;
  const TrajectoryLedger ref = evolve(eta0, cfg, p);
  double worst = 0.0;
  for (std::size_t i = 0; i < ref.snapshots.size(); ++i) {
    worst = std::max(worst, sobolev_norm(ref.snapshots[i] - r.ledger.snapshots[i], SobolevIndex(1.0)));
  }
  return worst;
}

}  // namespace

TEST_SUITE("picard") {
  TEST_CASE("existence time formula") {
    const Spectrum f = small_datum(1, 0.5);
    CHECK(local_existence_time(f, SobolevIndex(1.0), 0.1) == doctest::Approx(0.1 / (0.5 * 1.5)).epsilon(1e-14));
  }

  TEST_CASE("zero datum converges at once") {
    PicardOptions o;
    o.horizon = 0.5;
    const PicardResult r = picard_solve(Spectrum(PeriodicGrid(10.0, 32)), o, default_params());
    CHECK(r.iterations == 1);
    for (const auto& s : r.ledger.snapshots) CHECK(sobolev_norm(s, SobolevIndex(1.0)) == 0.0);
  }

  TEST_CASE("agrees with the time stepper") {
    const ModelParams p = default_params();
    const Spectrum f = small_datum(2);
    PicardOptions o;
    o.horizon = 0.5 * local_existence_time(f, SobolevIndex(1.0), 0.1);
    o.tol = 1e-9;
    o.existence_constant = 0.1;
    const PicardResult r = picard_solve(f, o, p);
    CHECK(r.ledger.snapshots.size() == static_cast<std::size_t>(r.mesh + 1));
    CHECK(sup_h1_gap(r, f, p) < 1e-8);
    for (double q : r.contraction_factors()) CHECK(q < 0.5);
  }

  TEST_CASE("trapezoid mesh error is second order") {
    const ModelParams p = default_params();
    const Spectrum f = small_datum(3, 2.0);
    PicardOptions o;
    o.horizon = 0.5;
    o.tol = 1e-12;
    o.refine = false;
    std::vector<double> gaps;
    for (int mesh : {4, 8, 16}) {
      o.mesh = mesh;
      gaps.push_back(sup_h1_gap(picard_solve(f, o, p), f, p));
    }
    CHECK(std::log2(gaps[0] / gaps[1]) == doctest::Approx(2.0).epsilon(0.15));
    CHECK(std::log2(gaps[1] / gaps[2]) == doctest::Approx(2.0).epsilon(0.15));
  }

  TEST_CASE("failures") {
    const ModelParams p = default_params();
    const Spectrum f = small_datum(4, 2.0);
    PicardOptions o;
    o.horizon = 0.5;
    o.max_iter = 1;
    o.tol = 1e-14;
    CHECK_THROWS_AS(picard_solve(f, o, p), ContractionFailure);
    o.max_iter = 50;
    o.tol = 1e-8;
    o.max_refinements = 0;
    CHECK_THROWS_AS(picard_solve(f, o, p), AccuracyError);
    o.existence_constant = 0.01;
    CHECK_THROWS_AS(picard_solve(f, o, p), InvalidParameter);
    o.horizon = -1.0;
    CHECK_THROWS_AS(picard_solve(f, o, p), InvalidParameter);
  }

  TEST_CASE("field overload") {
    const Spectrum f = small_datum(5);
    const PicardResult r = picard_solve(inverse(f), 0.05, 8, 1e-10, 50, default_params());
    CHECK(r.iterations >= 2);
    CHECK(r.ledger.times.back() == doctest::Approx(0.05));
  }
}
