#include "kdvbbm/illposedness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include "kdvbbm/errors.hpp"
#include "kdvbbm/optimize.hpp"
#include "kdvbbm/quadrature.hpp"

namespace kdvbbm {

void BandData::validate() const {
  if (!(std::isfinite(N) && N > 0.0) || !(std::isfinite(alpha) && alpha > 0.0)) {
    throw InvalidParameter("band datum needs N > 0 and alpha > 0");
  }
}

double BandData::height() const noexcept { return 1.0 / (N * std::sqrt(alpha)); }

namespace {

bool in_band(const BandData& band, double xi) {
  const double a = std::abs(xi);
  return a >= band.lower() && a <= band.upper();
}

std::size_t modes_in_band(const PeriodicGrid& grid, const BandData& band) {
  std::size_t count = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double xi = grid.frequency(k);
    if (xi > 0.0 && in_band(band, xi)) ++count;
  }
  return count;
}

}  // namespace

Spectrum make_eta_N_spectrum(const PeriodicGrid& grid, const BandData& band) {
  band.validate();
  if (band.upper() >= grid.max_frequency()) {
    std::ostringstream os;
    os << "band upper edge " << band.upper() << " not below the Nyquist frequency "
       << grid.max_frequency();
    throw ResolutionError(os.str());
  }
  if (modes_in_band(grid, band) < 8) {
    std::ostringstream os;
    os << "band [" << band.lower() << ", " << band.upper() << "] holds fewer than "
       << "8 modes at frequency spacing " << grid.frequency_spacing();
    throw ResolutionError(os.str());
  }
  const double value =
      std::sqrt(2.0 * std::numbers::pi) / grid.length() * band.height();
  const double dxi = grid.frequency_spacing();
  Spectrum out(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    // Cell average of the profile over [|xi_k| - dxi/2, |xi_k| + dxi/2].
    const double a = std::abs(grid.frequency(k));
    const double overlap = std::min(a + 0.5 * dxi, band.upper()) -
                           std::max(a - 0.5 * dxi, band.lower());
    if (overlap > 0.0) out.coeffs[k] = value * std::min(1.0, overlap / dxi);
  }
  return out;
}

Field make_eta_N(const PeriodicGrid& grid, double N, double alpha) {
  return inverse(make_eta_N_spectrum(grid, BandData{N, alpha}));
}

PeriodicGrid grid_for_band(const BandData& band, double length) {
  band.validate();
  const double needed = 2.0 * band.upper();
  std::size_t n = 4;
  while (std::numbers::pi * static_cast<double>(n) / length <=
         needed + 2.0 * std::numbers::pi / length) {
    n *= 2;
    if (n > (std::size_t{1} << 26)) throw ResolutionError("band needs an excessive grid");
  }
  PeriodicGrid grid(length, n);
  if (modes_in_band(grid, band) < 8) {
    std::ostringstream os;
    os << "domain length " << length << " resolves fewer than 8 modes in a band of "
       << "width " << 2.0 * band.alpha;
    throw ResolutionError(os.str());
  }
  return grid;
}

double theta(const ModelParams& params, double xi, double xi1) {
  return symbol_phi(params, xi) - symbol_phi(params, xi - xi1) -
         symbol_phi(params, xi1);
}

double kernel_g(const ModelParams& params, double xi, double xi1) {
  return 3.0 - 4.0 * params.gamma() * xi * xi +
         kKernelCrossTermSign * (7.0 / 12.0) * xi1 * (xi - xi1);
}

std::complex<double> time_factor(double theta_value, double t) {
  // t exp(i x / 2) sinc(x / 2), free of cancellation for small x = t theta.
  const double y = 0.5 * t * theta_value;
  const double sinc = std::abs(y) < 1e-4 ? 1.0 - y * y / 6.0 : std::sin(y) / y;
  return t * sinc * std::polar(1.0, y);
}

double resonance_constant(const ModelParams& params) {
  const auto slope = [&params](double xi) {
    return std::abs(symbol_phi_derivative(params, xi));
  };
  const double limit = std::abs(params.delta2() / params.delta1());
  return 2.0 * supremum_on_halfline(slope, limit).value;
}

double alpha_for_time(const ModelParams& params, double t) {
  if (!(t > 0.0)) throw InvalidParameter("alpha_for_time needs t > 0");
  return std::numbers::pi / (4.0 * resonance_constant(params) * t);
}

namespace {

struct Interval {
  double lo;
  double hi;
};

// The four (xi1 band, xi - xi1 band) pairings; K is the union of the two
// mixed-sign ones.
std::array<Interval, 4> pair_intervals(const BandData& band, double xi) {
  const Interval plus{band.lower(), band.upper()};
  const Interval minus{-band.upper(), -band.lower()};
  const std::array<std::pair<Interval, Interval>, 4> pairs{
      std::pair{plus, plus}, std::pair{plus, minus}, std::pair{minus, plus},
      std::pair{minus, minus}};
  std::array<Interval, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& [first, second] = pairs[i];
    out[i] = {std::max(first.lo, xi - second.hi), std::min(first.hi, xi - second.lo)};
  }
  return out;
}

const GaussRule& rule16() {
  static const GaussRule rule = gauss_legendre(16);
  return rule;
}

}  // namespace

double resonance_set_measure(const BandData& band, double xi) {
  const auto parts = pair_intervals(band, xi);
  double total = 0.0;
  for (std::size_t i : {std::size_t{1}, std::size_t{2}}) {
    total += std::max(0.0, parts[i].hi - parts[i].lo);
  }
  return total;
}

std::complex<double> second_iterate_density(const ModelParams& params,
                                            const BandData& band, double t,
                                            double xi, int inner_panels) {
  const auto parts = pair_intervals(band, xi);
  std::complex<double> inner{};
  for (const auto& part : parts) {
    if (!(part.hi > part.lo)) continue;
    inner += integrate_panels(
        [&](double xi1) {
          return kernel_g(params, xi, xi1) * time_factor(theta(params, xi, xi1), t);
        },
        part.lo, part.hi, inner_panels, rule16());
  }
  const double h = band.height();
  const double prefactor = h * h / std::sqrt(2.0 * std::numbers::pi) * xi /
                           (4.0 * symbol_varphi(params, xi));
  return prefactor * inner;
}

SecondIterateNorm second_iterate_quadrature(const ModelParams& params,
                                            const BandData& band, double t,
                                            double s, double rel_tol) {
  band.validate();
  if (!(t > 0.0)) throw InvalidParameter("second iterate needs t > 0");

  // Output support is the sum set of the bands; the inner integral is smooth
  // between the breakpoints.
  std::vector<double> breaks;
  for (double a : {band.lower(), -band.upper()}) {
    for (double b : {band.lower(), -band.upper()}) {
      const double w = 2.0 * band.alpha;
      breaks.insert(breaks.end(), {a + b, a + b + w, a + b + 2.0 * w});
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-14; }),
               breaks.end());

  const auto squared_norm = [&](double lo, double hi, int outer, int inner) {
    return integrate_panels(
        [&](double xi) {
          const double w = std::pow(1.0 + xi * xi, s);
          return w * std::norm(second_iterate_density(params, band, t, xi, inner));
        },
        lo, hi, outer, rule16());
  };
  const auto total_squared = [&](int outer, int inner) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
      const auto parts = pair_intervals(band, mid);
      const bool supported = std::any_of(parts.begin(), parts.end(), [](const Interval& p) {
        return p.hi > p.lo;
      });
      if (supported) total += squared_norm(breaks[i], breaks[i + 1], outer, inner);
    }
    return total;
  };

  SecondIterateNorm result;
  double previous = total_squared(1, 1);
  for (int level = 1; level <= 8; ++level) {
    const int panels = 1 << level;
    const double current = total_squared(panels, panels);
    const double change =
        std::abs(std::sqrt(current) - std::sqrt(previous)) /
        std::max(std::sqrt(current), std::numeric_limits<double>::min());
    previous = current;
    if (change < rel_tol) {
      result.norm = std::sqrt(current);
      result.outer_panels = panels;
      result.inner_panels = panels;
      result.last_relative_change = change;
      const double core = squared_norm(-0.5 * band.alpha, 0.0, panels, panels) +
                          squared_norm(0.0, 0.5 * band.alpha, panels, panels);
      result.core_norm = std::sqrt(core);
      return result;
    }
  }
  std::ostringstream os;
  os << "second-iterate quadrature did not reach relative tolerance " << rel_tol;
  throw AccuracyError(os.str());
}

double picard_second_quadrature(const ModelParams& params, double N, double alpha,
                                double t, double s) {
  return second_iterate_quadrature(params, BandData{N, alpha}, t, s).norm;
}

ExtractionResult picard_second_extraction(const Spectrum& data, double t,
                                          double epsilon, double dt,
                                          const ModelParams& params,
                                          bool richardson, Dealias dealias,
                                          NonlinearTerms terms) {
  if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be > 0");
  if (!(t > 0.0) || !(dt > 0.0)) throw InvalidParameter("need t > 0 and dt > 0");
  EvolutionConfig cfg;
  const double steps = std::max(2.0, std::ceil(t / dt - 1e-9));
  cfg.dt = t / steps;
  cfg.t_end = t;
  cfg.dealias = dealias;
  cfg.record_every = static_cast<std::size_t>(steps);

  const Spectrum clean = without_nyquist(data);
  const Spectrum linear = semigroup(clean, t, params);
  const auto quotient = [&](double eps, Spectrum* solution) {
    TrajectoryLedger run = evolve(eps * clean, cfg, params, terms);
    Spectrum eta = std::move(*run.final_state);
    if (solution != nullptr) *solution = eta;
    Spectrum q = eta - eps * linear;
    q *= 1.0 / (eps * eps);
    return q;
  };

  Spectrum solution(data.grid);
  Spectrum single = quotient(epsilon, &solution);
  Spectrum coefficient = single;
  if (richardson) {
    Spectrum half = quotient(0.5 * epsilon, nullptr);
    coefficient = 2.0 * half - single;
  }
  return {std::move(coefficient), std::move(single), std::move(solution)};
}

Field picard_second_extraction(const Field& data, double t, double epsilon,
                               const EvolutionConfig& cfg,
                               const ModelParams& params) {
  return inverse(picard_second_extraction(transform(data), t, epsilon, cfg.dt,
                                          params, true, cfg.dealias)
                     .coefficient);
}

namespace {

SweepRow run_row(const ModelParams& params, const SweepConfig& config, double N,
                 double alpha) {
  SweepRow row;
  row.N = N;
  row.alpha = alpha;
  row.t = config.t;
  row.s = config.s;
  row.i2_extraction = std::numeric_limits<double>::quiet_NaN();
  row.solution_norm = std::numeric_limits<double>::quiet_NaN();
  try {
    const BandData band{N, alpha};
    const PeriodicGrid grid = grid_for_band(band, config.length);
    row.grid_size = grid.size();
    const Spectrum data = make_eta_N_spectrum(grid, band);
    const SobolevIndex s(config.s);
    row.data_norm = sobolev_norm(data, s);
    row.i2_quadrature = second_iterate_quadrature(params, band, config.t, config.s).norm;
    if (config.run_extraction) {
      const ExtractionResult ex = picard_second_extraction(
          data, config.t, config.epsilon, config.dt, params, config.richardson);
      row.i2_extraction = sobolev_norm(ex.coefficient, s);
      row.solution_norm = sobolev_norm(ex.solution, s);
    }
  } catch (const std::exception& e) {
    row.error = e.what();
    row.verdict = "error";
  }
  return row;
}

}  // namespace

std::vector<SweepRow> illposedness_sweep(const ModelParams& params,
                                         const SweepConfig& config) {
  if (config.cutoffs.empty()) throw InvalidParameter("sweep needs at least one N");
  if (!(config.t > 0.0)) throw InvalidParameter("sweep needs t > 0");
  const double alpha = config.alpha > 0.0 ? config.alpha : alpha_for_time(params, config.t);

  std::vector<SweepRow> rows(config.cutoffs.size());
  const unsigned workers = std::max(1U, config.workers);
  for (std::size_t start = 0; start < rows.size(); start += workers) {
    std::vector<std::future<SweepRow>> jobs;
    const std::size_t stop = std::min(rows.size(), start + workers);
    for (std::size_t i = start; i < stop; ++i) {
      jobs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                run_row, std::cref(params), std::cref(config),
                                config.cutoffs[i], alpha));
    }
    for (std::size_t i = start; i < stop; ++i) rows[i] = jobs[i - start].get();
  }

  const SweepRow& first = rows.front();
  for (auto& row : rows) {
    if (!row.error.empty()) continue;
    if (config.s >= 1.0) {
      row.verdict = "control";
      continue;
    }
    const bool data_decays = &row == &first || row.data_norm < first.data_norm;
    const double reference =
        config.run_extraction ? first.solution_norm : first.i2_quadrature;
    const double value = config.run_extraction ? row.solution_norm : row.i2_quadrature;
    const bool floored = first.error.empty() && value >= config.floor_fraction * reference;
    row.verdict = data_decays && floored ? "discontinuity" : "no-signal";
  }
  return rows;
}

}  // namespace kdvbbm
