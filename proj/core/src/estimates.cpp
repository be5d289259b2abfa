#include "kdvbbm/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "kdvbbm/errors.hpp"
#include "kdvbbm/random_fields.hpp"
#include "kdvbbm/spectral.hpp"

namespace kdvbbm {

namespace {

struct EstimateInfo {
  Estimate id;
  const char* name;
  int arity;
  double threshold;
};

constexpr EstimateInfo kInfo[] = {
    {Estimate::omega_bilinear, "omega_bilinear", 2, 0.0},
    {Estimate::tau_bilinear, "tau_bilinear", 2, 0.0},
    {Estimate::tau_bilinear_dx, "tau_bilinear_dx", 2, 1.0},
    {Estimate::psi_trilinear, "psi_trilinear", 3, 1.0 / 6.0},
    {Estimate::psi_trilinear_dx, "psi_trilinear_dx", 3, 1.0},
    {Estimate::psi_derivative_product, "psi_derivative_product", 2, 1.0},
    {Estimate::psi_derivative_product_dx, "psi_derivative_product_dx", 2, 1.0},
};

const EstimateInfo& info(Estimate id) {
  for (const auto& entry : kInfo) {
    if (entry.id == id) return entry;
  }
  throw InvalidParameter("unknown estimate id");
}

// Output symbol applied to the product.
double output_symbol(Estimate id, const ModelParams& params, double xi) {
  switch (id) {
    case Estimate::omega_bilinear:
      return symbol_omega(xi);
    case Estimate::tau_bilinear:
      return symbol_tau(params, xi);
    case Estimate::tau_bilinear_dx:
      return xi * symbol_tau(params, xi);
    case Estimate::psi_trilinear:
    case Estimate::psi_derivative_product:
      return symbol_psi(params, xi);
    case Estimate::psi_trilinear_dx:
    case Estimate::psi_derivative_product_dx:
      return xi * symbol_psi(params, xi);
  }
  return 0.0;
}

bool differentiates_inputs(Estimate id) {
  return id == Estimate::psi_derivative_product ||
         id == Estimate::psi_derivative_product_dx;
}

}  // namespace

std::string to_string(Estimate id) { return info(id).name; }

Estimate estimate_from_string(const std::string& name) {
  for (const auto& entry : kInfo) {
    if (name == entry.name) return entry.id;
  }
  throw InvalidParameter("unknown estimate '" + name + "'");
}

int arity(Estimate id) { return info(id).arity; }
double threshold(Estimate id) { return info(id).threshold; }

const std::vector<Estimate>& all_estimates() {
  static const std::vector<Estimate> ids = [] {
    std::vector<Estimate> out;
    for (const auto& entry : kInfo) out.push_back(entry.id);
    return out;
  }();
  return ids;
}

double estimate_ratio(Estimate id, double s, std::span<const Spectrum> inputs,
                      const ModelParams& params) {
  const int k = arity(id);
  if (static_cast<int>(inputs.size()) != k) {
    throw ShapeError("estimate " + to_string(id) + " takes " + std::to_string(k) +
                     " inputs");
  }
  const SobolevIndex index(s);
  const PeriodicGrid& grid = inputs.front().grid;
  double denominator = 1.0;
  for (const auto& in : inputs) {
    require_same_grid(grid, in.grid);
    const double norm = sobolev_norm(in, index);
    if (!(norm > 0.0)) throw InvalidParameter("estimate ratio needs nonzero inputs");
    denominator *= norm;
  }

  // A k-fold product of modes |j| < n/2 has |j| < k n/2, exact on a 2k-fold grid.
  const std::size_t padded = grid.size() * (k == 2 ? 2 : 4);
  std::vector<double> product(padded, 1.0);
  for (const auto& in : inputs) {
    const Spectrum factor =
        resample(differentiates_inputs(id) ? derivative(in) : in, padded);
    const Field values = inverse(factor);
    for (std::size_t j = 0; j < padded; ++j) product[j] *= values.samples[j];
  }
  Spectrum out = transform(Field(grid.resized(padded), std::move(product)));
  out = apply_multiplier(std::move(out),
                         [&](double xi) { return output_symbol(id, params, xi); });
  return sobolev_norm(out, index) / denominator;
}

double ProbeReport::worst_growth() const {
  if (max_ratio.empty() || !(max_ratio.front() > 0.0)) return 0.0;
  return *std::max_element(max_ratio.begin(), max_ratio.end()) / max_ratio.front();
}

ProbeReport probe_estimate(Estimate id, double s, const ModelParams& params,
                           const ProbeOptions& options) {
  if (!std::isfinite(s) || s < 0.0) throw DomainError("probe needs s >= 0");
  const bool outside = s < threshold(id) - 1e-15;
  if (outside && !options.allow_out_of_theorem) {
    std::ostringstream os;
    os << "estimate " << to_string(id) << " requires s >= " << threshold(id)
       << ", got " << s;
    throw DomainError(os.str());
  }
  if (options.ensemble == 0 || options.ladder.empty()) {
    throw InvalidParameter("probe needs a nonempty ensemble and ladder");
  }

  ProbeReport report;
  report.id = id;
  report.s = s;
  report.ensemble = options.ensemble;
  report.resolutions = options.ladder;
  report.seed = options.seed;
  report.out_of_theorem = outside;

  const int k = arity(id);
  const auto member_ratio = [&](const PeriodicGrid& grid, std::size_t m) {
    std::vector<Spectrum> inputs;
    for (int j = 0; j < k; ++j) {
      const std::uint64_t seed = options.seed + 3 * m + static_cast<std::uint64_t>(j);
      inputs.push_back(
          random_gaussian_spectrum(grid, s + 1.0, grid.max_frequency(), seed));
    }
    return estimate_ratio(id, s, inputs, params);
  };

  for (std::size_t n : options.ladder) {
    const PeriodicGrid grid(options.length, n);
    const unsigned workers = std::max(1U, options.workers);
    std::vector<double> best(workers, 0.0);
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w) {
      jobs.push_back(std::async(
          workers > 1 ? std::launch::async : std::launch::deferred, [&, w] {
            for (std::size_t m = w; m < options.ensemble; m += workers) {
              best[w] = std::max(best[w], member_ratio(grid, m));
            }
          }));
    }
    for (auto& job : jobs) job.get();
    report.max_ratio.push_back(*std::max_element(best.begin(), best.end()));
  }
  report.bounded = report.worst_growth() <= options.growth_factor;
  return report;
}

ProbeReport probe_bilinear_omega(double s, const ModelParams& params,
                                 const ProbeOptions& options) {
  return probe_estimate(Estimate::omega_bilinear, s, params, options);
}

ProbeReport probe_bilinear_tau(double s, const ModelParams& params,
                               const ProbeOptions& options) {
  return probe_estimate(Estimate::tau_bilinear, s, params, options);
}

ProbeReport probe_trilinear_psi(double s, const ModelParams& params,
                                const ProbeOptions& options) {
  return probe_estimate(Estimate::psi_trilinear, s, params, options);
}

ProbeReport probe_derivative_product_psi(double s, const ModelParams& params,
                                         const ProbeOptions& options) {
  return probe_estimate(Estimate::psi_derivative_product, s, params, options);
}

SymbolBounds probe_symbol_bounds(const ModelParams& params, int samples) {
  const auto xi_tau = [&](double xi) { return std::abs(xi * symbol_tau(params, xi)); };
  const auto xi_psi = [&](double xi) { return std::abs(xi * symbol_psi(params, xi)); };
  const auto weighted = [&](double xi) {
    // <xi> xi^2 / (varphi omega) = <xi> |xi| (1 + xi^2) / varphi
    return std::sqrt(1.0 + xi * xi) * std::abs(xi) * (1.0 + xi * xi) /
           symbol_varphi(params, xi);
  };
  const double tau_limit = std::abs(params.gamma()) / params.delta1();
  const double weighted_limit = 1.0 / params.delta1();
  SymbolBounds bounds{
      {supremum_on_halfline(xi_tau, tau_limit, samples), tau_limit},
      {supremum_on_halfline(xi_psi, 0.0, samples), 0.0},
      {supremum_on_halfline(weighted, weighted_limit, samples), weighted_limit},
  };
  return bounds;
}

}  // namespace kdvbbm
