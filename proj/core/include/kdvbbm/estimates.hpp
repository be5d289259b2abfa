#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kdvbbm/grid.hpp"
#include "kdvbbm/optimize.hpp"
#include "kdvbbm/params.hpp"

namespace kdvbbm {

/// Multiplier estimates probed by bounded-ratio experiments. The `_dx`
/// variants put one extra derivative on the output.
enum class Estimate {
  omega_bilinear,             // |omega(D)(uv)|_s / |u|_s |v|_s
  tau_bilinear,               // |tau(D)(uv)|_s / |u|_s |v|_s
  tau_bilinear_dx,            // |D tau(D)(uv)|_s / |u|_s |v|_s
  psi_trilinear,              // |psi(D)(uvw)|_s / |u|_s |v|_s |w|_s
  psi_trilinear_dx,           // |D psi(D)(uvw)|_s / |u|_s |v|_s |w|_s
  psi_derivative_product,     // |psi(D)(u_x v_x)|_s / |u|_s |v|_s
  psi_derivative_product_dx,  // |D psi(D)(u_x v_x)|_s / |u|_s |v|_s
};

std::string to_string(Estimate id);
Estimate estimate_from_string(const std::string& name);
/// Number of input functions (2 or 3).
int arity(Estimate id);
/// Smallest s covered by the corresponding bound.
double threshold(Estimate id);
const std::vector<Estimate>& all_estimates();

/// Ratio for one tuple of inputs on a common grid. Products are formed
/// exactly on a zero-padded grid, so band-limited inputs see no aliasing.
/// Throws ShapeError on an arity or grid mismatch and InvalidParameter when
/// an input has zero norm.
double estimate_ratio(Estimate id, double s, std::span<const Spectrum> inputs,
                      const ModelParams& params);

struct ProbeOptions {
  std::size_t ensemble = 200;
  std::vector<std::size_t> ladder{256, 512, 1024, 2048};
  double length = 16.0 * 3.14159265358979323846;
  std::uint64_t seed = 1;
  bool allow_out_of_theorem = false;
  double growth_factor = 1.2;
  unsigned workers = 1;
};

struct ProbeReport {
  Estimate id = Estimate::omega_bilinear;
  double s = 0.0;
  std::size_t ensemble = 0;
  std::vector<std::size_t> resolutions;
  std::vector<double> max_ratio;  // one per resolution
  std::uint64_t seed = 0;
  bool out_of_theorem = false;
  bool bounded = false;  // max_j r_j <= growth_factor * r_0

  double worst_growth() const;
};

/// Random pairs or triples with Gaussian coefficients and envelope
/// (1 + xi^2)^{-(s + 1)/2}. Member m uses seeds seed + 3m + j, and fields on
/// a finer grid extend the coarser ones. Throws DomainError when s is below
/// the threshold unless allow_out_of_theorem is set.
ProbeReport probe_estimate(Estimate id, double s, const ModelParams& params,
                           const ProbeOptions& options = {});

ProbeReport probe_bilinear_omega(double s, const ModelParams& params,
                                 const ProbeOptions& options = {});
ProbeReport probe_bilinear_tau(double s, const ModelParams& params,
                               const ProbeOptions& options = {});
ProbeReport probe_trilinear_psi(double s, const ModelParams& params,
                                const ProbeOptions& options = {});
ProbeReport probe_derivative_product_psi(double s, const ModelParams& params,
                                         const ProbeOptions& options = {});

struct SymbolSupremum {
  Maximum maximum;  // argmax is +inf when only approached at infinity
  double limit;     // value at infinity
};

struct SymbolBounds {
  SymbolSupremum xi_tau;        // sup |xi tau(xi)|
  SymbolSupremum xi_psi;        // sup |xi psi(xi)|
  SymbolSupremum weighted_psi;  // sup <xi> xi^2 / (varphi(xi) omega(xi))
};

SymbolBounds probe_symbol_bounds(const ModelParams& params, int samples = 1 << 16);

}  // namespace kdvbbm
