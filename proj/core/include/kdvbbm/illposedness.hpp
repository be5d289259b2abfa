#pragma once

#include <complex>
#include <string>
#include <vector>

#include "kdvbbm/dynamics.hpp"

namespace kdvbbm {

/// Sign of the xi_1 (xi - xi_1) term in the second-iterate kernel g. The
/// convolution of -7/48 psi(D) (eta_x)^2 contributes
///   -7/48 psi(xi) (i (xi - xi_1)) (i xi_1) = +7/48 psi(xi) xi_1 (xi - xi_1),
/// hence g = 3 - 4 gamma xi^2 + 7/12 xi_1 (xi - xi_1).
inline constexpr int kKernelCrossTermSign = +1;

/// Datum with Fourier profile N^{-1} alpha^{-1/2} on I_N = [N, N + 2 alpha]
/// and on -I_N.
struct BandData {
  double N;
  double alpha;

  /// Throws InvalidParameter unless N > 0 and alpha > 0.
  void validate() const;
  double lower() const noexcept { return N; }
  double upper() const noexcept { return N + 2.0 * alpha; }
  double height() const noexcept;  // N^{-1} alpha^{-1/2}
};

/// Grid band datum: c_k = sqrt(2 pi)/L times the cell average of the profile
/// over [|xi_k| - dxi/2, |xi_k| + dxi/2], so that L sum |c_k|^2 w(xi_k)
/// approximates int |eta_hat|^2 w dxi with the unitary transform and the
/// band mass is exact.
/// Throws ResolutionError when the band holds fewer than 8 modes or
/// N + 2 alpha reaches the Nyquist frequency.
Spectrum make_eta_N_spectrum(const PeriodicGrid& grid, const BandData& band);
Field make_eta_N(const PeriodicGrid& grid, double N, double alpha);

/// Smallest power-of-two grid of the given length whose band strictly
/// contains the output bands +-[2N, 2N + 4 alpha] of the quadratic term.
PeriodicGrid grid_for_band(const BandData& band, double length);

/// Theta(xi, xi1) = phi(xi) - phi(xi - xi1) - phi(xi1).
double theta(const ModelParams& params, double xi, double xi1);
/// g(xi, xi1) = 3 - 4 gamma xi^2 + (7/12) xi1 (xi - xi1).
double kernel_g(const ModelParams& params, double xi, double xi1);

/// (exp(i t Theta) - 1) / (i Theta), t at Theta = 0; a three-term series is
/// used when |t Theta| < 1e-6.
std::complex<double> time_factor(double theta_value, double t);

/// C = 2 sup |phi'|, so that |Theta| <= C alpha on the resonant region.
double resonance_constant(const ModelParams& params);
/// alpha = pi / (4 C t).
double alpha_for_time(const ModelParams& params, double t);

/// Lebesgue measure of K(xi) = {xi1 : xi - xi1 in I_N, xi1 in -I_N} u
/// {xi1 : xi1 in I_N, xi - xi1 in -I_N}.
double resonance_set_measure(const BandData& band, double xi);

/// Fourier transform (unitary convention) of the quadratic Picard
/// coefficient I_2 at frequency xi, without the unimodular factor
/// -i exp(-i t phi(xi)); inner integral by `inner_panels` Gauss panels.
std::complex<double> second_iterate_density(const ModelParams& params,
                                            const BandData& band, double t,
                                            double xi, int inner_panels = 4);

struct SecondIterateNorm {
  double norm = 0.0;       // |I_2|_{H^s} over all output bands
  double core_norm = 0.0;  // restricted to |xi| < alpha/2
  int outer_panels = 0;
  int inner_panels = 0;
  double last_relative_change = 0.0;
};

/// |I_2(eta_N, eta_N, t)|_{H^s} by 2-D Gauss-Legendre quadrature of the
/// continuum formula, refining panels until the relative change between
/// successive levels is below rel_tol. Throws AccuracyError otherwise and
/// InvalidParameter unless t > 0.
SecondIterateNorm second_iterate_quadrature(const ModelParams& params,
                                            const BandData& band, double t,
                                            double s, double rel_tol = 1e-6);
double picard_second_quadrature(const ModelParams& params, double N, double alpha,
                                double t, double s);

struct ExtractionResult {
  Spectrum coefficient;  // Richardson-combined, or the single-epsilon value
  Spectrum single;       // (eta(eps h, t) - eps S(t) h) / eps^2
  Spectrum solution;     // eta(eps h, t)
};

/// Leading quadratic Picard coefficient from full solves:
///   Q(eps) = (eta(eps h, t) - eps S(t) h) / eps^2 = I_2 + O(eps),
/// optionally combined as 2 Q(eps/2) - Q(eps).
ExtractionResult picard_second_extraction(const Spectrum& data, double t,
                                          double epsilon, double dt,
                                          const ModelParams& params,
                                          bool richardson = true,
                                          Dealias dealias = Dealias::pad_double,
                                          NonlinearTerms terms = {});
Field picard_second_extraction(const Field& data, double t, double epsilon,
                               const EvolutionConfig& cfg,
                               const ModelParams& params);

struct SweepConfig {
  double t = 0.5;
  double s = 0.5;
  std::vector<double> cutoffs{16, 32, 64, 128};
  double epsilon = 1e-3;
  double length = 64.0 * 3.14159265358979323846;
  double dt = 1e-3;
  double alpha = 0.0;  // 0 selects alpha_for_time(params, t)
  bool run_extraction = true;
  bool richardson = true;
  double floor_fraction = 0.25;
  unsigned workers = 1;
};

struct SweepRow {
  double N = 0.0;
  double alpha = 0.0;
  double t = 0.0;
  double s = 0.0;
  std::size_t grid_size = 0;
  double data_norm = 0.0;
  double i2_quadrature = 0.0;
  double i2_extraction = 0.0;  // NaN when not run
  double solution_norm = 0.0;  // NaN when not run
  std::string verdict;
  std::string error;
};

/// One row per cutoff; a failing row records its error and the sweep
/// continues. Verdicts: "control" for s >= 1; otherwise "discontinuity" when
/// the data norm is below the first row's and the solution norm stays above
/// floor_fraction times the first row's, "no-signal" when not, and "error".
std::vector<SweepRow> illposedness_sweep(const ModelParams& params,
                                         const SweepConfig& config);

}  // namespace kdvbbm
