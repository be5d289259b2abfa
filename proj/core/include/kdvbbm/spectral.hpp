#pragma once

#include <cmath>

#include "kdvbbm/grid.hpp"
#include "kdvbbm/params.hpp"

namespace kdvbbm {

/// Regularity index s of the Sobolev space H^s.
struct SobolevIndex {
  double s;

  /// Throws InvalidParameter for a non-finite index.
  explicit SobolevIndex(double value);
};

/// c_k = (1/n) sum_j f(x_j) exp(-i xi_k x_j), x_j = -L/2 + j L/n.
/// With this scaling the continuum L^2 norm is L sum_k |c_k|^2.
Spectrum transform(const Field& field);

/// Real part of f(x_j) = sum_k c_k exp(i xi_k x_j).
Field inverse(const Spectrum& spectrum);

/// Samples of sum_k c_k exp(i xi_k x_j) without discarding the imaginary part.
std::vector<complex> inverse_complex(const Spectrum& spectrum);

/// Copies coefficients into a grid of the same length with m samples.
/// Wavenumbers |k| < min(n, m)/2 are kept, all others (including both Nyquist
/// modes) are zero.
Spectrum resample(const Spectrum& spectrum, std::size_t m);

/// c_k <- symbol(xi_k) c_k for a real- or complex-valued symbol.
template <typename Symbol>
Spectrum apply_multiplier(Spectrum spectrum, Symbol&& symbol) {
  const std::size_t n = spectrum.grid.size();
  for (std::size_t k = 0; k < n; ++k) {
    spectrum.coeffs[k] *= symbol(spectrum.grid.frequency(k));
  }
  return spectrum;
}

/// Spectral derivative (i xi)^order. The Nyquist coefficient is zeroed for
/// odd orders so real fields stay real.
Spectrum derivative(const Spectrum& spectrum, int order = 1);

/// sqrt(L sum_k (1 + xi_k^2)^s |c_k|^2).
double sobolev_norm(const Spectrum& spectrum, SobolevIndex s);
double sobolev_norm(const Field& field, SobolevIndex s);

/// L sum_k (1 + xi_k^2)^s conj(a_k) b_k, real part.
double sobolev_inner(const Spectrum& a, const Spectrum& b, SobolevIndex s);

/// E = 1/2 L sum_k (1 + g1 xi_k^2 + d1 xi_k^4) |c_k|^2, the discrete form of
/// 1/2 int eta^2 + g1 eta_x^2 + d1 eta_xx^2 dx.
double energy(const Spectrum& spectrum, const ModelParams& params);
double energy(const Field& field, const ModelParams& params);

/// Zeroes every coefficient with |xi_k| > cutoff.
Spectrum low_pass(Spectrum spectrum, double cutoff);

}  // namespace kdvbbm
