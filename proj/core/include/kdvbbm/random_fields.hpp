#pragma once

#include <cstdint>
#include <random>

#include "kdvbbm/grid.hpp"
#include "kdvbbm/spectral.hpp"

namespace kdvbbm {

/// mt19937_64 with portable uniform and normal draws, so a seed gives the
/// same stream on every standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Hermitian, Nyquist-free spectrum with coefficients
///   c_k = A (1 + xi_k^2)^(-decay/2) * z_k,  0 < |xi_k| <= cutoff,
/// where z_k is i.i.d. complex Gaussian. Modes are drawn in order of
/// increasing |k|, so the same seed on a finer grid of the same length
/// reproduces every coarse mode exactly. The mean mode is zero.
Spectrum random_gaussian_spectrum(const PeriodicGrid& grid, double decay,
                                  double cutoff, std::uint64_t seed);

/// Same envelope as random_gaussian_spectrum with unit modulus random phases.
Spectrum random_phase_spectrum(const PeriodicGrid& grid, double decay,
                               double cutoff, std::uint64_t seed);

/// Sum of `bumps` Gaussians a_i exp(-((x - c_i)/w_i)^2) with a_i ~ U(-1, 1),
/// w_i ~ U(width_lo, width_hi) and c_i ~ U(-spread, spread).
Field random_bumps(const PeriodicGrid& grid, int bumps, double spread,
                   double width_lo, double width_hi, std::uint64_t seed);

/// Rescales to the requested H^s norm. Throws InvalidParameter for a zero
/// spectrum.
Spectrum normalized(Spectrum spectrum, SobolevIndex s, double target);

}  // namespace kdvbbm
