#include "kdvbbm/random_fields.hpp"

#include <cmath>
#include <numbers>

#include "kdvbbm/errors.hpp"

namespace kdvbbm {

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

namespace {

template <typename Draw>
Spectrum enveloped_spectrum(const PeriodicGrid& grid, double decay,
                            double cutoff, Draw&& draw) {
  Spectrum out(grid);
  const long kmax = static_cast<long>(grid.size() / 2) - 1;
  for (long k = 1; k <= kmax; ++k) {
    const double xi = grid.frequency_spacing() * static_cast<double>(k);
    const complex z = draw();
    if (xi > cutoff) continue;
    const double envelope = std::pow(1.0 + xi * xi, -0.5 * decay);
    out.coeffs[grid.index_of(k)] = envelope * z;
    out.coeffs[grid.index_of(-k)] = envelope * std::conj(z);
  }
  return out;
}

}  // namespace

Spectrum random_gaussian_spectrum(const PeriodicGrid& grid, double decay,
                                  double cutoff, std::uint64_t seed) {
  RandomStream rng(seed);
  return enveloped_spectrum(grid, decay, cutoff, [&rng] {
    const double re = rng.normal();
    const double im = rng.normal();
    return complex(re, im) / std::numbers::sqrt2;
  });
}

Spectrum random_phase_spectrum(const PeriodicGrid& grid, double decay,
                               double cutoff, std::uint64_t seed) {
  RandomStream rng(seed);
  return enveloped_spectrum(grid, decay, cutoff, [&rng] {
    return std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
  });
}

Field random_bumps(const PeriodicGrid& grid, int bumps, double spread,
                   double width_lo, double width_hi, std::uint64_t seed) {
  RandomStream rng(seed);
  Field out(grid);
  for (int b = 0; b < bumps; ++b) {
    const double a = rng.uniform(-1.0, 1.0);
    const double w = rng.uniform(width_lo, width_hi);
    const double c = rng.uniform(-spread, spread);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double z = (grid.x(j) - c) / w;
      out.samples[j] += a * std::exp(-z * z);
    }
  }
  return out;
}

Spectrum normalized(Spectrum spectrum, SobolevIndex s, double target) {
  const double norm = sobolev_norm(spectrum, s);
  if (!(norm > 0.0)) throw InvalidParameter("cannot normalize a zero field");
  spectrum *= target / norm;
  return spectrum;
}

}  // namespace kdvbbm
