#include "kdvbbm/spectral.hpp"

#include <algorithm>

#include "fft.hpp"
#include "kdvbbm/errors.hpp"

namespace kdvbbm {

namespace {

// exp(-i xi_k x_0) with x_0 = -L/2 reduces to (-1)^k.
inline double parity(std::size_t index) { return (index & 1U) ? -1.0 : 1.0; }

}  // namespace

SobolevIndex::SobolevIndex(double value) : s(value) {
  if (!std::isfinite(value)) throw InvalidParameter("Sobolev index must be finite");
}

Spectrum transform(const Field& field) {
  const std::size_t n = field.grid.size();
  if (field.samples.size() != n) throw ShapeError("field size does not match grid");
  std::vector<complex> in(field.samples.begin(), field.samples.end());
  Spectrum out(field.grid);
  detail::fft_forward(in, out.coeffs);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) out.coeffs[k] *= parity(k) * scale;
  return out;
}

std::vector<complex> inverse_complex(const Spectrum& spectrum) {
  const std::size_t n = spectrum.grid.size();
  if (spectrum.coeffs.size() != n) throw ShapeError("spectrum size does not match grid");
  std::vector<complex> in(n), out(n);
  for (std::size_t k = 0; k < n; ++k) in[k] = parity(k) * spectrum.coeffs[k];
  detail::fft_backward(in, out);
  return out;
}

Field inverse(const Spectrum& spectrum) {
  const auto values = inverse_complex(spectrum);
  Field out(spectrum.grid);
  std::transform(values.begin(), values.end(), out.samples.begin(),
                 [](const complex& c) { return c.real(); });
  return out;
}

Spectrum resample(const Spectrum& spectrum, std::size_t m) {
  const PeriodicGrid target = spectrum.grid.resized(m);
  Spectrum out(target);
  const long kmax =
      static_cast<long>(std::min(spectrum.grid.size(), m) / 2);
  for (long k = -kmax + 1; k < kmax; ++k) {
    out.coeffs[target.index_of(k)] = spectrum.coeffs[spectrum.grid.index_of(k)];
  }
  return out;
}

Spectrum derivative(const Spectrum& spectrum, int order) {
  Spectrum out = spectrum;
  const std::size_t n = out.grid.size();
  for (std::size_t k = 0; k < n; ++k) {
    if ((order & 1) && out.grid.is_nyquist(k)) {
      out.coeffs[k] = 0.0;
      continue;
    }
    const complex factor = std::pow(complex(0.0, out.grid.frequency(k)), order);
    out.coeffs[k] *= factor;
  }
  return out;
}

double sobolev_norm(const Spectrum& spectrum, SobolevIndex s) {
  return std::sqrt(std::max(0.0, sobolev_inner(spectrum, spectrum, s)));
}

double sobolev_norm(const Field& field, SobolevIndex s) {
  return sobolev_norm(transform(field), s);
}

double sobolev_inner(const Spectrum& a, const Spectrum& b, SobolevIndex s) {
  require_same_grid(a.grid, b.grid);
  double sum = 0.0;
  const std::size_t n = a.grid.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = a.grid.frequency(k);
    const double w = s.s == 0.0 ? 1.0 : std::pow(1.0 + xi * xi, s.s);
    sum += w * (std::conj(a.coeffs[k]) * b.coeffs[k]).real();
  }
  return a.grid.length() * sum;
}

double energy(const Spectrum& spectrum, const ModelParams& params) {
  double sum = 0.0;
  const std::size_t n = spectrum.grid.size();
  for (std::size_t k = 0; k < n; ++k) {
    sum += symbol_varphi(params, spectrum.grid.frequency(k)) *
           std::norm(spectrum.coeffs[k]);
  }
  return 0.5 * spectrum.grid.length() * sum;
}

double energy(const Field& field, const ModelParams& params) {
  return energy(transform(field), params);
}

Spectrum low_pass(Spectrum spectrum, double cutoff) {
  const std::size_t n = spectrum.grid.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(spectrum.grid.frequency(k)) > cutoff) spectrum.coeffs[k] = 0.0;
  }
  return spectrum;
}

}  // namespace kdvbbm
