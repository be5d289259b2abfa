#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "kdvbbm/grid.hpp"

namespace testing {

using kdvbbm::complex;
using kdvbbm::PeriodicGrid;
using kdvbbm::Spectrum;

inline constexpr double pi = std::numbers::pi;

/// Direct O(n^2) evaluation of c_k = (1/n) sum_j f_j exp(-i xi_k x_j).
inline std::vector<complex> direct_dft(const PeriodicGrid& g, const std::vector<double>& f) {
  const std::size_t n = g.size();
  std::vector<complex> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    complex acc{};
    for (std::size_t j = 0; j < n; ++j) {
      acc += f[j] * std::exp(complex(0.0, -g.frequency(k) * g.x(j)));
    }
    c[k] = acc / static_cast<double>(n);
  }
  return c;
}

/// Value of the trigonometric polynomial sum_k c_k exp(i xi_k x) and its
/// derivatives at an arbitrary point, Nyquist excluded.
inline double evaluate(const Spectrum& s, double x, int order = 0) {
  complex acc{};
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    if (s.grid.is_nyquist(k)) continue;
    const double xi = s.grid.frequency(k);
    acc += std::pow(complex(0.0, xi), order) * s.coeffs[k] * std::exp(complex(0.0, xi * x));
  }
  return acc.real();
}

/// Full convolution sum_{k1 + k2 = k} a_k1 b_k2 over wavenumbers, returned as a
/// map from wavenumber offset (k + 2n) to coefficient.
inline std::vector<complex> convolve(const Spectrum& a, const Spectrum& b) {
  const long n = static_cast<long>(a.grid.size());
  std::vector<complex> out(static_cast<std::size_t>(4 * n));
  for (std::size_t i = 0; i < a.grid.size(); ++i) {
    if (a.grid.is_nyquist(i) || a.coeffs[i] == complex{}) continue;
    for (std::size_t j = 0; j < b.grid.size(); ++j) {
      if (b.grid.is_nyquist(j)) continue;
      const long k = a.grid.wavenumber(i) + b.grid.wavenumber(j);
      out[static_cast<std::size_t>(k + 2 * n)] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return out;
}

inline double max_abs_diff(const Spectrum& a, const Spectrum& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) {
    worst = std::max(worst, std::abs(a.coeffs[k] - b.coeffs[k]));
  }
  return worst;
}

/// Single cosine mode a cos(xi_m x): coefficients a/2 at +-m.
inline Spectrum cosine_mode(const PeriodicGrid& g, long m, double a = 1.0) {
  Spectrum s(g);
  s.coeffs[g.index_of(m)] = 0.5 * a;
  s.coeffs[g.index_of(-m)] = 0.5 * a;
  return s;
}

}  // namespace testing
