#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace kdvbbm {

using complex = std::complex<double>;

/// Uniform periodic grid on [-L/2, L/2) with n samples, n a power of two.
///
/// Spectral coefficients are stored in FFT order: index j < n/2 carries
/// wavenumber k = j, index j >= n/2 carries k = j - n. The frequency of
/// wavenumber k is xi_k = 2 pi k / L, so the band is [-pi n/L, pi n/L).
class PeriodicGrid {
 public:
  /// Throws InvalidParameter unless length > 0 and n is a power of two >= 4.
  PeriodicGrid(double length, std::size_t n);

  double length() const noexcept { return length_; }
  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return length_ / static_cast<double>(n_); }
  double frequency_spacing() const noexcept {
    return 2.0 * std::numbers::pi / length_;
  }
  /// pi n / L, the modulus of the Nyquist frequency.
  double max_frequency() const noexcept {
    return std::numbers::pi * static_cast<double>(n_) / length_;
  }

  double x(std::size_t j) const noexcept {
    return -0.5 * length_ + spacing() * static_cast<double>(j);
  }
  long wavenumber(std::size_t index) const noexcept {
    const auto n = static_cast<long>(n_);
    const auto j = static_cast<long>(index);
    return j < n / 2 ? j : j - n;
  }
  double frequency(std::size_t index) const noexcept {
    return frequency_spacing() * static_cast<double>(wavenumber(index));
  }
  /// Storage index of wavenumber k, |k| <= n/2.
  std::size_t index_of(long k) const noexcept {
    const auto n = static_cast<long>(n_);
    return static_cast<std::size_t>(k >= 0 ? k : k + n);
  }
  bool is_nyquist(std::size_t index) const noexcept { return index == n_ / 2; }

  std::vector<double> points() const;
  std::vector<double> frequencies() const;

  /// Same length, different sample count; used for padded products.
  PeriodicGrid resized(std::size_t n) const { return PeriodicGrid(length_, n); }

  friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

 private:
  double length_;
  std::size_t n_;
};

/// Physical-space samples on a grid.
struct Field {
  PeriodicGrid grid;
  std::vector<double> samples;

  explicit Field(const PeriodicGrid& g) : grid(g), samples(g.size(), 0.0) {}
  /// Throws ShapeError if the sample count does not match the grid.
  Field(const PeriodicGrid& g, std::vector<double> values);
};

/// Discrete Fourier coefficients c_k = (1/n) sum_j f(x_j) exp(-i xi_k x_j).
struct Spectrum {
  PeriodicGrid grid;
  std::vector<complex> coeffs;

  explicit Spectrum(const PeriodicGrid& g) : grid(g), coeffs(g.size()) {}
  /// Throws ShapeError if the coefficient count does not match the grid.
  Spectrum(const PeriodicGrid& g, std::vector<complex> values);

  Spectrum& operator+=(const Spectrum& other);
  Spectrum& operator-=(const Spectrum& other);
  Spectrum& operator*=(double scale);
};

Spectrum operator+(Spectrum a, const Spectrum& b);
Spectrum operator-(Spectrum a, const Spectrum& b);
Spectrum operator*(double scale, Spectrum a);

/// Throws ShapeError when the two grids differ.
void require_same_grid(const PeriodicGrid& a, const PeriodicGrid& b);

/// True when every coefficient is finite.
bool all_finite(const Spectrum& s) noexcept;

/// max_k |c_{-k} - conj(c_k)|, zero for the spectrum of a real field. The
/// Nyquist coefficient is compared with its own conjugate.
double hermitian_defect(const Spectrum& s) noexcept;

}  // namespace kdvbbm
