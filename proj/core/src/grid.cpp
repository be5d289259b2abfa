#include "kdvbbm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kdvbbm/errors.hpp"

namespace kdvbbm {

PeriodicGrid::PeriodicGrid(double length, std::size_t n) : length_(length), n_(n) {
  if (!(std::isfinite(length) && length > 0.0)) {
    throw InvalidParameter("grid length must be positive and finite");
  }
  if (n < 4 || (n & (n - 1)) != 0) {
    std::ostringstream os;
    os << "grid size must be a power of two >= 4 (got " << n << ")";
    throw InvalidParameter(os.str());
  }
}

std::vector<double> PeriodicGrid::points() const {
  std::vector<double> xs(n_);
  for (std::size_t j = 0; j < n_; ++j) xs[j] = x(j);
  return xs;
}

std::vector<double> PeriodicGrid::frequencies() const {
  std::vector<double> xi(n_);
  for (std::size_t j = 0; j < n_; ++j) xi[j] = frequency(j);
  return xi;
}

Field::Field(const PeriodicGrid& g, std::vector<double> values)
    : grid(g), samples(std::move(values)) {
  if (samples.size() != grid.size()) {
    throw ShapeError("field sample count does not match grid size");
  }
}

Spectrum::Spectrum(const PeriodicGrid& g, std::vector<complex> values)
    : grid(g), coeffs(std::move(values)) {
  if (coeffs.size() != grid.size()) {
    throw ShapeError("spectrum coefficient count does not match grid size");
  }
}

Spectrum& Spectrum::operator+=(const Spectrum& other) {
  require_same_grid(grid, other.grid);
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] += other.coeffs[k];
  return *this;
}

Spectrum& Spectrum::operator-=(const Spectrum& other) {
  require_same_grid(grid, other.grid);
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] -= other.coeffs[k];
  return *this;
}

Spectrum& Spectrum::operator*=(double scale) {
  for (auto& c : coeffs) c *= scale;
  return *this;
}

Spectrum operator+(Spectrum a, const Spectrum& b) { return a += b; }
Spectrum operator-(Spectrum a, const Spectrum& b) { return a -= b; }
Spectrum operator*(double scale, Spectrum a) { return a *= scale; }

void require_same_grid(const PeriodicGrid& a, const PeriodicGrid& b) {
  if (!(a == b)) {
    std::ostringstream os;
    os << "grid mismatch: (L=" << a.length() << ", n=" << a.size()
       << ") vs (L=" << b.length() << ", n=" << b.size() << ")";
    throw ShapeError(os.str());
  }
}

bool all_finite(const Spectrum& s) noexcept {
  return std::all_of(s.coeffs.begin(), s.coeffs.end(), [](const complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

double hermitian_defect(const Spectrum& s) noexcept {
  const std::size_t n = s.grid.size();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t mirror = (n - j) % n;
    worst = std::max(worst, std::abs(s.coeffs[mirror] - std::conj(s.coeffs[j])));
  }
  return worst;
}

}  // namespace kdvbbm
