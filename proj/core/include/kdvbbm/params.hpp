#pragma once

#include <cmath>

namespace kdvbbm {

/// Coefficients of the fifth-order KdV-BBM model
///
///   eta_t + eta_x - g1 eta_xxt + g2 eta_xxx + d1 eta_xxxxt + d2 eta_xxxxx
///     + 3/2 eta eta_x + g (eta^2)_xxx - 7/48 (eta_x^2)_x - 1/8 (eta^3)_x = 0.
///
/// Only gamma1 and delta1 are free; the remaining coefficients follow from the
/// constraints g1 + g2 = 1/6, g = (5 - 18 g1)/24 and d2 - d1 = 19/360 - g1/6.
/// Instances are created through make_params() so the constraints always hold.
class ModelParams {
 public:
  double gamma1() const noexcept { return gamma1_; }
  double gamma2() const noexcept { return gamma2_; }
  double delta1() const noexcept { return delta1_; }
  double delta2() const noexcept { return delta2_; }
  double gamma() const noexcept { return gamma_; }

  /// gamma == 7/48, the case in which the energy functional is conserved.
  bool hamiltonian() const noexcept { return hamiltonian_; }

  friend ModelParams make_params(double gamma1, double delta1);

 private:
  ModelParams() = default;

  double gamma1_ = 0.0;
  double gamma2_ = 0.0;
  double delta1_ = 0.0;
  double delta2_ = 0.0;
  double gamma_ = 0.0;
  bool hamiltonian_ = false;
};

/// Throws InvalidParameter unless gamma1 > 0 and delta1 > 0 (both finite).
ModelParams make_params(double gamma1, double delta1);

/// gamma1 = delta1 = 1/12, the hamiltonian case gamma = 7/48.
ModelParams default_params();

inline constexpr double kHamiltonianGamma = 7.0 / 48.0;

// Fourier symbols. phi, psi and tau are odd, omega is even.

/// Common denominator 1 + g1 xi^2 + d1 xi^4 (>= 1).
inline double symbol_varphi(const ModelParams& p, double xi) noexcept {
  const double xi2 = xi * xi;
  return 1.0 + p.gamma1() * xi2 + p.delta1() * xi2 * xi2;
}

/// Dispersion relation xi (1 - g2 xi^2 + d2 xi^4) / varphi(xi).
inline double symbol_phi(const ModelParams& p, double xi) noexcept {
  const double xi2 = xi * xi;
  return xi * (1.0 - p.gamma2() * xi2 + p.delta2() * xi2 * xi2) /
         symbol_varphi(p, xi);
}

inline double symbol_psi(const ModelParams& p, double xi) noexcept {
  return xi / symbol_varphi(p, xi);
}

inline double symbol_tau(const ModelParams& p, double xi) noexcept {
  return (3.0 * xi - 4.0 * p.gamma() * xi * xi * xi) /
         (4.0 * symbol_varphi(p, xi));
}

inline double symbol_omega(double xi) noexcept {
  return std::abs(xi) / (1.0 + xi * xi);
}

/// p(xi) = phi(xi)/xi, the even factor of the dispersion relation.
inline double dispersion_factor(const ModelParams& p, double xi) noexcept {
  const double xi2 = xi * xi;
  return (1.0 - p.gamma2() * xi2 + p.delta2() * xi2 * xi2) /
         symbol_varphi(p, xi);
}

/// Closed-form derivative of dispersion_factor.
double dispersion_factor_derivative(const ModelParams& p, double xi) noexcept;

/// phi'(xi) = p(xi) + xi p'(xi).
inline double symbol_phi_derivative(const ModelParams& p, double xi) noexcept {
  return dispersion_factor(p, xi) + xi * dispersion_factor_derivative(p, xi);
}

}  // namespace kdvbbm
