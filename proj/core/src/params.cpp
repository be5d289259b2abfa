#include "kdvbbm/params.hpp"

#include <sstream>

#include "kdvbbm/errors.hpp"

namespace kdvbbm {

ModelParams make_params(double gamma1, double delta1) {
  if (!(std::isfinite(gamma1) && gamma1 > 0.0) ||
      !(std::isfinite(delta1) && delta1 > 0.0)) {
    std::ostringstream os;
    os << "model parameters require gamma1 > 0 and delta1 > 0 (got gamma1="
       << gamma1 << ", delta1=" << delta1 << ")";
    throw InvalidParameter(os.str());
  }
  ModelParams p;
  p.gamma1_ = gamma1;
  p.delta1_ = delta1;
  p.gamma2_ = 1.0 / 6.0 - gamma1;
  p.gamma_ = (5.0 - 18.0 * gamma1) / 24.0;
  p.delta2_ = delta1 + 19.0 / 360.0 - gamma1 / 6.0;
  p.hamiltonian_ = std::abs(p.gamma_ - kHamiltonianGamma) < 1e-12;
  return p;
}

ModelParams default_params() { return make_params(1.0 / 12.0, 1.0 / 12.0); }

double dispersion_factor_derivative(const ModelParams& p, double xi) noexcept {
  const double xi2 = xi * xi;
  const double num = -2.0 * (p.gamma1() + p.gamma2()) * xi +
                     4.0 * (p.delta2() - p.delta1()) * xi2 * xi +
                     2.0 * (p.gamma2() * p.delta1() + p.gamma1() * p.delta2()) *
                         xi2 * xi2 * xi;
  const double den = symbol_varphi(p, xi);
  return num / (den * den);
}

}  // namespace kdvbbm
