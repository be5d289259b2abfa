#include "kdvbbm/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "kdvbbm/errors.hpp"

namespace kdvbbm {

GaussRule gauss_legendre(int order) {
  if (order < 1) throw InvalidParameter("Gauss-Legendre order must be >= 1");
  GaussRule rule{std::vector<double>(order), std::vector<double>(order)};
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      const double pn = order == 1 ? x : p1;
      const double pn_1 = order == 1 ? 1.0 : p0;
      dp = order * (x * pn - pn_1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

}  // namespace kdvbbm
