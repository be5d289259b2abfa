#pragma once

#include <vector>

namespace kdvbbm {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes from Newton iteration on P_order; exact for polynomials of degree
/// 2 order - 1.
GaussRule gauss_legendre(int order);

/// Composite rule: `panels` equal panels on [a, b], each with `rule`.
template <typename F>
auto integrate_panels(F&& f, double a, double b, int panels, const GaussRule& rule) {
  using Value = decltype(f(a));
  Value total{};
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + width * p;
    const double mid = lo + 0.5 * width;
    Value part{};
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      part += rule.weights[q] * f(mid + 0.5 * width * rule.nodes[q]);
    }
    total += 0.5 * width * part;
  }
  return total;
}

}  // namespace kdvbbm
