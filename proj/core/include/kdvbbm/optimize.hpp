#pragma once

#include <functional>
#include <limits>

namespace kdvbbm {

struct Maximum {
  double argmax;
  double value;
};

/// Maximizes f on [lo, hi]: a dense scan picks the best sample, then
/// golden-section search refines inside the neighbouring cells until the
/// bracket is narrower than tol (relative to max(1, |x|)).
Maximum maximize_on_interval(const std::function<double(double)>& f, double lo,
                             double hi, int samples = 4096, double tol = 1e-10);

/// Supremum of f on [0, inf). The half-line is compactified with
/// x = u / (1 - u); `limit` is the value of f at infinity. When the limit
/// dominates every finite candidate the returned argmax is +inf.
Maximum supremum_on_halfline(const std::function<double(double)>& f,
                             double limit, int samples = 1 << 16,
                             double tol = 1e-10);

}  // namespace kdvbbm
