#include "kdvbbm/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "kdvbbm/errors.hpp"

namespace kdvbbm {

namespace {

Maximum golden_section(const std::function<double(double)>& f, double a,
                       double b, double tol) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 400 && (b - a) > tol * std::max(1.0, std::abs(c)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Maximum{c, fc} : Maximum{d, fd};
}

}  // namespace

Maximum maximize_on_interval(const std::function<double(double)>& f, double lo,
                             double hi, int samples, double tol) {
  if (!(hi > lo) || samples < 2) {
    throw InvalidParameter("maximize_on_interval needs hi > lo and >= 2 samples");
  }
  const double h = (hi - lo) / samples;
  int best = 0;
  double best_value = f(lo);
  for (int i = 1; i <= samples; ++i) {
    const double v = f(lo + h * i);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = lo + h * std::max(0, best - 1);
  const double b = lo + h * std::min(samples, best + 1);
  Maximum refined = golden_section(f, a, b, tol);
  if (refined.value >= best_value) return refined;
  return {lo + h * best, best_value};
}

Maximum supremum_on_halfline(const std::function<double(double)>& f,
                             double limit, int samples, double tol) {
  const auto g = [&f](double u) {
    if (u >= 1.0) return -std::numeric_limits<double>::infinity();
    return f(u / (1.0 - u));
  };
  Maximum inner = maximize_on_interval(g, 0.0, 1.0, samples, tol);
  inner.argmax = inner.argmax / (1.0 - inner.argmax);
  if (limit > inner.value) {
    return {std::numeric_limits<double>::infinity(), limit};
  }
  return inner;
}

}  // namespace kdvbbm
