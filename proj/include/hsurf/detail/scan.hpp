#pragma once

#include <cmath>
#include <limits>

namespace hsurf {

template <typename F>
double bisect(F&& f, double a, double b, double tol) {
  double fa = f(a);
  if (fa == 0.0) return a;
  if (f(b) == 0.0) return b;
  while (std::abs(b - a) > tol) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

namespace detail {

template <typename F>
Minimum golden(F&& f, double a, double b) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && std::abs(b - a) > 1e-13; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? Minimum{c, fc} : Minimum{d, fd};
}

}  // namespace detail

template <typename F>
Minimum grid_minimize(F&& f, double lo, double hi, int grid) {
  const double step = (hi - lo) / grid;
  Minimum best{lo, std::numeric_limits<double>::infinity()};
  double prev2 = std::numeric_limits<double>::infinity();
  double prev = f(lo);
  if (prev < best.value) best = {lo, prev};
  for (int i = 1; i <= grid + 1; ++i) {
    const double cur = i <= grid ? f(lo + i * step) : std::numeric_limits<double>::infinity();
    if (i <= grid && cur < best.value) best = {lo + i * step, cur};
    // refine every interior local minimum of the grid values
    if (prev <= prev2 && prev <= cur) {
      const double a = lo + std::max(0, i - 2) * step;
      const double b = lo + std::min(grid, i) * step;
      const Minimum m = detail::golden(f, a, b);
      if (m.value < best.value) best = m;
    }
    prev2 = prev;
    prev = cur;
  }
  return best;
}

}  // namespace hsurf
