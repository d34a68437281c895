#include "fockband/rootfind.hpp"

#include <cmath>
#include <stdexcept>

namespace fockband {

double bisect(const std::function<double(double)>& f, double a, double b,
              double xtol) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw std::invalid_argument("bisect: no sign change on bracket");
  while (b - a > xtol) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;  // hit double resolution
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

std::optional<double> monotone_root(const std::function<double(double)>& f,
                                    double a, double b, double guard,
                                    double xtol) {
  const double lo = a + guard;
  const double hi = b - guard;
  if (!(lo < hi)) return std::nullopt;
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  return bisect(f, lo, hi, xtol);
}

std::vector<double> scan_roots(const std::function<double(double)>& f,
                               double a, double b, int steps, double xtol) {
  std::vector<double> roots;
  if (!(a < b) || steps < 1) return roots;
  const double h = (b - a) / steps;
  double x_prev = a;
  double f_prev = f(a);
  for (int i = 1; i <= steps; ++i) {
    const double x = (i == steps) ? b : a + i * h;
    const double fx = f(x);
    if (f_prev == 0.0) {
      roots.push_back(x_prev);
    } else if (fx != 0.0 && (f_prev > 0.0) != (fx > 0.0)) {
      roots.push_back(bisect(f, x_prev, x, xtol));
    }
    x_prev = x;
    f_prev = fx;
  }
  if (f_prev == 0.0) roots.push_back(b);
  return roots;
}

}  // namespace fockband
