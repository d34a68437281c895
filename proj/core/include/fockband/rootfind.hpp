#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace fockband {

// Bisection on [a, b]; requires f(a) and f(b) of opposite sign.  Refines to
// interval width <= xtol and returns the midpoint.
double bisect(const std::function<double(double)>& f, double a, double b,
              double xtol);

// Root of a function known to be strictly monotone on the open interval
// (a, b); endpoints are probed at a+guard / b-guard.  Returns nothing when
// there is no sign change.
std::optional<double> monotone_root(const std::function<double(double)>& f,
                                    double a, double b, double guard,
                                    double xtol);

// All roots found by a sign-change scan on `steps` equal subintervals of
// (a, b) followed by bisection.  Catches every simple root separated by more
// than (b-a)/steps.
std::vector<double> scan_roots(const std::function<double(double)>& f,
                               double a, double b, int steps, double xtol);

}  // namespace fockband
