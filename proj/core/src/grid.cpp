#include "fockband/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace fockband {

int TorusGrid::points() const {
  int total = 1;
  for (int a = 0; a < nu; ++a) total *= n;
  return total;
}

double TorusGrid::weight() const { return std::pow(kTwoPi / n, nu); }

std::vector<double> TorusGrid::node(int i) const {
  std::vector<double> angles(static_cast<size_t>(nu));
  for (int a = nu - 1; a >= 0; --a) {
    angles[static_cast<size_t>(a)] = axis[static_cast<size_t>(i % n)];
    i /= n;
  }
  return angles;
}

double TorusGrid::node1(int i) const { return axis[static_cast<size_t>(i)]; }

int TorusGrid::pi_index() const { return points() - 1; }

TorusGrid make_grid(int nu, int n) {
  if (nu < 1 || nu > 2) throw std::invalid_argument("nu must be 1 or 2");
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("n must be even and >= 2");
  TorusGrid g;
  g.nu = nu;
  g.n = n;
  g.axis.resize(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    g.axis[static_cast<size_t>(k)] = -kPi + kTwoPi * (k + 1) / n;
  // The last node is pi by construction; pin it exactly.
  g.axis.back() = kPi;
  return g;
}

double quad_integrate(const TorusGrid& grid, std::span<const double> samples) {
  if (static_cast<int>(samples.size()) != grid.points())
    throw std::invalid_argument("quad_integrate: sample count != grid points");
  double sum = 0.0;
  for (double s : samples) sum += s;
  return grid.weight() * sum;
}

double dispersion(std::span<const double> t) {
  double val = static_cast<double>(t.size());
  for (double ti : t) val -= std::cos(ti);
  return val;
}

}  // namespace fockband
