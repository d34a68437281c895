#pragma once

#include <span>
#include <vector>

namespace fockband {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.1415926535897932384626433832795;

// Uniform grid on the torus (-pi, pi]^nu.  Axis node k is
// -pi + 2*pi*(k+1)/n for k = 0..n-1, so pi itself is always the last node.
struct TorusGrid {
  int nu = 1;
  int n = 12;
  std::vector<double> axis;  // n per-axis nodes, strictly increasing

  int points() const;     // n^nu, the number of nodes of T^nu
  double weight() const;  // quadrature weight per node, (2*pi/n)^nu

  double axis_node(int k) const { return axis[static_cast<size_t>(k)]; }
  // Angles of grid point i of T^nu (row-major over the nu axes).
  std::vector<double> node(int i) const;
  double node1(int i) const;  // nu == 1 shortcut
  int pi_index() const;       // index of the node (pi,...,pi)
};

TorusGrid make_grid(int nu, int n);

// Flat indices into sampled arrays of functions on (T^nu)^2 and (T^nu)^3,
// where N = grid.points().
inline int flat2(int N, int i, int j) { return i * N + j; }
inline int flat3(int N, int i, int j, int k) { return (i * N + j) * N + k; }

// Rectangle rule over T^nu; exact for trig polynomials of degree < n and
// spectrally accurate for smooth periodic integrands.
double quad_integrate(const TorusGrid& grid, std::span<const double> samples);

// The lattice dispersion nu - sum_i cos(t_i).
double dispersion(std::span<const double> t);

}  // namespace fockband
