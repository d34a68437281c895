#pragma once

#include <span>
#include <vector>

namespace fockband {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

// A sorted union of disjoint closed intervals plus isolated points.  Items
// closer than merge_tol are merged; a merged item of zero width stays a
// point.  Used for spectra, bands and branch sets.
class BandSet {
 public:
  explicit BandSet(double merge_tol = 1e-9) : merge_tol_(merge_tol) {}

  void add(double lo, double hi);
  void add_point(double x);
  void add(const BandSet& other);

  const std::vector<Interval>& intervals() const { return intervals_; }
  const std::vector<double>& points() const { return points_; }
  double merge_tol() const { return merge_tol_; }

  bool empty() const { return intervals_.empty() && points_.empty(); }
  double min() const;
  double max() const;
  double distance(double x) const;  // 0 inside, +inf if empty
  bool contains(double x, double tol = 0.0) const;
  // Every point of `other` within tol of this set.
  bool covers(const BandSet& other, double tol) const;

  // Maximal open subintervals of (lo, hi) not meeting the set, each end
  // pulled in by `guard`.  Isolated points split components.
  std::vector<Interval> complement(double lo, double hi, double guard) const;

 private:
  void normalize();

  double merge_tol_;
  std::vector<Interval> intervals_;
  std::vector<double> points_;
  std::vector<Interval> pending_;
};

// Symmetric Hausdorff distance; exact (gap-midpoint candidates, no sampling).
double hausdorff(const BandSet& a, const BandSet& b);
double hausdorff(std::span<const double> pts, const BandSet& b);

// The four branches of the essential spectrum.
struct BranchDecomposition {
  BandSet four;  // [m, M]
  BandSet three;
  BandSet two1;
  BandSet two2;
};

}  // namespace fockband
