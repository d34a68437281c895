#include "fockband/band_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fockband {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void BandSet::add(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("BandSet: interval with lo > hi");
  pending_.push_back({lo, hi});
  normalize();
}

void BandSet::add_point(double x) { add(x, x); }

void BandSet::add(const BandSet& other) {
  for (const auto& iv : other.intervals_) pending_.push_back(iv);
  for (double x : other.points_) pending_.push_back({x, x});
  normalize();
}

void BandSet::normalize() {
  std::vector<Interval> items;
  items.reserve(intervals_.size() + points_.size() + pending_.size());
  for (const auto& iv : intervals_) items.push_back(iv);
  for (double x : points_) items.push_back({x, x});
  for (const auto& iv : pending_) items.push_back(iv);
  pending_.clear();
  intervals_.clear();
  points_.clear();
  if (items.empty()) return;

  std::sort(items.begin(), items.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  merged.push_back(items.front());
  for (size_t i = 1; i < items.size(); ++i) {
    Interval& cur = merged.back();
    if (items[i].lo <= cur.hi + merge_tol_) {
      cur.hi = std::max(cur.hi, items[i].hi);
    } else {
      merged.push_back(items[i]);
    }
  }
  for (const auto& iv : merged) {
    if (iv.width() > 0.0)
      intervals_.push_back(iv);
    else
      points_.push_back(iv.lo);
  }
}

double BandSet::min() const {
  double m = kInf;
  if (!intervals_.empty()) m = intervals_.front().lo;
  if (!points_.empty()) m = std::min(m, points_.front());
  return m;
}

double BandSet::max() const {
  double m = -kInf;
  if (!intervals_.empty()) m = intervals_.back().hi;
  if (!points_.empty()) m = std::max(m, points_.back());
  return m;
}

double BandSet::distance(double x) const {
  double d = kInf;
  for (const auto& iv : intervals_) {
    if (x < iv.lo)
      d = std::min(d, iv.lo - x);
    else if (x > iv.hi)
      d = std::min(d, x - iv.hi);
    else
      return 0.0;
  }
  for (double p : points_) d = std::min(d, std::abs(x - p));
  return d;
}

bool BandSet::contains(double x, double tol) const {
  return distance(x) <= tol;
}

bool BandSet::covers(const BandSet& other, double tol) const {
  for (double p : other.points_)
    if (distance(p) > tol) return false;
  // Inflate our items by tol and sweep over each interval of `other`.
  std::vector<Interval> inflated;
  for (const auto& iv : intervals_) inflated.push_back({iv.lo - tol, iv.hi + tol});
  for (double p : points_) inflated.push_back({p - tol, p + tol});
  std::sort(inflated.begin(), inflated.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& target : other.intervals_) {
    double cur = target.lo;
    for (const auto& iv : inflated) {
      if (iv.lo > cur) break;
      if (iv.hi > cur) cur = iv.hi;
      if (cur >= target.hi) break;
    }
    if (cur < target.hi) return false;
  }
  return true;
}

std::vector<Interval> BandSet::complement(double lo, double hi,
                                          double guard) const {
  std::vector<Interval> items;
  for (const auto& iv : intervals_) items.push_back(iv);
  for (double p : points_) items.push_back({p, p});
  std::sort(items.begin(), items.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

  std::vector<Interval> gaps;
  double cur = lo;
  for (const auto& iv : items) {
    if (iv.hi < lo) continue;
    if (iv.lo >= hi) break;
    if (iv.lo > cur) gaps.push_back({cur, iv.lo});
    cur = std::max(cur, iv.hi);
  }
  if (cur < hi) gaps.push_back({cur, hi});

  std::vector<Interval> out;
  for (const auto& g : gaps) {
    Interval s{g.lo + guard, g.hi - guard};
    if (s.lo < s.hi) out.push_back(s);
  }
  return out;
}

namespace {

std::vector<Interval> all_items(const BandSet& s) {
  std::vector<Interval> items;
  for (const auto& iv : s.intervals()) items.push_back(iv);
  for (double p : s.points()) items.push_back({p, p});
  std::sort(items.begin(), items.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return items;
}

double directed_hausdorff(const BandSet& a, const BandSet& b) {
  if (a.empty()) return 0.0;
  if (b.empty()) return kInf;
  std::vector<double> cands;
  for (const auto& iv : a.intervals()) {
    cands.push_back(iv.lo);
    cands.push_back(iv.hi);
  }
  for (double p : a.points()) cands.push_back(p);
  // Inside an interval of `a`, the distance to `b` peaks at midpoints of
  // the gaps of `b`.
  const auto items_b = all_items(b);
  for (size_t k = 0; k + 1 < items_b.size(); ++k) {
    const double m = 0.5 * (items_b[k].hi + items_b[k + 1].lo);
    for (const auto& iv : a.intervals())
      if (m > iv.lo && m < iv.hi) cands.push_back(m);
  }
  double d = 0.0;
  for (double c : cands) d = std::max(d, b.distance(c));
  return d;
}

}  // namespace

double hausdorff(const BandSet& a, const BandSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double hausdorff(std::span<const double> pts, const BandSet& b) {
  BandSet tmp(0.0);
  for (double x : pts) tmp.add_point(x);
  return hausdorff(tmp, b);
}

}  // namespace fockband
