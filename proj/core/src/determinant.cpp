#include "fockband/determinant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fockband/rootfind.hpp"

namespace fockband {

namespace {

constexpr double kEdgeGuard = 1e-9;  // offset of root brackets from band edges

double max_abs(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

DeterminantEvaluator::DeterminantEvaluator(const ModelProblem& problem)
    : pb_(&problem), n_points_(problem.points()) {
  const int N = n_points_;
  v3sq_.resize(static_cast<size_t>(N));
  v21sq_.resize(static_cast<size_t>(N));
  v22sq_.resize(static_cast<size_t>(N));
  v2sq_.resize(static_cast<size_t>(N));
  v2v22_.resize(static_cast<size_t>(N));
  for (int k = 0; k < N; ++k) {
    const auto s = static_cast<size_t>(k);
    v3sq_[s] = pb_->v3[s] * pb_->v3[s];
    v21sq_[s] = pb_->v21[s] * pb_->v21[s];
    v22sq_[s] = pb_->v22[s] * pb_->v22[s];
    v2sq_[s] = pb_->v2[s] * pb_->v2[s];
    v2v22_[s] = pb_->v2[s] * pb_->v22[s];
  }

  m3_.resize(static_cast<size_t>(N) * static_cast<size_t>(N));
  bigm3_.resize(m3_.size());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double lo = pb_->w3[static_cast<size_t>(flat3(N, i, j, 0))];
      double hi = lo;
      for (int k = 1; k < N; ++k) {
        const double v = pb_->w3[static_cast<size_t>(flat3(N, i, j, k))];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      m3_[static_cast<size_t>(flat2(N, i, j))] = lo;
      bigm3_[static_cast<size_t>(flat2(N, i, j))] = hi;
    }

  double wlo = pb_->w0;
  double whi = pb_->w0;
  for (const auto* arr : {&pb_->w1, &pb_->w2, &pb_->w3}) {
    for (double x : *arr) {
      wlo = std::min(wlo, x);
      whi = std::max(whi, x);
    }
  }
  const double vol = std::sqrt(std::pow(kTwoPi, pb_->grid.nu));
  const double pad =
      2.0 * (vol * (max_abs(pb_->v1) + max_abs(pb_->v2) + max_abs(pb_->v3) +
                    max_abs(pb_->v21) + max_abs(pb_->v22)) +
             1.0);
  box_ = {wlo - pad, whi + pad};

  ess_cache_.resize(static_cast<size_t>(N));
  ess_swapped_cache_.resize(static_cast<size_t>(N));
}

Interval DeterminantEvaluator::band3(int ip, int iq) const {
  const auto idx = static_cast<size_t>(flat2(n_points_, ip, iq));
  return {m3_[idx], bigm3_[idx]};
}

double DeterminantEvaluator::delta3_unchecked(int ip, int iq, double z) const {
  const int N = n_points_;
  double sum = 0.0;
  const size_t base = static_cast<size_t>(flat3(N, ip, iq, 0));
  for (int k = 0; k < N; ++k)
    sum += v3sq_[static_cast<size_t>(k)] / (pb_->w3[base + static_cast<size_t>(k)] - z);
  return pb_->w2[static_cast<size_t>(flat2(N, ip, iq))] - z - pb_->weight() * sum;
}

double DeterminantEvaluator::delta3(int ip, int iq, double z) const {
  const Interval band = band3(ip, iq);
  if (z >= band.lo - kBandGuard && z <= band.hi + kBandGuard)
    throw std::domain_error(
        "delta3: z = " + std::to_string(z) + " inside the band [" +
        std::to_string(band.lo) + ", " + std::to_string(band.hi) + "]");
  return delta3_unchecked(ip, iq, z);
}

std::vector<double> DeterminantEvaluator::disc3(int ip, int iq) const {
  const Interval band = band3(ip, iq);
  const double scale =
      std::max({1.0, std::abs(band.lo), std::abs(band.hi),
                std::abs(pb_->w2[static_cast<size_t>(flat2(n_points_, ip, iq))])});
  const double cap = 1e6 * scale;
  auto f = [&](double z) { return delta3_unchecked(ip, iq, z); };

  std::vector<double> roots;
  // Below the band: Delta3 decreases from +inf; a root exists iff the value
  // just left of the edge is negative.  Expand the bracket geometrically.
  {
    const double edge = band.lo - kEdgeGuard;
    if (f(edge) < 0.0) {
      double width = 1.0;
      while (width <= cap && f(edge - width) < 0.0) width *= 2.0;
      if (width <= cap)
        roots.push_back(bisect(f, edge - width, edge, kRootWidth));
    }
  }
  // Above the band: Delta3 decreases to -inf; a root exists iff the value
  // just right of the edge is positive.
  {
    const double edge = band.hi + kEdgeGuard;
    if (f(edge) > 0.0) {
      double width = 1.0;
      while (width <= cap && f(edge + width) > 0.0) width *= 2.0;
      if (width <= cap)
        roots.push_back(bisect(f, edge, edge + width, kRootWidth));
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

const BandSet& DeterminantEvaluator::fiber_ess(int ip) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto& slot = ess_cache_[static_cast<size_t>(ip)];
  if (!slot) {
    auto set = std::make_unique<BandSet>();
    for (int q = 0; q < n_points_; ++q) {
      const Interval band = band3(ip, q);
      set->add(band.lo, band.hi);
      for (double r : disc3(ip, q)) set->add_point(r);
    }
    slot = std::move(set);
  }
  return *slot;
}

const BandSet& DeterminantEvaluator::fiber_ess_swapped(int ip) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto& slot = ess_swapped_cache_[static_cast<size_t>(ip)];
  if (!slot) {
    auto set = std::make_unique<BandSet>();
    for (int q = 0; q < n_points_; ++q) {
      const Interval band = band3(q, ip);
      set->add(band.lo, band.hi);
      for (double r : disc3(q, ip)) set->add_point(r);
    }
    slot = std::move(set);
  }
  return *slot;
}

namespace {
void check_outside(const BandSet& ess, double z, const char* what) {
  if (ess.contains(z, kBandGuard))
    throw std::domain_error(std::string(what) + ": z = " + std::to_string(z) +
                            " inside the fiber essential spectrum");
}
}  // namespace

double DeterminantEvaluator::delta1(int ip, double z) const {
  check_outside(fiber_ess(ip), z, "delta1");
  double sum = 0.0;
  for (int s = 0; s < n_points_; ++s)
    sum += v21sq_[static_cast<size_t>(s)] / delta3_unchecked(ip, s, z);
  return 1.0 - pb_->weight() * sum;
}

double DeterminantEvaluator::delta2(int ip, double z) const {
  check_outside(fiber_ess(ip), z, "delta2");
  const double w = pb_->weight();
  double s22 = 0.0, s2 = 0.0, s_cross = 0.0;
  for (int s = 0; s < n_points_; ++s) {
    const double d = delta3_unchecked(ip, s, z);
    s22 += v22sq_[static_cast<size_t>(s)] / d;
    s2 += v2sq_[static_cast<size_t>(s)] / d;
    s_cross += v2v22_[static_cast<size_t>(s)] / d;
  }
  const double first = 1.0 - w * s22;
  const double second = pb_->w1[static_cast<size_t>(ip)] - z - w * s2;
  const double cross = w * s_cross;
  return first * second - cross * cross;
}

double DeterminantEvaluator::a11(int ip, double z) const {
  double sum = 0.0;
  for (int s = 0; s < n_points_; ++s)
    sum += v2sq_[static_cast<size_t>(s)] / delta3_unchecked(ip, s, z);
  return pb_->w1[static_cast<size_t>(ip)] - z - pb_->weight() * sum;
}

double DeterminantEvaluator::a13(int ip, double z) const {
  double sum = 0.0;
  for (int s = 0; s < n_points_; ++s)
    sum += v2v22_[static_cast<size_t>(s)] / delta3_unchecked(ip, s, z);
  return pb_->weight() * sum;
}

double DeterminantEvaluator::a22(int ip, double z) const {
  double sum = 0.0;
  for (int s = 0; s < n_points_; ++s)
    sum += v21sq_[static_cast<size_t>(s)] / delta3_unchecked(s, ip, z);
  return 1.0 - pb_->weight() * sum;
}

double DeterminantEvaluator::a33(int ip, double z) const {
  double sum = 0.0;
  for (int s = 0; s < n_points_; ++s)
    sum += v22sq_[static_cast<size_t>(s)] / delta3_unchecked(ip, s, z);
  return 1.0 - pb_->weight() * sum;
}

CoeffMatrix DeterminantEvaluator::coeff_matrix(int ip, double z) const {
  check_outside(fiber_ess(ip), z, "coeff_matrix");
  check_outside(fiber_ess_swapped(ip), z, "coeff_matrix");
  CoeffMatrix c;
  c.a(0, 0) = 1.0;
  c.a(1, 1) = a11(ip, z);
  c.a(1, 3) = c.a(3, 1) = a13(ip, z);
  c.a(2, 2) = a22(ip, z);
  c.a(3, 3) = a33(ip, z);
  return c;
}

CoeffMatrix DeterminantEvaluator::coeff_inverse(int ip, double z) const {
  const CoeffMatrix c = coeff_matrix(ip, z);
  const double d2 = c.a(1, 1) * c.a(3, 3) - c.a(1, 3) * c.a(1, 3);
  const double d1 = c.a(2, 2);
  if (std::abs(d1 * d2) <= kNearSingular)
    throw std::domain_error(
        "coeff_inverse: near-singular at z = " + std::to_string(z) +
        " (z is near a two-particle branch point)");
  CoeffMatrix b;
  b.a(0, 0) = 1.0;
  b.a(1, 1) = c.a(3, 3) / d2;
  b.a(1, 3) = b.a(3, 1) = -c.a(1, 3) / d2;
  b.a(2, 2) = 1.0 / d1;
  b.a(3, 3) = c.a(1, 1) / d2;
  return b;
}

}  // namespace fockband
