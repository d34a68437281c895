#include "fockband/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fockband/parallel.hpp"
#include "fockband/rootfind.hpp"

namespace fockband {

namespace {
constexpr double kComplementGuard = 1e-8;
constexpr int kDelta2ScanSteps = 400;
}  // namespace

ChannelAnalyzer::ChannelAnalyzer(const ModelProblem& problem, double merge_tol)
    : pb_(&problem), det_(problem), merge_tol_(merge_tol) {}

std::pair<std::vector<double>, std::vector<double>> ChannelAnalyzer::disc12(
    int ip) const {
  const BandSet& ess = det_.fiber_ess(ip);
  const Interval box = det_.spectral_box();

  std::vector<double> roots1, roots2;
  for (const Interval& comp : ess.complement(box.lo, box.hi, kComplementGuard)) {
    // Delta1 is strictly decreasing on every component of the resolvent
    // set of the fiber, so it has at most one root there.
    auto f1 = [&](double z) { return det_.delta1(ip, z); };
    if (auto r = monotone_root(f1, comp.lo, comp.hi, 0.0, kRootWidth))
      roots1.push_back(*r);

    auto f2 = [&](double z) { return det_.delta2(ip, z); };
    for (double r : scan_roots(f2, comp.lo, comp.hi, kDelta2ScanSteps, kRootWidth))
      roots2.push_back(r);
  }
  std::sort(roots1.begin(), roots1.end());
  std::sort(roots2.begin(), roots2.end());
  return {std::move(roots1), std::move(roots2)};
}

BandSet ChannelAnalyzer::four_branch() const {
  double lo = pb_->w3.front();
  double hi = lo;
  for (double x : pb_->w3) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  BandSet set(merge_tol_);
  set.add(lo, hi);
  return set;
}

BandSet ChannelAnalyzer::three_branch() const {
  const int N = pb_->points();
  std::vector<std::vector<double>> rows(static_cast<size_t>(N));
  parallel_for(N, [&](int i) {
    auto& row = rows[static_cast<size_t>(i)];
    for (int j = 0; j < N; ++j)
      for (double r : det_.disc3(i, j)) row.push_back(r);
  });
  BandSet set(merge_tol_);
  for (const auto& row : rows)
    for (double r : row) set.add_point(r);
  return set;
}

BandSet ChannelAnalyzer::two_branch(int which) const {
  if (which != 1 && which != 2)
    throw std::invalid_argument("two_branch: index must be 1 or 2");
  const int N = pb_->points();
  std::vector<std::vector<double>> rows(static_cast<size_t>(N));
  parallel_for(N, [&](int i) {
    auto pair = disc12(i);
    rows[static_cast<size_t>(i)] =
        which == 1 ? std::move(pair.first) : std::move(pair.second);
  });
  BandSet set(merge_tol_);
  for (const auto& row : rows)
    for (double r : row) set.add_point(r);
  return set;
}

BandSet ChannelAnalyzer::channel_spectrum(int which) const {
  BandSet set(merge_tol_);
  set.add(four_branch());
  set.add(three_branch());
  if (which == 1 || which == 2) set.add(two_branch(which));
  else if (which != 3)
    throw std::invalid_argument("channel_spectrum: index must be 1, 2 or 3");
  return set;
}

ChannelAnalyzer::EssentialResult ChannelAnalyzer::essential_spectrum() const {
  EssentialResult out;
  out.branches.four = four_branch();
  out.branches.three = three_branch();
  out.branches.two1 = two_branch(1);
  out.branches.two2 = two_branch(2);
  BandSet set(merge_tol_);
  set.add(out.branches.four);
  set.add(out.branches.three);
  set.add(out.branches.two1);
  set.add(out.branches.two2);
  out.essential = std::move(set);
  return out;
}

double ChannelAnalyzer::hwz_min() const {
  const EssentialResult ess = essential_spectrum();
  double channel_min = ess.branches.four.min();
  if (!ess.branches.three.empty())
    channel_min = std::min(channel_min, ess.branches.three.min());
  if (!ess.branches.two1.empty())
    channel_min = std::min(channel_min, ess.branches.two1.min());
  if (!ess.branches.two2.empty())
    channel_min = std::min(channel_min, ess.branches.two2.min());
  const double ess_min = ess.essential.min();
  if (std::abs(channel_min - ess_min) >
      1e-9 * std::max(1.0, std::abs(ess_min)))
    throw std::logic_error("hwz_min: channel minima disagree with the merged set");
  return ess_min;
}

}  // namespace fockband
