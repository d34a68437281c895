#pragma once

#include <utility>
#include <vector>

#include "fockband/band_set.hpp"
#include "fockband/determinant.hpp"
#include "fockband/problem.hpp"

namespace fockband {

// Channel-level spectral predictions: fiber bands, discrete fiber
// eigenvalues from determinant roots, the branch sets, the channel spectra
// and the essential spectrum of H.  Closures of the parameterized root sets
// are approximated by sampling on the grid and interval-merging.
class ChannelAnalyzer {
 public:
  explicit ChannelAnalyzer(const ModelProblem& problem,
                           double merge_tol = 1e-9);

  const ModelProblem& problem() const { return *pb_; }
  const DeterminantEvaluator& evaluator() const { return det_; }
  double merge_tol() const { return merge_tol_; }

  Interval band3(int ip, int iq) const { return det_.band3(ip, iq); }
  std::vector<double> disc3(int ip, int iq) const { return det_.disc3(ip, iq); }

  const BandSet& ess_fiber12(int ip) const { return det_.fiber_ess(ip); }

  // Roots of Delta1(p;.) and Delta2(p;.) on the complement of
  // ess_fiber12(p): Delta1 by monotone bisection per component, Delta2 by a
  // 400-point sign-change scan per component.
  std::pair<std::vector<double>, std::vector<double>> disc12(int ip) const;

  // sigma(H_1), sigma(H_2), sigma(H_3) per the channel-spectrum equalities.
  BandSet channel_spectrum(int which) const;

  struct EssentialResult {
    BandSet essential;
    BranchDecomposition branches;
  };
  EssentialResult essential_spectrum() const;

  // min sigma_ess(H) = min(min sigma(H_1), min sigma(H_2)).
  double hwz_min() const;

 private:
  BandSet four_branch() const;
  BandSet three_branch() const;
  BandSet two_branch(int which) const;  // 1 or 2

  const ModelProblem* pb_;
  DeterminantEvaluator det_;
  double merge_tol_;
};

}  // namespace fockband
