#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Core>

#include "fockband/band_set.hpp"
#include "fockband/problem.hpp"

namespace fockband {

// Guard margin against band edges and the near-singularity threshold, both
// pinned at double-precision conditioning scale.
inline constexpr double kBandGuard = 1e-12;
inline constexpr double kNearSingular = 1e-12;
inline constexpr double kRootWidth = 1e-10;

// The 4x4 coefficient matrix A(p; z) (or its inverse) with the fixed zero
// pattern: diagonal except for the symmetric (1,3) coupling.
struct CoeffMatrix {
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  double det() const { return a(2, 2) * (a(1, 1) * a(3, 3) - a(1, 3) * a(1, 3)); }
};

// Cached evaluator of the Fredholm determinants Delta3(p,q;z), Delta1(p;z),
// Delta2(p;z) and of A(p;z).  Argument orders are transcribed literally from
// the defining formulas: Delta1/Delta2 integrate Delta3(p,s;z) while the
// a22 entry integrates Delta3(s,p;z); the two coincide when w2 and w3 are
// symmetric in their first two arguments.
class DeterminantEvaluator {
 public:
  explicit DeterminantEvaluator(const ModelProblem& problem);

  const ModelProblem& problem() const { return *pb_; }

  // Essential band [m3(p,q), M3(p,q)] of the fiber h3(p,q).
  Interval band3(int ip, int iq) const;

  // Checked against band3 with the guard margin; throws std::domain_error
  // inside the band.
  double delta3(int ip, int iq, double z) const;

  // All real roots of Delta3(p,q;.) outside the band: at most one per side
  // by strict monotonicity, found by bracket expansion plus bisection.
  std::vector<double> disc3(int ip, int iq) const;

  // sigma_ess(h1(p)) = sigma_ess(h2(p)): the closure over the q-grid of
  // sigma(h3(p,q)) = band3(p,q) together with the Delta3 roots.
  const BandSet& fiber_ess(int ip) const;
  // Same union with the roles of the first two arguments of w2/w3 swapped,
  // i.e. over sigma(h3(q,p)); this is the admissible set for the kernels
  // written with Delta3(s,p;z).
  const BandSet& fiber_ess_swapped(int ip) const;

  // Checked against fiber_ess(p); throw std::domain_error inside.
  double delta1(int ip, double z) const;
  double delta2(int ip, double z) const;

  CoeffMatrix coeff_matrix(int ip, double z) const;
  // Inverse via the b-entry formulas; requires |Delta1*Delta2| above the
  // near-singularity threshold.
  CoeffMatrix coeff_inverse(int ip, double z) const;

  // A safe interval containing every spectral quantity of the problem.
  Interval spectral_box() const { return box_; }

 private:
  double delta3_unchecked(int ip, int iq, double z) const;
  double a11(int ip, double z) const;
  double a13(int ip, double z) const;
  double a22(int ip, double z) const;
  double a33(int ip, double z) const;

  const ModelProblem* pb_;
  int n_points_;
  std::vector<double> v3sq_, v21sq_, v22sq_, v2sq_, v2v22_;
  std::vector<double> m3_, bigm3_;  // band edges per (p,q), flat2 layout
  Interval box_;

  mutable std::mutex cache_mutex_;
  mutable std::vector<std::unique_ptr<BandSet>> ess_cache_, ess_swapped_cache_;
};

}  // namespace fockband
