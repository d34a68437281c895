#pragma once

#include <vector>

#include <Eigen/Core>

#include "fockband/band_set.hpp"
#include "fockband/channel.hpp"
#include "fockband/oracle.hpp"
#include "fockband/problem.hpp"

namespace fockband {

// Two construction routes for the reduced system.  literal transcribes the
// closed-form a_ij / K_ij kernel formulas; derived performs the elimination steps on
// the assembled operator (the Delta3 diagonal is recovered from the sector-3
// Schur complement).  The derived route is exact finite-dimensional algebra,
// so its root set equals the spectrum of the assembled operator off the
// channel spectra.
enum class FyMode { literal, derived };

// Discretized A(z), K(z) on the reduced space C + L2 + L2 + L2, with the
// same half-weight coordinate scaling as the oracle layout.
struct ReducedSystem {
  double z = 0.0;
  FyMode mode = FyMode::derived;
  Eigen::MatrixXd A;  // block pattern: diag except the (1,3)/(3,1) coupling
  Eigen::MatrixXd K;  // zero diagonal except the scalar (0,0) entry
  SectorLayout layout;  // reduced sectors 0..3, sizes {1, N, N, N}
};

struct EigvecBundle {
  double z = 0.0;
  Eigen::VectorXd psi;   // (f0, f1, c1, c2), reduced coordinates
  Eigen::VectorXd full;  // (f0, f1, f2, f3) in the oracle layout
  double residual = 0.0;  // ||H f - z f|| / ||f||
};

class FySolver {
 public:
  // Builds the excluded set (union of the three channel spectra) and the
  // assembled full operator once.
  explicit FySolver(const ModelProblem& problem);

  const BandSet& excluded() const { return excluded_; }
  const DenseSymOperator& full_operator() const { return full_; }

  // Throws std::domain_error when z is inside the excluded set (guard
  // margin kBandGuard).
  ReducedSystem reduced_system(double z, FyMode mode = FyMode::derived) const;

  Eigen::MatrixXd t_matrix(double z, FyMode mode = FyMode::derived) const;

  // min over eigenvalues mu of T(z) of |1 - mu|.
  double eig_distance(double z) const;

  // Scans det(I - T(z)) over each interval on a fixed subgrid, refines sign
  // changes by bisection, extracts the null direction and reconstructs the
  // full eigenvector.  Intervals must avoid the excluded set.
  std::vector<EigvecBundle> find_eigenvalues(
      const std::vector<Interval>& search, int scan_steps = 200) const;

  // Reconstructs (f0, f1, f2, f3) from the reduced solution; recomputing
  // c1, c2 from the reconstructed f2 reproduces the inputs.
  Eigen::VectorXd reconstruct(const Eigen::VectorXd& psi, double z) const;

  double residual(const Eigen::VectorXd& full_vec, double z) const;

 private:
  void check_admissible(double z) const;

  const ModelProblem* pb_;
  ChannelAnalyzer chan_;
  BandSet excluded_;
  DenseSymOperator full_;
  SectorLayout reduced_layout_;
};

}  // namespace fockband
