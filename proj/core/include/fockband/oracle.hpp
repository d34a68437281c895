#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "fockband/band_set.hpp"
#include "fockband/problem.hpp"

namespace fockband {

// Index layout of a dense operator assembled from a subset of the Fock
// sectors 0..3 (sector k has n^(k*nu) basis states... here sizes are given
// explicitly per assembled operator).
struct SectorLayout {
  std::vector<int> sectors;  // which Fock sectors, ascending
  std::vector<int> sizes;    // per listed sector
  std::vector<int> offsets;  // cumulative
  int dim = 0;

  static SectorLayout make(std::vector<int> sectors, std::vector<int> sizes);
  int offset_of(int sector) const;  // -1 if absent
  int size_of(int sector) const;
};

// Dense real symmetric discretization.  Assembled symmetrically entry by
// entry, never symmetrized after the fact, with the half-weight basis
// scaling: sector-k coordinates carry weight^(k/2).
struct DenseSymOperator {
  Eigen::MatrixXd mat;
  SectorLayout layout;
  int dim() const { return layout.dim; }
};

inline constexpr int kDefaultDimCap = 20000;

// The full operator on the four-sector cut subspace.
DenseSymOperator assemble_full(const ModelProblem& pb,
                               int dim_cap = kDefaultDimCap);

// Channel operators: which=1 (sectors 2,3; H22 without V22), which=3
// (sectors 2,3; bare H22^0), which=2 (sectors 1,2,3; H22 without V21).
DenseSymOperator assemble_channel(int which, const ModelProblem& pb,
                                  int dim_cap = kDefaultDimCap);

enum class FiberKind { h3, h1, h2 };

// Fiber operators h3(p,q), h1(p), h2(p); iq is ignored except for h3.
DenseSymOperator assemble_fiber(FiberKind kind, int ip, int iq,
                                const ModelProblem& pb,
                                int dim_cap = kDefaultDimCap);

struct EigResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // empty unless requested
};

EigResult eig_sym(const DenseSymOperator& op, bool with_vectors = false);

// Finite-dimensional surrogate for essential vs discrete spectrum: an
// eigenvalue is "clustered" when within `tol` of the predicted set.
struct SpectrumClassification {
  std::vector<double> isolated;
  std::vector<double> clustered;
  double tol = 0.0;
  double hausdorff_clustered = 0.0;  // clustered set vs predicted set
};

SpectrumClassification classify_spectrum(const Eigen::VectorXd& eigs,
                                         const BandSet& predicted, double tol);

// Default cluster tolerance: twice the widest band over the expected number
// of cluster points, floored at 1e-6.
double default_cluster_tol(const BandSet& predicted, int expected_count);

}  // namespace fockband
