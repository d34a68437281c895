#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fockband/oracle.hpp"
#include "fockband/problem.hpp"

namespace fockband {

// The 2x2 block split of the assembled operator: A on sectors {0,1}, C on
// sectors {2,3}, B the rectangular coupling (only the (1,2) component is
// nonzero).  Reassembling [[A,B],[B^T,C]] reproduces the input bit-exactly.
struct PencilSplit {
  DenseSymOperator block_a;
  DenseSymOperator block_c;
  Eigen::MatrixXd block_b;  // dim(A) x dim(C)
  Eigen::VectorXd spec_c;   // eigenvalues of C, ascending
  Eigen::MatrixXd c_vectors;  // eigenvectors of C, columns matching spec_c
  Eigen::MatrixXd bu;         // block_b * c_vectors, cached for eval_L

  // Boundary quantities: spectrum edges of the full operator, the top of
  // sigma(C) and the clustered-minimum surrogate for a_ess(A).
  double a_h = 0.0;
  double b_h = 0.0;
  double b_c = 0.0;
  double a_ess_a = 0.0;
};

PencilSplit split_blocks(const DenseSymOperator& full_h,
                         const ModelProblem& pb);

// Aborts (throws std::runtime_error) unless sigma(C) < a_ess(A) with the
// stated margin; the variational theorems assume this hypothesis.
void require_gap_hypothesis(const PencilSplit& split, double margin = 0.0);

// L(lambda) = A - lambda I - B (C - lambda I)^{-1} B^T; requires lambda to
// stay 1e-10 away from sigma(C).
Eigen::MatrixXd eval_L(const PencilSplit& split, double lambda);

struct RayleighResult {
  enum class Kind : std::uint8_t { root, plus_inf, minus_inf };
  Kind kind = Kind::root;
  double value = 0.0;
  int iterations = 0;
};

// The extended Rayleigh functional p(x) on [alpha, beta]: the unique root of
// phi_x(lambda) = (L(lambda)x, x) when it changes sign, else the +/-inf
// marker.  Uniqueness comes from the strict decrease of phi_x.
RayleighResult rayleigh(const PencilSplit& split, const Eigen::VectorXd& x,
                        double alpha, double beta);

// kappa_alpha: negative-inertia count of L(alpha).
int kappa_alpha(const PencilSplit& split, double alpha);

// All lambda in (lo, hi) where an eigenvalue curve of L crosses zero;
// located by sign tracking of the sorted eigenvalue curves on a fixed scan
// plus bisection.  Every curve is strictly decreasing, so sorted-index
// tracking is sound.
std::vector<double> pencil_spectrum(const PencilSplit& split, double lo,
                                    double hi, int scan_steps = 200);

struct MinmaxCheck {
  double lambda = 0.0;
  double p_of_x = 0.0;
  bool rayleigh_matches = false;  // p(x_i) = lambda_i
  bool span_bound_holds = false;  // p(x) <= lambda_i + tol on span{x_1..x_i}
};

struct MinmaxReport {
  std::vector<MinmaxCheck> checks;
  int kappa_at_lo = 0;
  bool all_pass = true;
};

// Checks the attainment content of the min-max characterization for the
// eigenpairs of the full operator inside (lo, hi): p(x_i) = lambda_i and
// p(x) <= lambda_i + tol for random unit vectors in span{x_1..x_i}.
MinmaxReport minmax_verify(const PencilSplit& split,
                           const DenseSymOperator& full_h, double lo,
                           double hi, int random_draws = 100,
                           double tol = 1e-8, unsigned seed = 0x5eed);

}  // namespace fockband
