#include "fockband/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "fockband/rootfind.hpp"

namespace fockband {

namespace {

constexpr double kResolventGuard = 1e-10;
constexpr double kBisectWidth = 1e-10;
constexpr double kAlphaMargin = 1e-8;

double phi(const PencilSplit& split, const Eigen::VectorXd& x, double lambda) {
  return x.dot(eval_L(split, lambda) * x);
}

}  // namespace

PencilSplit split_blocks(const DenseSymOperator& full_h,
                         const ModelProblem& pb) {
  const int N = pb.points();
  const int a_dim = 1 + N;
  const int c_dim = full_h.layout.dim - a_dim;
  if (full_h.layout.dim != 1 + N + N * N + N * N * N)
    throw std::invalid_argument("split_blocks: operator is not a full assembly");

  PencilSplit split;
  split.block_a.layout = SectorLayout::make({0, 1}, {1, N});
  split.block_a.mat = full_h.mat.topLeftCorner(a_dim, a_dim);
  split.block_c.layout = SectorLayout::make({2, 3}, {N * N, N * N * N});
  split.block_c.mat = full_h.mat.bottomRightCorner(c_dim, c_dim);
  split.block_b = full_h.mat.topRightCorner(a_dim, c_dim);

  const EigResult c_eigs = eig_sym(split.block_c, /*with_vectors=*/true);
  split.spec_c = c_eigs.values;
  split.c_vectors = c_eigs.vectors;
  split.bu = split.block_b * split.c_vectors;
  split.b_c = split.spec_c[split.spec_c.size() - 1];

  const EigResult h_eigs = eig_sym(full_h, /*with_vectors=*/false);
  split.a_h = h_eigs.values[0];
  split.b_h = h_eigs.values[h_eigs.values.size() - 1];

  // Finite-dimensional surrogate for the bottom of the essential spectrum of
  // the A block: the smallest eigenvalue classified as clustered against the
  // w1 band.
  const auto [w1_min, w1_max] =
      std::minmax_element(pb.w1.begin(), pb.w1.end());
  BandSet predicted;
  predicted.add(*w1_min, *w1_max);
  const EigResult a_eigs = eig_sym(split.block_a, /*with_vectors=*/false);
  const auto cls = classify_spectrum(a_eigs.values, predicted,
                                     default_cluster_tol(predicted, N));
  split.a_ess_a =
      cls.clustered.empty() ? predicted.min() : cls.clustered.front();
  return split;
}

void require_gap_hypothesis(const PencilSplit& split, double margin) {
  if (!(split.b_c + margin < split.a_ess_a))
    throw std::runtime_error(
        "gap hypothesis violated: max sigma(C) = " + std::to_string(split.b_c) +
        " does not sit below the essential surrogate of A = " +
        std::to_string(split.a_ess_a) + " by margin " + std::to_string(margin));
}

Eigen::MatrixXd eval_L(const PencilSplit& split, double lambda) {
  for (Eigen::Index i = 0; i < split.spec_c.size(); ++i)
    if (std::abs(split.spec_c[i] - lambda) <= kResolventGuard)
      throw std::domain_error("eval_L: lambda = " + std::to_string(lambda) +
                              " too close to sigma(C)");
  const Eigen::VectorXd inv =
      (split.spec_c.array() - lambda).inverse().matrix();
  const Eigen::Index a_dim = split.block_a.mat.rows();
  Eigen::MatrixXd l = split.block_a.mat -
                      lambda * Eigen::MatrixXd::Identity(a_dim, a_dim) -
                      split.bu * inv.asDiagonal() * split.bu.transpose();
  return 0.5 * (l + l.transpose());
}

RayleighResult rayleigh(const PencilSplit& split, const Eigen::VectorXd& x,
                        double alpha, double beta) {
  if (std::abs(x.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("rayleigh: x must be a unit vector");
  if (!(alpha >= split.b_c + kAlphaMargin))
    throw std::domain_error("rayleigh: alpha must exceed max sigma(C)");
  if (!(alpha < beta))
    throw std::invalid_argument("rayleigh: empty interval");

  RayleighResult out;
  double fa = phi(split, x, alpha);
  double fb = phi(split, x, beta);
  if (fa > 0.0 && fb > 0.0) {
    out.kind = RayleighResult::Kind::plus_inf;
    return out;
  }
  if (fa < 0.0 && fb < 0.0) {
    out.kind = RayleighResult::Kind::minus_inf;
    return out;
  }
  if (fa == 0.0) {
    out.value = alpha;
    return out;
  }
  if (fb == 0.0) {
    out.value = beta;
    return out;
  }
  // phi_x is strictly decreasing, so the sign change brackets a unique root.
  double a = alpha, b = beta;
  while (b - a > kBisectWidth) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = phi(split, x, m);
    ++out.iterations;
    if (fm == 0.0) {
      a = b = m;
      break;
    }
    (fm > 0.0 ? a : b) = m;
  }
  out.kind = RayleighResult::Kind::root;
  out.value = 0.5 * (a + b);
  return out;
}

int kappa_alpha(const PencilSplit& split, double alpha) {
  DenseSymOperator op;
  op.layout = split.block_a.layout;
  op.mat = eval_L(split, alpha);
  const Eigen::VectorXd eigs = eig_sym(op).values;
  int count = 0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    if (eigs[i] < 0.0) ++count;
  return count;
}

std::vector<double> pencil_spectrum(const PencilSplit& split, double lo,
                                    double hi, int scan_steps) {
  for (Eigen::Index i = 0; i < split.spec_c.size(); ++i)
    if (split.spec_c[i] >= lo - kResolventGuard &&
        split.spec_c[i] <= hi + kResolventGuard)
      throw std::domain_error("pencil_spectrum: interval meets sigma(C)");
  if (!(lo < hi) || scan_steps < 1) return {};

  auto curves = [&](double lambda) {
    DenseSymOperator op;
    op.layout = split.block_a.layout;
    op.mat = eval_L(split, lambda);
    return eig_sym(op).values;  // ascending
  };

  const Eigen::Index a_dim = split.block_a.mat.rows();
  std::vector<double> roots;
  Eigen::VectorXd prev = curves(lo);
  double x_prev = lo;
  for (int j = 1; j <= scan_steps; ++j) {
    const double x = lo + (hi - lo) * j / scan_steps;
    const Eigen::VectorXd cur = curves(x);
    for (Eigen::Index i = 0; i < a_dim; ++i) {
      // Every eigenvalue curve of L is strictly decreasing, so sorted-index
      // tracking preserves continuity and sign changes go + to -.
      if (prev[i] > 0.0 && cur[i] <= 0.0) {
        auto g = [&](double lambda) { return curves(lambda)[i]; };
        roots.push_back(bisect(g, x_prev, x, kBisectWidth));
      }
    }
    prev = cur;
    x_prev = x;
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) {
                            return std::abs(a - b) < 1e-9;
                          }),
              roots.end());
  return roots;
}

MinmaxReport minmax_verify(const PencilSplit& split,
                           const DenseSymOperator& full_h, double lo,
                           double hi, int random_draws, double tol,
                           unsigned seed) {
  MinmaxReport report;
  report.kappa_at_lo = kappa_alpha(split, lo);

  const EigResult eigs = eig_sym(full_h, /*with_vectors=*/true);
  const Eigen::Index a_dim = split.block_a.mat.rows();
  std::vector<double> lambdas;
  std::vector<Eigen::VectorXd> tops;
  for (Eigen::Index i = 0; i < eigs.values.size(); ++i) {
    const double lambda = eigs.values[i];
    if (lambda <= lo || lambda >= hi) continue;
    lambdas.push_back(lambda);
    tops.push_back(eigs.vectors.col(i).head(a_dim));
  }

  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (size_t i = 0; i < lambdas.size(); ++i) {
    MinmaxCheck check;
    check.lambda = lambdas[i];

    Eigen::VectorXd xi = tops[i];
    const double xi_norm = xi.norm();
    if (xi_norm < 1e-12) {
      report.checks.push_back(check);
      report.all_pass = false;
      continue;
    }
    xi /= xi_norm;
    const RayleighResult r = rayleigh(split, xi, lo, hi);
    check.p_of_x =
        r.kind == RayleighResult::Kind::root ? r.value : check.lambda + 2 * tol;
    check.rayleigh_matches = r.kind == RayleighResult::Kind::root &&
                             std::abs(r.value - check.lambda) <= tol;

    check.span_bound_holds = true;
    for (int d = 0; d < random_draws; ++d) {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(a_dim);
      for (size_t j = 0; j <= i; ++j) x += gauss(rng) * tops[j];
      const double norm = x.norm();
      if (norm < 1e-12) continue;
      x /= norm;
      const RayleighResult rx = rayleigh(split, x, lo, hi);
      const bool holds =
          rx.kind == RayleighResult::Kind::minus_inf ||
          (rx.kind == RayleighResult::Kind::root &&
           rx.value <= check.lambda + tol);
      if (!holds) {
        check.span_bound_holds = false;
        break;
      }
    }
    report.all_pass =
        report.all_pass && check.rayleigh_matches && check.span_bound_holds;
    report.checks.push_back(check);
  }
  return report;
}

}  // namespace fockband
