#include "fockband/fy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "fockband/determinant.hpp"
#include "fockband/rootfind.hpp"

namespace fockband {

namespace {

constexpr double kDivisionGuard = 1e-12;
constexpr double kRootDedupe = 1e-9;
// Scan windows stay this far from the excluded channel spectra, comfortably
// above the admissibility guard so every scan point is evaluable.
constexpr double kScanGuard = 1e-9;
constexpr double kResidualAccept = 1e-8;

}  // namespace

FySolver::FySolver(const ModelProblem& problem)
    : pb_(&problem), chan_(problem), full_(assemble_full(problem)) {
  const int N = pb_->points();
  reduced_layout_ = SectorLayout::make({0, 1, 2, 3}, {1, N, N, N});
  excluded_ = chan_.channel_spectrum(1);
  excluded_.add(chan_.channel_spectrum(2));
  excluded_.add(chan_.channel_spectrum(3));
}

void FySolver::check_admissible(double z) const {
  if (excluded_.contains(z, kBandGuard))
    throw std::domain_error("reduced system: z = " + std::to_string(z) +
                            " inside the union of the channel spectra");
}

ReducedSystem FySolver::reduced_system(double z, FyMode mode) const {
  check_admissible(z);
  const int N = pb_->points();
  const double w = pb_->weight();
  const double sw = std::sqrt(w);
  const auto& det = chan_.evaluator();

  ReducedSystem sys;
  sys.z = z;
  sys.mode = mode;
  sys.layout = reduced_layout_;
  const int dim = sys.layout.dim;
  sys.A = Eigen::MatrixXd::Zero(dim, dim);
  sys.K = Eigen::MatrixXd::Zero(dim, dim);
  const int o1 = 1, o2 = 1 + N, o3 = 1 + 2 * N;

  if (mode == FyMode::literal) {
    // Direct transcription of the multiplication entries a_ij and the
    // kernels K_ij, including the swapped Delta3 argument order in the
    // third-row entries.
    sys.A(0, 0) = 1.0;
    for (int p = 0; p < N; ++p) {
      const CoeffMatrix c = det.coeff_matrix(p, z);
      sys.A(o1 + p, o1 + p) = c.a(1, 1);
      sys.A(o1 + p, o3 + p) = sys.A(o3 + p, o1 + p) = c.a(1, 3);
      sys.A(o2 + p, o2 + p) = c.a(2, 2);
      sys.A(o3 + p, o3 + p) = c.a(3, 3);
    }
    sys.K(0, 0) = pb_->w0 - z + 1.0;
    for (int p = 0; p < N; ++p) {
      sys.K(0, o1 + p) = pb_->v1[static_cast<size_t>(p)] * sw;
      sys.K(o1 + p, 0) = -pb_->v1[static_cast<size_t>(p)] * sw;
      for (int s = 0; s < N; ++s) {
        const double d_ps = det.delta3(p, s, z);
        const double d_sp = det.delta3(s, p, z);
        sys.K(o1 + p, o2 + s) = -pb_->v21[static_cast<size_t>(p)] *
                                pb_->v2[static_cast<size_t>(s)] * w / d_ps;
        sys.K(o2 + p, o1 + s) = -pb_->v2[static_cast<size_t>(p)] *
                                pb_->v21[static_cast<size_t>(s)] * w / d_sp;
        sys.K(o2 + p, o3 + s) = pb_->v22[static_cast<size_t>(p)] *
                                pb_->v21[static_cast<size_t>(s)] * w / d_sp;
        sys.K(o3 + p, o2 + s) = pb_->v21[static_cast<size_t>(p)] *
                                pb_->v22[static_cast<size_t>(s)] * w / d_ps;
      }
    }
    return sys;
  }

  // Derived mode: eliminate sectors 3 and 2 of the assembled operator by
  // finite-dimensional Schur complements and rank factorizations, keeping
  // every block as a computed matrix product.
  const int N2 = N * N;
  const int N3 = N2 * N;
  const int f2_off = full_.layout.offset_of(2);
  const int f3_off = full_.layout.offset_of(3);

  const Eigen::MatrixXd h22 = full_.mat.block(f2_off, f2_off, N2, N2);
  const Eigen::MatrixXd h23 = full_.mat.block(f2_off, f3_off, N2, N3);
  const Eigen::VectorXd w3d = full_.mat.diagonal().segment(f3_off, N3);

  // Sector-3 Schur complement onto sector 2, then add back the two rank
  // structures; what remains is the diagonal of Delta3 values.
  Eigen::MatrixXd q1 = Eigen::MatrixXd::Zero(N2, N);  // c1 insertion
  Eigen::MatrixXd p1 = Eigen::MatrixXd::Zero(N, N2);  // c1 extraction
  Eigen::MatrixXd q2 = Eigen::MatrixXd::Zero(N2, N);  // c2 insertion
  Eigen::MatrixXd p2 = Eigen::MatrixXd::Zero(N, N2);  // c2 extraction
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q) {
      const int pq = flat2(N, p, q);
      q1(pq, q) = pb_->v21[static_cast<size_t>(p)] * sw;
      p1(q, pq) = pb_->v21[static_cast<size_t>(p)] * sw;
      q2(pq, p) = pb_->v22[static_cast<size_t>(q)] * sw;
      p2(p, pq) = pb_->v22[static_cast<size_t>(q)] * sw;
    }

  Eigen::VectorXd resolvent3 = (w3d.array() - z).inverse().matrix();
  Eigen::MatrixXd schur2 = h22 - z * Eigen::MatrixXd::Identity(N2, N2) -
                           h23 * resolvent3.asDiagonal() * h23.transpose();
  const Eigen::VectorXd d3 =
      (schur2 + q1 * p1 + q2 * p2).diagonal();
  for (int i = 0; i < N2; ++i)
    if (std::abs(d3[i]) < kDivisionGuard)
      throw std::domain_error("reduced system: Delta3 vanishes at a node");
  const Eigen::VectorXd d3inv = d3.array().inverse().matrix();

  const Eigen::MatrixXd e1 = full_.mat.block(f2_off, 1, N2, N);  // H21
  const Eigen::MatrixXd e1t_d = e1.transpose() * d3inv.asDiagonal();
  const Eigen::MatrixXd p1_d = p1 * d3inv.asDiagonal();
  const Eigen::MatrixXd p2_d = p2 * d3inv.asDiagonal();

  const Eigen::VectorXd w1v =
      Eigen::Map<const Eigen::VectorXd>(pb_->w1.data(), N);
  sys.A(0, 0) = 1.0;
  sys.A.block(o1, o1, N, N) =
      Eigen::MatrixXd((w1v.array() - z).matrix().asDiagonal()) - e1t_d * e1;
  sys.A.block(o1, o3, N, N) = e1t_d * q2;
  sys.A.block(o3, o1, N, N) = p2_d * e1;
  sys.A.block(o2, o2, N, N) =
      Eigen::MatrixXd::Identity(N, N) - p1_d * q1;
  sys.A.block(o3, o3, N, N) =
      Eigen::MatrixXd::Identity(N, N) - p2_d * q2;

  sys.K(0, 0) = pb_->w0 - z + 1.0;
  sys.K.block(0, o1, 1, N) = full_.mat.block(0, 1, 1, N);
  sys.K.block(o1, 0, N, 1) = -full_.mat.block(1, 0, N, 1);
  sys.K.block(o1, o2, N, N) = -e1t_d * q1;
  sys.K.block(o2, o1, N, N) = -p1_d * e1;
  sys.K.block(o2, o3, N, N) = p1_d * q2;
  sys.K.block(o3, o2, N, N) = p2_d * q1;
  return sys;
}

Eigen::MatrixXd FySolver::t_matrix(double z, FyMode mode) const {
  const ReducedSystem sys = reduced_system(z, mode);
  return sys.A.fullPivLu().solve(sys.K);
}

double FySolver::eig_distance(double z) const {
  const Eigen::MatrixXd t = t_matrix(z);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(t, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_distance: eigensolver failed");
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    best = std::min(best, std::abs(solver.eigenvalues()[i] - 1.0));
  return best;
}

Eigen::VectorXd FySolver::reconstruct(const Eigen::VectorXd& psi,
                                      double z) const {
  const int N = pb_->points();
  if (psi.size() != reduced_layout_.dim)
    throw std::invalid_argument("reconstruct: reduced vector size mismatch");
  const double sw = std::sqrt(pb_->weight());
  const auto& det = chan_.evaluator();

  Eigen::VectorXd full = Eigen::VectorXd::Zero(full_.layout.dim);
  full[0] = psi[0];
  full.segment(1, N) = psi.segment(1, N);
  const auto f1 = psi.segment(1, N);
  const auto c1 = psi.segment(1 + N, N);
  const auto c2 = psi.segment(1 + 2 * N, N);

  const int f2_off = full_.layout.offset_of(2);
  const int f3_off = full_.layout.offset_of(3);
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q) {
      const double d = det.delta3(p, q, z);
      if (std::abs(d) < kDivisionGuard)
        throw std::domain_error("reconstruct: Delta3 vanishes at a node");
      const double num = -pb_->v2[static_cast<size_t>(q)] * sw * f1[p] +
                         pb_->v21[static_cast<size_t>(p)] * sw * c1[q] +
                         pb_->v22[static_cast<size_t>(q)] * sw * c2[p];
      const double f2 = num / d;
      full[f2_off + flat2(N, p, q)] = f2;
      for (int t = 0; t < N; ++t) {
        const double den =
            pb_->w3[static_cast<size_t>(flat3(N, p, q, t))] - z;
        if (std::abs(den) < kDivisionGuard)
          throw std::domain_error("reconstruct: w3 - z vanishes at a node");
        full[f3_off + flat3(N, p, q, t)] =
            -pb_->v3[static_cast<size_t>(t)] * sw * f2 / den;
      }
    }
  return full;
}

double FySolver::residual(const Eigen::VectorXd& full_vec, double z) const {
  const double norm = full_vec.norm();
  if (norm == 0.0) return std::numeric_limits<double>::infinity();
  return (full_.mat * full_vec - z * full_vec).norm() / norm;
}

std::vector<EigvecBundle> FySolver::find_eigenvalues(
    const std::vector<Interval>& search, int scan_steps) const {
  auto f = [&](double z) {
    const ReducedSystem sys = reduced_system(z, FyMode::derived);
    const Eigen::MatrixXd m =
        Eigen::MatrixXd::Identity(sys.layout.dim, sys.layout.dim) -
        sys.A.fullPivLu().solve(sys.K);
    return m.fullPivLu().determinant();
  };

  std::vector<double> roots;
  for (const Interval& iv : search) {
    // Restrict each interval to the admissible complement of the channel
    // spectra before scanning.
    BandSet window(excluded_.merge_tol());
    window.add(excluded_);
    for (const Interval& comp : window.complement(iv.lo, iv.hi, kScanGuard))
      // Refined well past the nominal root width: the eigenvalue distance of
      // T(z*) from 1 scales with the slope of det(I - T), so the extra
      // bisection digits are what keep accepted roots at residual level.
      for (double r : scan_roots(f, comp.lo, comp.hi, scan_steps, 1e-13))
        roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) {
                            return std::abs(a - b) < kRootDedupe;
                          }),
              roots.end());

  std::vector<EigvecBundle> out;
  for (double z : roots) {
    const ReducedSystem sys = reduced_system(z, FyMode::derived);
    const Eigen::MatrixXd m =
        Eigen::MatrixXd::Identity(sys.layout.dim, sys.layout.dim) -
        sys.A.fullPivLu().solve(sys.K);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    EigvecBundle bundle;
    bundle.z = z;
    bundle.psi = svd.matrixV().col(m.cols() - 1);
    bundle.full = reconstruct(bundle.psi, z);
    bundle.residual = residual(bundle.full, z);
    if (bundle.residual <= kResidualAccept) out.push_back(std::move(bundle));
  }
  return out;
}

}  // namespace fockband
