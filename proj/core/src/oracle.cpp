#include "fockband/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace fockband {

SectorLayout SectorLayout::make(std::vector<int> sectors,
                                std::vector<int> sizes) {
  SectorLayout l;
  l.sectors = std::move(sectors);
  l.sizes = std::move(sizes);
  l.offsets.resize(l.sizes.size());
  int off = 0;
  for (size_t i = 0; i < l.sizes.size(); ++i) {
    l.offsets[i] = off;
    off += l.sizes[i];
  }
  l.dim = off;
  return l;
}

int SectorLayout::offset_of(int sector) const {
  for (size_t i = 0; i < sectors.size(); ++i)
    if (sectors[i] == sector) return offsets[i];
  return -1;
}

int SectorLayout::size_of(int sector) const {
  for (size_t i = 0; i < sectors.size(); ++i)
    if (sectors[i] == sector) return sizes[i];
  return 0;
}

namespace {

void check_cap(int dim, int cap) {
  if (dim > cap)
    throw std::invalid_argument("assembly dimension " + std::to_string(dim) +
                                " exceeds cap " + std::to_string(cap));
}

void set_sym(Eigen::MatrixXd& m, int i, int j, double v) {
  m(i, j) = v;
  m(j, i) = v;
}

// Diagonal sector-2 block w2 minus the V21/V22 rank structures, written
// into m at (off, off).  Either rank term can be switched off.
void fill_sector2(Eigen::MatrixXd& m, int off, const ModelProblem& pb,
                  bool with_v21, bool with_v22) {
  const int N = pb.points();
  const double w = pb.weight();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const int row = off + flat2(N, i, j);
      m(row, row) += pb.w2[static_cast<size_t>(flat2(N, i, j))];
      if (with_v22)
        for (int j2 = 0; j2 < N; ++j2) {
          const int col = off + flat2(N, i, j2);
          m(row, col) -= pb.v22[static_cast<size_t>(j)] *
                         pb.v22[static_cast<size_t>(j2)] * w;
        }
      if (with_v21)
        for (int i2 = 0; i2 < N; ++i2) {
          const int col = off + flat2(N, i2, j);
          m(row, col) -= pb.v21[static_cast<size_t>(i)] *
                         pb.v21[static_cast<size_t>(i2)] * w;
        }
    }
}

// Annihilation/creation coupling between sectors 2 and 3 and the diagonal
// sector-3 block.
void fill_sector23(Eigen::MatrixXd& m, int off2, int off3,
                   const ModelProblem& pb) {
  const int N = pb.points();
  const double sw = std::sqrt(pb.weight());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const int row2 = off2 + flat2(N, i, j);
      for (int k = 0; k < N; ++k) {
        const int row3 = off3 + flat3(N, i, j, k);
        set_sym(m, row2, row3, pb.v3[static_cast<size_t>(k)] * sw);
        m(row3, row3) = pb.w3[static_cast<size_t>(flat3(N, i, j, k))];
      }
    }
}

// Sector 1 diagonal and the coupling into sector 2.
void fill_sector12(Eigen::MatrixXd& m, int off1, int off2,
                   const ModelProblem& pb) {
  const int N = pb.points();
  const double sw = std::sqrt(pb.weight());
  for (int i = 0; i < N; ++i) {
    m(off1 + i, off1 + i) = pb.w1[static_cast<size_t>(i)];
    for (int j = 0; j < N; ++j)
      set_sym(m, off1 + i, off2 + flat2(N, i, j),
              pb.v2[static_cast<size_t>(j)] * sw);
  }
}

}  // namespace

DenseSymOperator assemble_full(const ModelProblem& pb, int dim_cap) {
  const int N = pb.points();
  DenseSymOperator op;
  op.layout = SectorLayout::make({0, 1, 2, 3}, {1, N, N * N, N * N * N});
  check_cap(op.layout.dim, dim_cap);
  op.mat = Eigen::MatrixXd::Zero(op.layout.dim, op.layout.dim);

  const double sw = std::sqrt(pb.weight());
  const int off1 = op.layout.offset_of(1);
  const int off2 = op.layout.offset_of(2);
  const int off3 = op.layout.offset_of(3);

  op.mat(0, 0) = pb.w0;
  for (int i = 0; i < N; ++i)
    set_sym(op.mat, 0, off1 + i, pb.v1[static_cast<size_t>(i)] * sw);
  fill_sector12(op.mat, off1, off2, pb);
  fill_sector2(op.mat, off2, pb, /*with_v21=*/true, /*with_v22=*/true);
  fill_sector23(op.mat, off2, off3, pb);
  return op;
}

DenseSymOperator assemble_channel(int which, const ModelProblem& pb,
                                  int dim_cap) {
  const int N = pb.points();
  DenseSymOperator op;
  if (which == 1 || which == 3) {
    op.layout = SectorLayout::make({2, 3}, {N * N, N * N * N});
    check_cap(op.layout.dim, dim_cap);
    op.mat = Eigen::MatrixXd::Zero(op.layout.dim, op.layout.dim);
    fill_sector2(op.mat, 0, pb, /*with_v21=*/which == 1, /*with_v22=*/false);
    fill_sector23(op.mat, 0, op.layout.offset_of(3), pb);
  } else if (which == 2) {
    op.layout = SectorLayout::make({1, 2, 3}, {N, N * N, N * N * N});
    check_cap(op.layout.dim, dim_cap);
    op.mat = Eigen::MatrixXd::Zero(op.layout.dim, op.layout.dim);
    const int off2 = op.layout.offset_of(2);
    fill_sector12(op.mat, 0, off2, pb);
    fill_sector2(op.mat, off2, pb, /*with_v21=*/false, /*with_v22=*/true);
    fill_sector23(op.mat, off2, op.layout.offset_of(3), pb);
  } else {
    throw std::invalid_argument("channel index must be 1, 2 or 3");
  }
  return op;
}

DenseSymOperator assemble_fiber(FiberKind kind, int ip, int iq,
                                const ModelProblem& pb, int dim_cap) {
  const int N = pb.points();
  const double w = pb.weight();
  const double sw = std::sqrt(w);
  DenseSymOperator op;

  switch (kind) {
    case FiberKind::h3: {
      // [[w2(p,q), v3 row], [v3 col, diag w3(p,q,.)]] on sectors {0,1}.
      op.layout = SectorLayout::make({0, 1}, {1, N});
      check_cap(op.layout.dim, dim_cap);
      op.mat = Eigen::MatrixXd::Zero(op.layout.dim, op.layout.dim);
      op.mat(0, 0) = pb.w2[static_cast<size_t>(flat2(N, ip, iq))];
      for (int k = 0; k < N; ++k) {
        set_sym(op.mat, 0, 1 + k, pb.v3[static_cast<size_t>(k)] * sw);
        op.mat(1 + k, 1 + k) =
            pb.w3[static_cast<size_t>(flat3(N, ip, iq, k))];
      }
      break;
    }
    case FiberKind::h1: {
      // Sector 1 over q with the v21 rank-one term, sector 2 over (q,t).
      op.layout = SectorLayout::make({1, 2}, {N, N * N});
      check_cap(op.layout.dim, dim_cap);
      op.mat = Eigen::MatrixXd::Zero(op.layout.dim, op.layout.dim);
      const int off2 = op.layout.offset_of(2);
      for (int q = 0; q < N; ++q) {
        op.mat(q, q) += pb.w2[static_cast<size_t>(flat2(N, ip, q))];
        for (int q2 = 0; q2 < N; ++q2)
          op.mat(q, q2) -= pb.v21[static_cast<size_t>(q)] *
                           pb.v21[static_cast<size_t>(q2)] * w;
        for (int t = 0; t < N; ++t) {
          const int row2 = off2 + flat2(N, q, t);
          set_sym(op.mat, q, row2, pb.v3[static_cast<size_t>(t)] * sw);
          op.mat(row2, row2) =
              pb.w3[static_cast<size_t>(flat3(N, ip, q, t))];
        }
      }
      break;
    }
    case FiberKind::h2: {
      // [[w1(p), v2 row, 0], [v2 col, w2(p,.) - V22, v3], [0, v3, w3(p,.,.)]]
      op.layout = SectorLayout::make({0, 1, 2}, {1, N, N * N});
      check_cap(op.layout.dim, dim_cap);
      op.mat = Eigen::MatrixXd::Zero(op.layout.dim, op.layout.dim);
      const int off1 = 1;
      const int off2 = op.layout.offset_of(2);
      op.mat(0, 0) = pb.w1[static_cast<size_t>(ip)];
      for (int q = 0; q < N; ++q) {
        set_sym(op.mat, 0, off1 + q, pb.v2[static_cast<size_t>(q)] * sw);
        op.mat(off1 + q, off1 + q) +=
            pb.w2[static_cast<size_t>(flat2(N, ip, q))];
        for (int q2 = 0; q2 < N; ++q2)
          op.mat(off1 + q, off1 + q2) -= pb.v22[static_cast<size_t>(q)] *
                                         pb.v22[static_cast<size_t>(q2)] * w;
        for (int t = 0; t < N; ++t) {
          const int row2 = off2 + flat2(N, q, t);
          set_sym(op.mat, off1 + q, row2, pb.v3[static_cast<size_t>(t)] * sw);
          op.mat(row2, row2) =
              pb.w3[static_cast<size_t>(flat3(N, ip, q, t))];
        }
      }
      break;
    }
  }
  return op;
}

EigResult eig_sym(const DenseSymOperator& op, bool with_vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      op.mat, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_sym: eigensolver failed to converge");
  EigResult r;
  r.values = solver.eigenvalues();
  if (with_vectors) r.vectors = solver.eigenvectors();
  return r;
}

SpectrumClassification classify_spectrum(const Eigen::VectorXd& eigs,
                                         const BandSet& predicted,
                                         double tol) {
  SpectrumClassification out;
  out.tol = tol;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    if (predicted.contains(eigs[i], tol))
      out.clustered.push_back(eigs[i]);
    else
      out.isolated.push_back(eigs[i]);
  }
  out.hausdorff_clustered = hausdorff(out.clustered, predicted);
  return out;
}

double default_cluster_tol(const BandSet& predicted, int expected_count) {
  double widest = 0.0;
  for (const auto& iv : predicted.intervals())
    widest = std::max(widest, iv.width());
  const double tol = 2.0 * widest / std::max(expected_count, 1);
  return std::max(tol, 1e-6);
}

}  // namespace fockband
