#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fockband/band_set.hpp"
#include "fockband/channel.hpp"
#include "fockband/fy.hpp"
#include "fockband/grid.hpp"
#include "fockband/oracle.hpp"
#include "fockband/problem.hpp"

using namespace fockband;

namespace {

// Fully decoupled constants: every channel spectrum is {1}; the sector-0
// state at w0 = -3 is an isolated eigenvalue.
ModelProblem constant_decoupled(int n) {
  const std::string doc = R"({"nu":1,"n":)" + std::to_string(n) +
                          R"(,"w0":-3.0,"functions":{
    "w1":{"kind":"constant","value":1.0},
    "w2":{"kind":"constant","value":1.0},
    "w3":{"kind":"constant","value":1.0},
    "v1":{"kind":"constant","value":0.0},
    "v2":{"kind":"constant","value":0.0},
    "v3":{"kind":"constant","value":0.0},
    "v21":{"kind":"constant","value":0.0},
    "v22":{"kind":"constant","value":0.0}}})";
  return parse_problem(doc);
}

}  // namespace

TEST_CASE("decoupled reduced system has only the K00 entry") {
  ModelProblem pb = constant_decoupled(6);
  FySolver fy(pb);
  const ReducedSystem sys = fy.reduced_system(-3.0, FyMode::literal);
  Eigen::MatrixXd k = sys.K;
  // K00 = w0 - z + 1 = 1 at z = w0; everything else vanishes.
  CHECK(k(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  k(0, 0) = 0.0;
  CHECK(k.cwiseAbs().maxCoeff() == 0.0);
  // A is diagonal: (1, w1 - z - 0, 1, 1) blocks.
  Eigen::MatrixXd a = sys.A;
  a.diagonal().setZero();
  CHECK(a.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("decoupled eig distance vanishes at z = w0") {
  ModelProblem pb = constant_decoupled(6);
  FySolver fy(pb);
  CHECK(fy.eig_distance(-3.0) <= 1e-12);
  // A gap midpoint with no eigenvalue: distance stays visibly positive.
  CHECK(fy.eig_distance(-1.0) > 1e-4);
}

TEST_CASE("decoupled search recovers z = w0 with f = e0") {
  ModelProblem pb = constant_decoupled(6);
  FySolver fy(pb);
  std::vector<EigvecBundle> found = fy.find_eigenvalues({{-4.0, -2.0}});
  REQUIRE(found.size() == 1);
  CHECK(found[0].z == doctest::Approx(-3.0).epsilon(1e-9));
  Eigen::VectorXd f = found[0].full / found[0].full.norm();
  CHECK(std::abs(std::abs(f[0]) - 1.0) <= 1e-10);
  CHECK(f.tail(f.size() - 1).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(found[0].residual <= 1e-10);
}

TEST_CASE("reduced_system rejects z inside the excluded set") {
  ModelProblem pb = preset("symmetric", 1, 6);
  FySolver fy(pb);
  const Interval iv = fy.excluded().intervals().front();
  const double inside = 0.5 * (iv.lo + iv.hi);
  CHECK_THROWS_AS(fy.reduced_system(inside), std::domain_error);
}

TEST_CASE("literal and derived systems agree on the symmetric preset") {
  ModelProblem pb = preset("symmetric", 1, 6);
  FySolver fy(pb);
  for (double off : {0.5, 1.3, 2.9}) {
    const double z = fy.excluded().min() - off;
    const ReducedSystem lit = fy.reduced_system(z, FyMode::literal);
    const ReducedSystem der = fy.reduced_system(z, FyMode::derived);
    CHECK((lit.A - der.A).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((lit.K - der.K).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("K has the expected zero pattern") {
  ModelProblem pb = preset("symmetric", 1, 6);
  FySolver fy(pb);
  const double z = fy.excluded().min() - 1.0;
  const ReducedSystem sys = fy.reduced_system(z, FyMode::literal);
  const int N = pb.points();
  const int off[4] = {0, 1, 1 + N, 1 + 2 * N};
  const int sz[4] = {1, N, N, N};
  // Nonzero blocks: (0,0), (0,1), (1,0), (1,2), (2,1), (2,3), (3,2).
  const bool allowed[4][4] = {{true, true, false, false},
                              {true, false, true, false},
                              {false, true, false, true},
                              {false, false, true, false}};
  for (int bi = 0; bi < 4; ++bi)
    for (int bj = 0; bj < 4; ++bj)
      if (!allowed[bi][bj])
        CHECK(sys.K.block(off[bi], off[bj], sz[bi], sz[bj])
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
  // Diagonal of K vanishes except the scalar (0,0) entry.
  CHECK(sys.K.diagonal().tail(sys.layout.dim - 1).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("derived roots below the essential spectrum match the oracle") {
  ModelProblem pb = preset("symmetric", 1, 6);
  FySolver fy(pb);
  EigResult oracle = eig_sym(fy.full_operator());

  const double lo = oracle.values.minCoeff() - 0.5;
  const double hi = fy.excluded().min() - 1e-6;
  REQUIRE(lo < hi);
  std::vector<EigvecBundle> found = fy.find_eigenvalues({{lo, hi}});
  REQUIRE(!found.empty());

  std::vector<double> oracle_below;
  for (int i = 0; i < oracle.values.size(); ++i)
    if (oracle.values[i] < hi) oracle_below.push_back(oracle.values[i]);
  REQUIRE(found.size() == oracle_below.size());
  for (size_t i = 0; i < found.size(); ++i) {
    CHECK(found[i].z ==
          doctest::Approx(oracle_below[i]).epsilon(1e-8));
    CHECK(found[i].residual <= 1e-8);
    CHECK(fy.eig_distance(found[i].z) <= 1e-8);
  }
}

TEST_CASE("reconstruction round-trips c1 and c2") {
  ModelProblem pb = preset("symmetric", 1, 6);
  FySolver fy(pb);
  EigResult oracle = eig_sym(fy.full_operator());
  const double hi = fy.excluded().min() - 1e-6;
  std::vector<EigvecBundle> found =
      fy.find_eigenvalues({{oracle.values.minCoeff() - 0.5, hi}});
  REQUIRE(!found.empty());

  const int N = pb.points();
  const double sw = std::sqrt(pb.weight());
  for (const EigvecBundle& b : found) {
    const int f2_off = fy.full_operator().layout.offset_of(2);
    // c1(q) = sum_p v21(p) sqrt(w) f2(p, q); c2(p) = sum_q v22(q) sqrt(w)
    // f2(p, q) in the half-weight coordinates.
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(N);
    Eigen::VectorXd c2 = Eigen::VectorXd::Zero(N);
    for (int p = 0; p < N; ++p)
      for (int q = 0; q < N; ++q) {
        const double f2 = b.full[f2_off + flat2(N, p, q)];
        c1[q] += pb.v21[static_cast<size_t>(p)] * sw * f2;
        c2[p] += pb.v22[static_cast<size_t>(q)] * sw * f2;
      }
    CHECK((c1 - b.psi.segment(1 + N, N)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((c2 - b.psi.segment(1 + 2 * N, N)).cwiseAbs().maxCoeff() <= 1e-10);
    // The reduced f0, f1 components embed unchanged.
    CHECK(b.full[0] == b.psi[0]);
    CHECK((b.full.segment(1, N) - b.psi.segment(1, N)).cwiseAbs().maxCoeff() ==
          0.0);
  }
}

TEST_CASE("K entries stay bounded on admissible z intervals") {
  ModelProblem pb = preset("symmetric", 1, 6);
  FySolver fy(pb);
  const double zlo = fy.excluded().min() - 3.0;
  const double zhi = fy.excluded().min() - 0.5;
  double bound = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double z = zlo + (zhi - zlo) * i / 20.0;
    const ReducedSystem sys = fy.reduced_system(z);
    const double m = sys.K.cwiseAbs().maxCoeff();
    CHECK(std::isfinite(m));
    bound = std::max(bound, m);
  }
  CHECK(bound < 1e6);
}
