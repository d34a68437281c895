#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockband/grid.hpp"
#include "fockband/problem.hpp"

using namespace fockband;

namespace {

std::string constant_spec(double v) {
  return "{\"kind\":\"constant\",\"value\":" + std::to_string(v) + "}";
}

std::string minimal_problem(int nu, int n) {
  std::string s = "{\"nu\":" + std::to_string(nu) +
                  ",\"n\":" + std::to_string(n) + ",\"w0\":1.0,\"functions\":{";
  const char* wnames[] = {"w1", "w2", "w3"};
  const char* vnames[] = {"v1", "v2", "v3", "v21", "v22"};
  bool first = true;
  for (const char* nm : wnames) {
    if (!first) s += ",";
    first = false;
    s += std::string("\"") + nm + "\":" + constant_spec(1.0);
  }
  for (const char* nm : vnames)
    s += std::string(",\"") + nm + "\":" + constant_spec(0.0);
  s += "}}";
  return s;
}

}  // namespace

TEST_CASE("grid nodes lie in (-pi, pi] with pi as the last node") {
  for (int n : {4, 8, 12, 64}) {
    TorusGrid g = make_grid(1, n);
    REQUIRE(static_cast<int>(g.axis.size()) == n);
    for (int k = 0; k < n; ++k) {
      CHECK(g.axis_node(k) > -kPi);
      CHECK(g.axis_node(k) <= kPi + 1e-15);
      if (k > 0)
        CHECK(g.axis_node(k) - g.axis_node(k - 1) ==
              doctest::Approx(kTwoPi / n).epsilon(1e-14));
    }
    CHECK(std::abs(g.axis_node(n - 1) - kPi) <= 1e-15);
  }
}

TEST_CASE("weights sum to the torus volume") {
  TorusGrid g1 = make_grid(1, 12);
  CHECK(g1.points() * g1.weight() == doctest::Approx(kTwoPi).epsilon(1e-14));
  TorusGrid g2 = make_grid(2, 6);
  CHECK(g2.points() == 36);
  CHECK(g2.points() * g2.weight() ==
        doctest::Approx(kTwoPi * kTwoPi).epsilon(1e-14));
}

TEST_CASE("quadrature of a constant is 2*pi") {
  TorusGrid g = make_grid(1, 10);
  std::vector<double> ones(static_cast<size_t>(g.points()), 1.0);
  CHECK(quad_integrate(g, ones) == doctest::Approx(kTwoPi).epsilon(1e-14));
}

TEST_CASE("quadrature kills trig monomials of degree below n") {
  const int n = 12;
  TorusGrid g = make_grid(1, n);
  for (int k = 1; k < n; ++k) {
    std::vector<double> c(static_cast<size_t>(n)), s(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      c[static_cast<size_t>(i)] = std::cos(k * g.node1(i));
      s[static_cast<size_t>(i)] = std::sin(k * g.node1(i));
    }
    CHECK(std::abs(quad_integrate(g, c)) <= 1e-13);
    CHECK(std::abs(quad_integrate(g, s)) <= 1e-13);
  }
}

TEST_CASE("quadrature matches the closed-form cosine integral") {
  // integral dt / (2 - cos t) = 2*pi / sqrt(3).
  TorusGrid g = make_grid(1, 64);
  std::vector<double> f(static_cast<size_t>(g.points()));
  for (int i = 0; i < g.points(); ++i)
    f[static_cast<size_t>(i)] = 1.0 / (2.0 - std::cos(g.node1(i)));
  CHECK(quad_integrate(g, f) ==
        doctest::Approx(kTwoPi / std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("dispersion is nu - sum of cosines") {
  std::vector<double> t = {0.5, -1.25};
  CHECK(dispersion(t) ==
        doctest::Approx(2.0 - std::cos(0.5) - std::cos(-1.25)).epsilon(1e-15));
  std::vector<double> zero = {0.0};
  CHECK(dispersion(zero) == 0.0);
}

TEST_CASE("parse_problem materializes a minimal constant document") {
  ModelProblem pb = parse_problem(minimal_problem(1, 4));
  CHECK(pb.grid.n == 4);
  CHECK(pb.grid.nu == 1);
  CHECK(pb.w0 == 1.0);
  const int N = pb.points();
  REQUIRE(static_cast<int>(pb.w1.size()) == N);
  REQUIRE(static_cast<int>(pb.w2.size()) == N * N);
  REQUIRE(static_cast<int>(pb.w3.size()) == N * N * N);
  for (double x : pb.w3) CHECK(x == 1.0);
  for (double x : pb.v2) CHECK(x == 0.0);
}

TEST_CASE("parse_problem rejects a tabulated payload of the wrong shape") {
  std::string doc = minimal_problem(1, 4);
  const std::string bad = "\"w2\":{\"kind\":\"tabulated\",\"values\":[1,2,3]}";
  const std::string good = "\"w2\":" + constant_spec(1.0);
  doc.replace(doc.find(good), good.size(), bad);
  CHECK_THROWS_AS(parse_problem(doc), std::invalid_argument);
}

TEST_CASE("parse_problem rejects unknown keys") {
  std::string doc = minimal_problem(1, 4);
  doc.insert(1, "\"bogus\":1,");
  CHECK_THROWS(parse_problem(doc));
}

TEST_CASE("dispersion-sum w3 degenerates at (pi, pi, t)") {
  // w3(p,q,t) = eps(p) + eps(q+t) + eps(t) equals 4 for every t at p=q=pi.
  std::string doc = minimal_problem(1, 8);
  const std::string good = "\"w3\":" + constant_spec(1.0);
  const std::string sum =
      "\"w3\":{\"kind\":\"dispersion-sum\",\"terms\":["
      "{\"coeff\":1.0,\"args\":[1,0,0]},"
      "{\"coeff\":1.0,\"args\":[0,1,1]},"
      "{\"coeff\":1.0,\"args\":[0,0,1]}]}";
  doc.replace(doc.find(good), good.size(), sum);
  ModelProblem pb = parse_problem(doc);
  const int N = pb.points();
  const int ipi = pb.grid.pi_index();
  for (int t = 0; t < N; ++t)
    CHECK(pb.w3[static_cast<size_t>(flat3(N, ipi, ipi, t))] ==
          doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("remark preset degenerates at (pi, pi, t)") {
  ModelProblem pb = preset("remark", 1, 8);
  const int N = pb.points();
  const int ipi = pb.grid.pi_index();
  for (int t = 0; t < N; ++t)
    CHECK(std::abs(pb.w3[static_cast<size_t>(flat3(N, ipi, ipi, t))] - 4.0) <=
          1e-12);
}

TEST_CASE("decoupled preset has all couplings zero") {
  ModelProblem pb = preset("decoupled", 1, 6);
  for (double x : pb.v1) CHECK(x == 0.0);
  for (double x : pb.v2) CHECK(x == 0.0);
  for (double x : pb.v3) CHECK(x == 0.0);
  for (double x : pb.v21) CHECK(x == 0.0);
  for (double x : pb.v22) CHECK(x == 0.0);
}

TEST_CASE("symmetric preset is symmetric in the first two arguments") {
  ModelProblem pb = preset("symmetric", 1, 6);
  const int N = pb.points();
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q) {
      CHECK(pb.w2[static_cast<size_t>(flat2(N, p, q))] ==
            pb.w2[static_cast<size_t>(flat2(N, q, p))]);
      for (int t = 0; t < N; ++t)
        CHECK(pb.w3[static_cast<size_t>(flat3(N, p, q, t))] ==
              pb.w3[static_cast<size_t>(flat3(N, q, p, t))]);
    }
}

TEST_CASE("presets are deterministic") {
  ModelProblem a = preset("symmetric", 1, 8);
  ModelProblem b = preset("symmetric", 1, 8);
  CHECK(a.w0 == b.w0);
  CHECK(a.w3 == b.w3);
  CHECK(a.v21 == b.v21);
  ModelProblem g1 = preset("gap", 1, 6);
  ModelProblem g2 = preset("gap", 1, 6);
  CHECK(g1.w1 == g2.w1);
}

TEST_CASE("unknown preset name is rejected") {
  CHECK_THROWS_AS(preset("nope", 1, 6), std::invalid_argument);
}
