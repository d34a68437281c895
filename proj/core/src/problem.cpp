#include "fockband/problem.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "fockband/function_spec.hpp"
#include "fockband/oracle.hpp"

namespace fockband {

namespace {

struct FunctionSet {
  FunctionSpec w1, v1, v2, v3, v21, v22, w2, w3;
};

ModelProblem materialize(int nu, int n, double w0, const FunctionSet& fns) {
  ModelProblem pb;
  pb.grid = make_grid(nu, n);
  pb.w0 = w0;
  pb.w1 = fns.w1.sample(pb.grid, 1, "w1");
  pb.v1 = fns.v1.sample(pb.grid, 1, "v1");
  pb.v2 = fns.v2.sample(pb.grid, 1, "v2");
  pb.v3 = fns.v3.sample(pb.grid, 1, "v3");
  pb.v21 = fns.v21.sample(pb.grid, 1, "v21");
  pb.v22 = fns.v22.sample(pb.grid, 1, "v22");
  pb.w2 = fns.w2.sample(pb.grid, 2, "w2");
  pb.w3 = fns.w3.sample(pb.grid, 3, "w3");
  return pb;
}

FunctionSpec eps1() {
  return FunctionSpec::dispersion_sum({{1.0, {1.0}}});
}

// w2(p,q) = eps(p) + eps(q)
FunctionSpec eps_sum2() {
  return FunctionSpec::dispersion_sum({{1.0, {1.0, 0.0}}, {1.0, {0.0, 1.0}}});
}

// w3(p,q,t) = eps(p) + eps(q) + eps(t)
FunctionSpec eps_sum3() {
  return FunctionSpec::dispersion_sum(
      {{1.0, {1.0, 0.0, 0.0}}, {1.0, {0.0, 1.0, 0.0}}, {1.0, {0.0, 0.0, 1.0}}});
}

// w3(p,q,t) = eps(p) + eps(q+t) + eps(t), the degenerate-band example.
FunctionSpec eps_remark3() {
  return FunctionSpec::dispersion_sum(
      {{1.0, {1.0, 0.0, 0.0}}, {1.0, {0.0, 1.0, 1.0}}, {1.0, {0.0, 0.0, 1.0}}});
}

FunctionSet symmetric_functions() {
  FunctionSet f;
  f.w1 = eps1();
  f.v1 = FunctionSpec::constant(1.0);
  f.v2 = FunctionSpec::constant(1.0);
  f.v3 = FunctionSpec::constant(1.0);
  f.v21 = FunctionSpec::constant(1.0);
  f.v22 = FunctionSpec::constant(1.0);
  f.w2 = eps_sum2();
  f.w3 = eps_sum3();
  return f;
}

// Smallest shift of w1 for which the whole spectrum of the C block sits
// below the essential-spectrum surrogate of the A block by at least 0.5.
double gap_shift(const ModelProblem& base) {
  const int N = base.points();
  const DenseSymOperator full = assemble_full(base);
  const int a_dim = 1 + N;
  const int c_dim = full.dim() - a_dim;
  DenseSymOperator block_c;
  block_c.layout = SectorLayout::make({2, 3}, {N * N, N * N * N});
  block_c.mat = full.mat.block(a_dim, a_dim, c_dim, c_dim);
  const double b_c = eig_sym(block_c).values.maxCoeff();

  const double w1_min = *std::min_element(base.w1.begin(), base.w1.end());
  const double w1_max = *std::max_element(base.w1.begin(), base.w1.end());
  const double sw = std::sqrt(base.weight());

  auto a_ess = [&](double c) {
    DenseSymOperator block_a;
    block_a.layout = SectorLayout::make({0, 1}, {1, N});
    block_a.mat = Eigen::MatrixXd::Zero(a_dim, a_dim);
    block_a.mat(0, 0) = base.w0;
    for (int i = 0; i < N; ++i) {
      const double coupling = base.v1[static_cast<size_t>(i)] * sw;
      block_a.mat(0, 1 + i) = coupling;
      block_a.mat(1 + i, 0) = coupling;
      block_a.mat(1 + i, 1 + i) = base.w1[static_cast<size_t>(i)] + c;
    }
    BandSet predicted;
    predicted.add(w1_min + c, w1_max + c);
    const auto eigs = eig_sym(block_a).values;
    const auto cls =
        classify_spectrum(eigs, predicted, default_cluster_tol(predicted, N));
    if (cls.clustered.empty())
      throw std::runtime_error("gap preset: no clustered part in block A");
    return cls.clustered.front();
  };

  const double target = b_c + 0.5;
  double shift = target - a_ess(0.0);
  for (int iter = 0; iter < 64 && a_ess(shift) < target; ++iter)
    shift += target - a_ess(shift) + 1e-9;
  return shift;
}

}  // namespace

ModelProblem parse_problem(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("problem file: invalid JSON: ") +
                                e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("problem file: not an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::set<std::string> allowed{"nu", "n", "w0", "functions"};
    if (!allowed.count(it.key()))
      throw std::invalid_argument("problem file: unknown key '" + it.key() + "'");
  }
  for (const char* key : {"nu", "n", "w0"})
    if (!j.contains(key) || !j.at(key).is_number())
      throw std::invalid_argument(std::string("problem file: missing numeric '") +
                                  key + "'");
  if (!j.contains("functions") || !j.at("functions").is_object())
    throw std::invalid_argument("problem file: missing object 'functions'");

  const auto& fj = j.at("functions");
  static const std::set<std::string> fn_names{"w1", "v1", "v2",  "v3",
                                              "v21", "v22", "w2", "w3"};
  for (auto it = fj.begin(); it != fj.end(); ++it)
    if (!fn_names.count(it.key()))
      throw std::invalid_argument("problem file: unknown function '" +
                                  it.key() + "'");
  for (const auto& name : fn_names)
    if (!fj.contains(name))
      throw std::invalid_argument("problem file: missing function '" + name + "'");

  FunctionSet fns;
  fns.w1 = parse_function_spec(fj.at("w1"), "w1");
  fns.v1 = parse_function_spec(fj.at("v1"), "v1");
  fns.v2 = parse_function_spec(fj.at("v2"), "v2");
  fns.v3 = parse_function_spec(fj.at("v3"), "v3");
  fns.v21 = parse_function_spec(fj.at("v21"), "v21");
  fns.v22 = parse_function_spec(fj.at("v22"), "v22");
  fns.w2 = parse_function_spec(fj.at("w2"), "w2");
  fns.w3 = parse_function_spec(fj.at("w3"), "w3");

  return materialize(j.at("nu").get<int>(), j.at("n").get<int>(),
                     j.at("w0").get<double>(), fns);
}

ModelProblem preset(const std::string& name, int nu, int n) {
  if (name == "decoupled") {
    FunctionSet f = symmetric_functions();
    f.v1 = f.v2 = f.v3 = f.v21 = f.v22 = FunctionSpec::constant(0.0);
    return materialize(nu, n, 0.0, f);
  }
  if (name == "remark") {
    FunctionSet f = symmetric_functions();
    f.w2 = FunctionSpec::constant(0.0);
    f.w3 = eps_remark3();
    return materialize(nu, n, 0.0, f);
  }
  if (name == "symmetric") {
    return materialize(nu, n, 0.0, symmetric_functions());
  }
  if (name == "gap") {
    ModelProblem pb = materialize(nu, n, 0.0, symmetric_functions());
    const double shift = gap_shift(pb);
    for (double& w : pb.w1) w += shift;
    return pb;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace fockband
