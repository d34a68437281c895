// Command-line front end: parses a problem (preset or JSON file), dispatches
// one computation verb and emits deterministic JSON or CSV artifacts.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fockband/channel.hpp"
#include "fockband/determinant.hpp"
#include "fockband/fy.hpp"
#include "fockband/json_io.hpp"
#include "fockband/oracle.hpp"
#include "fockband/pencil.hpp"
#include "fockband/problem.hpp"
#include "fockband/verify.hpp"

namespace {

using namespace fockband;

struct Options {
  std::string preset_name;
  std::string problem_path;
  int n = 12;
  int nu = 1;
  bool n_set = false;
  bool nu_set = false;
  double tol = 1e-9;
  std::optional<double> z_min, z_max;
  int steps = 200;
  std::string method = "oracle";
  std::string out_path;
  std::string format = "json";
};

ModelProblem load_problem(const Options& opt) {
  if (!opt.preset_name.empty())
    return preset(opt.preset_name, opt.nu, opt.n);
  std::ifstream in(opt.problem_path);
  if (!in) throw std::invalid_argument("cannot open " + opt.problem_path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (opt.n_set || opt.nu_set) {
    // Grid override: patch the textual nu/n fields and re-parse.
    auto patch = [&](const std::string& field, int value, bool enabled) {
      if (!enabled) return;
      const auto pos = text.find("\"" + field + "\"");
      if (pos == std::string::npos) return;
      const auto colon = text.find(':', pos);
      auto end = colon + 1;
      while (end < text.size() && text[end] != ',' && text[end] != '}') ++end;
      text = text.substr(0, colon + 1) + std::to_string(value) +
             text.substr(end);
    };
    patch("n", opt.n, opt.n_set);
    patch("nu", opt.nu, opt.nu_set);
  }
  return parse_problem(text);
}

void emit(const Options& opt, const std::string& payload) {
  if (opt.out_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(opt.out_path);
  if (!out) throw std::runtime_error("cannot write " + opt.out_path);
  out << payload;
  if (!payload.empty() && payload.back() != '\n') out << '\n';
}

std::string bandset_csv(const std::string& label, const BandSet& set) {
  std::string csv;
  for (const Interval& iv : set.intervals())
    csv += label + ",interval," + format_double(iv.lo) + "," +
           format_double(iv.hi) + "\n";
  for (double p : set.points())
    csv += label + ",point," + format_double(p) + "," + format_double(p) + "\n";
  return csv;
}

int cmd_bands(const Options& opt) {
  const ModelProblem pb = load_problem(opt);
  ChannelAnalyzer chan(pb, opt.tol);
  const auto ess = chan.essential_spectrum();
  const double hwz = chan.hwz_min();

  if (opt.format == "csv") {
    std::string csv = "set,kind,lo,hi\n";
    csv += bandset_csv("four", ess.branches.four);
    csv += bandset_csv("three", ess.branches.three);
    csv += bandset_csv("two1", ess.branches.two1);
    csv += bandset_csv("two2", ess.branches.two2);
    csv += bandset_csv("essential", ess.essential);
    csv += "hwz_min,value," + format_double(hwz) + "," + format_double(hwz) +
           "\n";
    emit(opt, csv);
    return 0;
  }
  JsonWriter w;
  w.begin_object();
  w.key("four").value(ess.branches.four);
  w.key("three").value(ess.branches.three);
  w.key("two1").value(ess.branches.two1);
  w.key("two2").value(ess.branches.two2);
  w.key("essential").value(ess.essential);
  w.key("hwz_min").value(hwz);
  w.end_object();
  emit(opt, w.str());
  return 0;
}

int cmd_essential(const Options& opt) {
  const ModelProblem pb = load_problem(opt);
  ChannelAnalyzer chan(pb, opt.tol);
  const auto ess = chan.essential_spectrum();
  if (opt.format == "csv") {
    emit(opt, "set,kind,lo,hi\n" + bandset_csv("essential", ess.essential));
    return 0;
  }
  JsonWriter w;
  w.begin_object();
  w.key("essential").value(ess.essential);
  w.end_object();
  emit(opt, w.str());
  return 0;
}

int cmd_hwz(const Options& opt) {
  const ModelProblem pb = load_problem(opt);
  ChannelAnalyzer chan(pb, opt.tol);
  const double hwz = chan.hwz_min();
  if (opt.format == "csv") {
    emit(opt, "hwz_min\n" + format_double(hwz) + "\n");
    return 0;
  }
  JsonWriter w;
  w.begin_object();
  w.key("hwz_min").value(hwz);
  w.end_object();
  emit(opt, w.str());
  return 0;
}

int cmd_spectrum(const Options& opt) {
  const ModelProblem pb = load_problem(opt);
  ChannelAnalyzer chan(pb, opt.tol);
  const auto ess = chan.essential_spectrum();
  const Eigen::VectorXd eigs = eig_sym(assemble_full(pb)).values;
  const auto cls = classify_spectrum(
      eigs, ess.essential,
      default_cluster_tol(ess.essential, static_cast<int>(eigs.size())));

  if (opt.format == "csv") {
    std::string csv = "index,eigenvalue,classification\n";
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
      const bool isolated =
          !ess.essential.contains(eigs[i], cls.tol);
      csv += std::to_string(i) + "," + format_double(eigs[i]) + "," +
             (isolated ? "isolated" : "clustered") + "\n";
    }
    emit(opt, csv);
    return 0;
  }
  JsonWriter w;
  w.begin_object();
  w.key("cluster_tol").value(cls.tol);
  w.key("isolated").value(cls.isolated);
  w.key("clustered").value(cls.clustered);
  w.key("hausdorff_clustered").value(cls.hausdorff_clustered);
  w.end_object();
  emit(opt, w.str());
  return 0;
}

int cmd_eigs(const Options& opt) {
  const ModelProblem pb = load_problem(opt);
  if (opt.method == "oracle") return cmd_spectrum(opt);
  if (opt.method != "fy")
    throw std::invalid_argument("unknown method '" + opt.method + "'");

  FySolver fy(pb);
  const Interval box = DeterminantEvaluator(pb).spectral_box();
  const double lo = opt.z_min.value_or(box.lo);
  const double hi = opt.z_max.value_or(box.hi);
  const auto bundles = fy.find_eigenvalues({{lo, hi}}, opt.steps);

  const int N = pb.points();
  const int o2 = 1 + N, o3 = 1 + N + N * N;
  if (opt.format == "csv") {
    std::string csv = "z,residual,norm_f0,norm_f1,norm_f2,norm_f3\n";
    for (const auto& b : bundles)
      csv += format_double(b.z) + "," + format_double(b.residual) + "," +
             format_double(std::abs(b.full[0])) + "," +
             format_double(b.full.segment(1, N).norm()) + "," +
             format_double(b.full.segment(o2, N * N).norm()) + "," +
             format_double(b.full.segment(o3, N * N * N).norm()) + "\n";
    emit(opt, csv);
    return 0;
  }
  JsonWriter w;
  w.begin_object();
  w.key("eigenvalues").begin_array();
  for (const auto& b : bundles) {
    w.begin_object();
    w.key("z").value(b.z);
    w.key("residual").value(b.residual);
    w.key("psi").value(
        std::vector<double>(b.psi.data(), b.psi.data() + b.psi.size()));
    w.end_object();
  }
  w.end_array();
  w.end_object();
  emit(opt, w.str());
  return 0;
}

int cmd_pencil(const Options& opt) {
  const ModelProblem pb = load_problem(opt);
  const DenseSymOperator full = assemble_full(pb);
  const PencilSplit split = split_blocks(full, pb);
  require_gap_hypothesis(split);
  const double lo = opt.z_min.value_or(split.b_c + 1e-6);
  const double hi = opt.z_max.value_or(split.a_ess_a - 1e-6);

  if (opt.format == "csv") {
    // Smallest-eigenvalue curve of L(lambda) for plotting.
    std::string csv = "lambda,min_eig_L\n";
    for (int j = 0; j <= opt.steps; ++j) {
      const double lambda = lo + (hi - lo) * j / opt.steps;
      DenseSymOperator op;
      op.layout = split.block_a.layout;
      op.mat = eval_L(split, lambda);
      csv += format_double(lambda) + "," +
             format_double(eig_sym(op).values[0]) + "\n";
    }
    emit(opt, csv);
    return 0;
  }

  const std::vector<double> roots = pencil_spectrum(split, lo, hi, opt.steps);
  const MinmaxReport report = minmax_verify(split, full, lo, hi);
  JsonWriter w;
  w.begin_object();
  w.key("interval").begin_array().value(lo).value(hi).end_array();
  w.key("roots").value(roots);
  w.key("minmax").begin_object();
  w.key("kappa_at_lo").value(report.kappa_at_lo);
  w.key("all_pass").value(report.all_pass);
  w.key("checks").begin_array();
  for (const auto& c : report.checks) {
    w.begin_object();
    w.key("lambda").value(c.lambda);
    w.key("p_of_x").value(c.p_of_x);
    w.key("rayleigh_matches").value(c.rayleigh_matches);
    w.key("span_bound_holds").value(c.span_bound_holds);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  w.end_object();
  emit(opt, w.str());
  return 0;
}

int cmd_scan(const Options& opt) {
  const ModelProblem pb = load_problem(opt);
  FySolver fy(pb);
  const Interval box = DeterminantEvaluator(pb).spectral_box();
  const double lo = opt.z_min.value_or(box.lo);
  const double hi = opt.z_max.value_or(box.hi);

  std::vector<std::pair<double, double>> samples;
  for (const Interval& comp : fy.excluded().complement(lo, hi, 1e-9)) {
    for (int j = 0; j <= opt.steps; ++j) {
      const double z = comp.lo + comp.width() * j / opt.steps;
      samples.emplace_back(z, fy.eig_distance(z));
    }
  }
  if (opt.format == "csv") {
    std::string csv = "z,eig_distance\n";
    for (const auto& [z, d] : samples)
      csv += format_double(z) + "," + format_double(d) + "\n";
    emit(opt, csv);
    return 0;
  }
  JsonWriter w;
  w.begin_object();
  w.key("samples").begin_array();
  for (const auto& [z, d] : samples) {
    w.begin_array();
    w.value(z);
    w.value(d);
    w.end_array();
  }
  w.end_array();
  w.end_object();
  emit(opt, w.str());
  return 0;
}

int cmd_verify(const Options& opt) {
  const auto results = run_verification([](const CriterionResult& r) {
    std::fprintf(stderr, "[%2d] %-32s %s  (%.2fs)%s%s\n", r.id, r.name.c_str(),
                 r.pass ? "PASS" : "FAIL", r.seconds,
                 r.detail.empty() ? "" : "  ", r.detail.c_str());
  });
  JsonWriter w;
  w.begin_object();
  w.key("criteria").begin_array();
  for (const auto& r : results) {
    w.begin_object();
    w.key("id").value(r.id);
    w.key("name").value(r.name);
    w.key("pass").value(r.pass);
    w.key("detail").value(r.detail);
    w.key("seconds").value(r.seconds);
    w.end_object();
  }
  w.end_array();
  w.key("all_pass").value(all_passed(results));
  w.end_object();
  emit(opt, w.str());
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of a block operator matrix on the "
               "four-particle cut subspace of Fock space"};
  app.require_subcommand(1);

  Options opt;
  std::vector<CLI::App*> subs;
  for (const char* verb : {"bands", "spectrum", "essential", "hwz", "eigs",
                           "pencil", "scan", "verify"}) {
    CLI::App* sub = app.add_subcommand(verb);
    if (std::string(verb) != "verify") {
      auto* preset_opt = sub->add_option("--preset", opt.preset_name,
                                         "preset problem name");
      auto* problem_opt =
          sub->add_option("--problem", opt.problem_path, "problem JSON file");
      preset_opt->excludes(problem_opt);
      sub->add_option("--n", opt.n, "grid points per axis")
          ->check(CLI::PositiveNumber)
          ->each([&](const std::string&) { opt.n_set = true; });
      sub->add_option("--nu", opt.nu, "torus dimension")
          ->check(CLI::PositiveNumber)
          ->each([&](const std::string&) { opt.nu_set = true; });
      sub->add_option("--tol", opt.tol, "merge tolerance");
      sub->add_option("--z-min", opt.z_min, "lower end of the z range");
      sub->add_option("--z-max", opt.z_max, "upper end of the z range");
      sub->add_option("--steps", opt.steps, "scan resolution");
      sub->add_option("--method", opt.method, "fy|oracle (eigs verb)");
    }
    sub->add_option("--out", opt.out_path, "output file (default stdout)");
    sub->add_option("--format", opt.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const CLI::App* active = app.get_subcommands().front();
    const std::string verb = active->get_name();
    if (verb != "verify" && opt.preset_name.empty() &&
        opt.problem_path.empty()) {
      std::cerr << "error: one of --preset or --problem is required\n";
      return 2;
    }
    if (verb == "bands") return cmd_bands(opt);
    if (verb == "spectrum") return cmd_spectrum(opt);
    if (verb == "essential") return cmd_essential(opt);
    if (verb == "hwz") return cmd_hwz(opt);
    if (verb == "eigs") return cmd_eigs(opt);
    if (verb == "pencil") return cmd_pencil(opt);
    if (verb == "scan") return cmd_scan(opt);
    if (verb == "verify") return cmd_verify(opt);
    std::cerr << "error: unknown verb\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
