#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(FOCKBAND_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("hwz on the decoupled preset") {
  RunResult r = run_cli("hwz --preset decoupled --n 6 --format json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  // min over the sampled symbols: w1 = w2 = w3 = dispersion sums with
  // minimum 0 at the origin node.
  CHECK(std::abs(j.at("hwz_min").get<double>() - 0.0) <= 1e-12);
}

TEST_CASE("bands on the remark preset reports the degenerate value 4") {
  RunResult r = run_cli("bands --preset remark --n 8 --format json");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  const auto& four = j.at("four").at("intervals");
  REQUIRE(!four.empty());
  const double lo = four[0][0].get<double>();
  const double hi = four[0][1].get<double>();
  CHECK(lo <= 4.0 + 1e-12);
  CHECK(hi >= 4.0 - 1e-12);
  CHECK(j.contains("essential"));
  CHECK(j.contains("hwz_min"));
}

TEST_CASE("identical invocations give byte-identical artifacts") {
  const std::string cmd = "bands --preset symmetric --n 6 --format json";
  RunResult a = run_cli(cmd);
  RunResult b = run_cli(cmd);
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(!a.out.empty());
  CHECK(a.out == b.out);
}

TEST_CASE("csv format emits an interval table") {
  RunResult r = run_cli("bands --preset decoupled --n 6 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("set,kind,lo,hi") == 0);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("bands --no-such-flag").exit_code == 2);
  CHECK(run_cli("bands").exit_code == 2);            // missing problem source
  CHECK(run_cli("").exit_code == 2);                 // missing verb
  CHECK(run_cli("bands --preset nope --n 6").exit_code == 2);
  CHECK(run_cli("bands --problem /does/not/exist.json").exit_code == 2);
}

TEST_CASE("domain errors exit with code 1") {
  // The symmetric preset violates the gap hypothesis of the pencil verb.
  CHECK(run_cli("pencil --preset symmetric --n 4").exit_code == 1);
}

TEST_CASE("spectrum emits classified eigenvalues as CSV") {
  RunResult r = run_cli("spectrum --preset decoupled --n 4 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("index,eigenvalue,classification") == 0);
  CHECK(r.out.find("clustered") != std::string::npos);
}

TEST_CASE("eigs cross-method agreement on a coarse grid") {
  RunResult fy = run_cli("eigs --preset symmetric --n 4 --method fy --format json");
  RunResult oracle =
      run_cli("eigs --preset symmetric --n 4 --method oracle --format json");
  REQUIRE(fy.exit_code == 0);
  REQUIRE(oracle.exit_code == 0);
  auto jf = nlohmann::json::parse(fy.out);
  auto jo = nlohmann::json::parse(oracle.out);
  // Every FY eigenvalue appears in the oracle spectrum (either list: the
  // isolated/clustered split depends on the cluster tolerance, while FY
  // roots are genuine eigenvalues of the discretized operator).
  for (const auto& bundle : jf.at("eigenvalues")) {
    const double z = bundle.at("z").get<double>();
    CHECK(bundle.at("residual").get<double>() <= 1e-8);
    double best = 1e300;
    for (const char* list : {"isolated", "clustered"})
      for (const auto& item : jo.at(list))
        best = std::min(best, std::abs(item.get<double>() - z));
    CHECK(best <= 1e-8);
  }
}
