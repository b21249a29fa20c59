#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lgc/error.hpp"
#include "lgc/io.hpp"
#include "lgc/report.hpp"
#include "support.hpp"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the command-line tool with `args`, capturing stdout; stderr is discarded.
Run run_cli(const std::string& args) {
  const std::string cmd = std::string(LGC_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(LGC_DATA_DIR) + "/" + name; }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("lgc_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double v : {1.0 / 3.0, 0.1, 1e-300, 2.0, 123456.789}) {
    CHECK(std::stod(lgc::format_double(v)) == v);
  }
  CHECK(lgc::format_double(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("CSV payloads") {
  lgc::GapSequence g;
  g.entries = {{1.0 / 3.0, 1}, {1.0 / 9.0, 2}};
  CHECK(lgc::gaps_csv(g) == "value,multiplicity\n0.3333333333333333,1\n0.1111111111111111,2\n");
  CHECK(lgc::gaps_csv(g, 1) == "value,multiplicity\n0.3333333333333333,1\n");
  CHECK(lgc::gaps_csv(lgc::GapSequence{}) == "value,multiplicity\n");
  lgc::NDeltaCurve c;
  c.samples = {{0.5, 3}, {0.25, 9}};
  CHECK(lgc::curve_csv(c) == "delta,count\n0.5,3\n0.25,9\n");
  CHECK(lgc::intervals_csv(lgc::IntervalSet({{0, 0.25}})) == "lo,hi\n0,0.25\n");
}

TEST_CASE("write_text reports unwritable paths") {
  CHECK_THROWS_AS(lgc::write_text("/nonexistent/dir/out.txt", "x"), lgc::Error);
}

TEST_CASE("report contents") {
  lgc::ReportOptions opt;
  opt.delta_res = 1.0 / 81.0;
  const auto doc = lgc::build_report(fixture::cd(), opt);
  CHECK(doc["validation"].empty());
  CHECK(doc["dimension"]["s"].get<double>() == doctest::Approx(std::log(2.0) / std::log(3.0) + 0.5));
  CHECK(doc["ud_verdict"]["kind"] == "CertifiedUD");
  CHECK(doc["quasisymmetric_to_cantor"] == true);
  CHECK(doc["separation"]["eta"].get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(doc["separation"]["class_size_bound"].get<double>() == doctest::Approx(54.0));
  CHECK(doc.contains("gaps"));
  CHECK(doc.contains("scaling"));

  const auto bad = lgc::parse_spec(R"({"rows":[{"b":0.5,"cells":[{"a":0.6,"c":0}]},{"b":0.5,"cells":[]}]})");
  const auto bad_doc = lgc::build_report(bad, opt);
  CHECK_FALSE(bad_doc["validation"].empty());
}

TEST_CASE("cli: dimension and validate") {
  const auto dim = run_cli("dimension " + data("cd.json"));
  CHECK(dim.status == 0);
  const auto doc = lgc::Json::parse(dim.out);
  CHECK(doc["s1"].get<double>() == doctest::Approx(0.63093).epsilon(1e-5));
  CHECK(doc["s"].get<double>() == doctest::Approx(1.13093).epsilon(1e-5));

  CHECK(run_cli("validate " + data("mcm.json")).status == 0);
  const auto bad = temp_file("bad.json");
  std::ofstream(bad) << R"({"rows":[{"b":"1/3","cells":[{"a":"1/3","c":"0"}]},{"b":"2/3","cells":[]}]})";
  const auto v = run_cli("validate " + bad.string());
  CHECK(v.status == 1);
  CHECK(lgc::Json::parse(v.out)["violations"].size() == 1);
  CHECK(run_cli("dimension " + bad.string()).status == 1);
  std::filesystem::remove(bad);
}

TEST_CASE("cli: usage and domain errors") {
  CHECK(run_cli("").status == 2);
  CHECK(run_cli("no-such-command").status == 2);
  CHECK(run_cli("render " + data("cd.json") + " --depth 2 --delta 0.1").status == 2);
  CHECK(run_cli("chain " + data("cd.json")).status == 1);
  CHECK(run_cli("dimension /nonexistent.json").status == 1);
}

TEST_CASE("cli: other subcommands") {
  const auto svg = run_cli("render " + data("cd.json") + " --depth 2");
  CHECK(svg.status == 0);
  CHECK(svg.out.find("<svg") != std::string::npos);

  const auto box = run_cli("boxcount " + data("cd.json") + " --delta-max 0.3333333333333333 --delta-min 0.037037037037037035 --steps 3");
  CHECK(box.status == 0);
  CHECK(box.out.rfind("delta,count\n0.3333333333333333,4\n", 0) == 0);

  const auto gaps = run_cli("gaps " + data("cd.json") + " --delta-res 0.037037037037037035 --top 1");
  CHECK(gaps.out == "value,multiplicity\n0.5,1\n");

  const auto fibers = run_cli("fibers " + data("cd.json") + " --coding 1 --depth 2");
  CHECK(fibers.out == "lo,hi\n0,0.0625\n0.1875,0.25\n0.75,0.8125\n0.9375,1\n");

  const auto ud = run_cli("check-ud " + data("cd.json") + " --max-depth 4");
  CHECK(lgc::Json::parse(ud.out)["kind"] == "CertifiedUD");

  const auto chain_path = temp_file("chain.csv");
  CHECK(run_cli("chain " + data("mcm.json") + " --epsilon 0.5 --out " + chain_path.string()).status == 0);
  const auto chain = slurp(chain_path);
  CHECK(chain.rfind("index,x,y\n", 0) == 0);
  CHECK(std::count(chain.begin(), chain.end(), '\n') == 7);
  std::filesystem::remove(chain_path);

  const auto scaling = run_cli("scaling " + data("cd.json") + " --delta-res 0.004");
  CHECK(scaling.status == 0);
  CHECK(lgc::Json::parse(scaling.out).contains("slope"));
}

TEST_CASE("cli: repeated runs are byte-identical") {
  for (const char* cmd : {"report", "gaps", "check-ud", "boxcount"}) {
    const std::string args = std::string(cmd) + " " + data("cd.json");
    CHECK(run_cli(args).out == run_cli(args).out);
  }
}
