#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "dkwaves_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

/// Runs the installed binary with the given argument string. The seed
/// environment variable is cleared unless the caller provides its own
/// `env` prefix, so tests never depend on the invoking shell.
RunResult run_cli(const std::string& args,
                  const std::string& env = "env -u DKWAVES_SEED") {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("out" + std::to_string(counter));
  const fs::path err = scratch_dir() / ("err" + std::to_string(counter));
  ++counter;
  const std::string cmd = env + " \"" DKWAVES_CLI_PATH "\" " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("eval emits one labeled row per grid point") {
  const RunResult r = run_cli("eval --kind scalar --j 0");
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 2);  // header + single default grid point

  std::string header = "t,r,theta,phi";
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const std::string slot = std::to_string(a) + std::to_string(b);
      header += ",u" + slot + "_re,u" + slot + "_im";
    }
  CHECK(lines[0] == header);

  const auto cells = split_cells(lines[1]);
  REQUIRE(cells.size() == 36);
  for (const std::string& cell : cells) {
    std::size_t used = 0;
    (void)std::stod(cell, &used);
    CHECK(used == cell.size());  // plain '.'-decimal numbers only
  }

  // the grid flags multiply rows
  const RunResult r2 =
      run_cli("eval --kind i --j 1 --r-count 2 --r-min 1 --r-max 3");
  CHECK(split_lines(r2.out).size() == 3);
}

TEST_CASE("spinor evaluation uses the four-component layout") {
  const RunResult r = run_cli("eval --kind dirac --two-j 3 --two-m 1");
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "t,r,theta,phi,psi0_re,psi0_im,psi1_re,psi1_im,psi2_re,psi2_im,"
        "psi3_re,psi3_im");
  CHECK(split_cells(lines[1]).size() == 12);
}

TEST_CASE("identical invocations are byte-identical") {
  const std::string args = "eval --kind ii --j 2 --m 1 --theta-count 3 "
                           "--theta-min 0.4 --theta-max 2.7";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("--output mirrors stdout bytes into a file") {
  const fs::path target = scratch_dir() / "mirror.csv";
  const std::string args = "eval --kind i --j 1 --m 0";
  const RunResult direct = run_cli(args);
  const RunResult filed = run_cli(args + " --output " + target.string());
  CHECK(filed.code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(target) == direct.out);
}

TEST_CASE("label errors surface as usage failures") {
  const RunResult r = run_cli("eval --kind i --j 0");
  CHECK(r.code == 2);
  CHECK(r.err.find("J must be >= 1") != std::string::npos);

  CHECK(run_cli("").code == 2);                       // missing subcommand
  CHECK(run_cli("frobnicate").code == 2);             // unknown subcommand
  CHECK(run_cli("eval --format yaml").code == 2);     // rejected value
  CHECK(run_cli("eval --kind iv").code == 2);         // unknown family
  CHECK(run_cli("eval --kind i --j 1 --eps 0.5").code == 2);  // eps <= mass
}

TEST_CASE("certification report") {
  const RunResult r = run_cli("certify --j-max 1 --points 2");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("command") == "certify");
  CHECK(doc.at("all_pass") == true);

  std::vector<std::string> tags;
  for (const auto& check : doc.at("checks")) {
    CHECK(check.at("verdict") == "pass");
    CHECK(check.at("max_residual").get<double>() <
          check.at("tolerance").get<double>());
    const std::string tag = check.at("tag");
    if (std::find(tags.begin(), tags.end(), tag) == tags.end())
      tags.push_back(tag);
  }
  CHECK(tags.size() >= 12);

  // an impossible tolerance flips the verdicts and the exit code
  const RunResult bad =
      run_cli("certify --j-max 1 --points 2 --tolerance 1e-20");
  CHECK(bad.code == 1);
  const json bad_doc = json::parse(bad.out);
  CHECK(bad_doc.at("all_pass") == false);
}

TEST_CASE("expansion report") {
  const RunResult r = run_cli("expand --kind ii --j 1 --m 1");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("branch") == -1);
  CHECK(doc.at("verdict") == "pass");
  CHECK(doc.at("max_residual").get<double>() < 1e-8);
  CHECK(doc.at("terms").size() == 4);

  // an unreachable tolerance exits nonzero
  CHECK(run_cli("expand --kind i --j 1 --tolerance 1e-30").code == 1);
}

TEST_CASE("seed flows from flag or environment, flag first") {
  const std::string base = "expand --kind i --j 2 --m 1 --points 7";
  const RunResult flag5 = run_cli(base + " --seed 5");
  const RunResult env5 = run_cli(base, "env DKWAVES_SEED=5");
  const RunResult flag7 = run_cli(base + " --seed 7");
  const RunResult both = run_cli(base + " --seed 7", "env DKWAVES_SEED=5");
  CHECK(flag5.out == env5.out);
  CHECK(flag7.out == both.out);
  CHECK(flag5.out != flag7.out);  // different points, different sup norms
}

TEST_CASE("config file supplies defaults that flags override") {
  const fs::path cfg = scratch_dir() / "defaults.cfg";
  {
    std::ofstream out(cfg);
    out << "# spectral defaults\n"
        << "eps = 3.5\n"
        << "mass = 0.5\n"
        << "ignored-key = 42\n";
  }
  const std::string tail = " --kind i --j 1 --m 0";
  const RunResult from_cfg = run_cli("eval --config " + cfg.string() + tail);
  const RunResult from_flags = run_cli("eval --eps 3.5 --mass 0.5" + tail);
  CHECK(from_cfg.code == 0);
  CHECK(from_cfg.out == from_flags.out);

  const RunResult overridden =
      run_cli("eval --config " + cfg.string() + " --eps 2.75" + tail);
  const RunResult explicit_flags =
      run_cli("eval --eps 2.75 --mass 0.5" + tail);
  CHECK(overridden.out == explicit_flags.out);

  CHECK(run_cli("eval --config /nonexistent.cfg" + tail).code == 2);

  const fs::path bad = scratch_dir() / "broken.cfg";
  {
    std::ofstream out(bad);
    out << "this line has no equals sign\n";
  }
  CHECK(run_cli("eval --config " + bad.string() + tail).code == 2);
}

TEST_CASE("curved scan hits the analytic midpoint") {
  const double lo = M_PI / 2.0 - 0.4, hi = M_PI / 2.0 + 0.4;
  const RunResult r = run_cli("curved-scan --j 2 --chi-min " + num(lo) +
                              " --chi-max " + num(hi) + " --chi-count 3");
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "chi,gap,tan_half,dyn_residual");

  const auto mid = split_cells(lines[2]);
  REQUIRE(mid.size() == 4);
  const double chi = std::stod(mid[0]), gap = std::stod(mid[1]);
  const double tan_half = std::stod(mid[2]), dyn = std::stod(mid[3]);
  CHECK(std::abs(chi - M_PI / 2.0) < 1e-12);
  CHECK(std::abs(gap - 1.0) < 1e-12);
  CHECK(std::abs(tan_half - gap) < 1e-12);
  CHECK(std::abs(dyn - 1.0) < 0.05);  // dynamical witness of the same gap
}

TEST_CASE("curved scan rejects impossible ranges") {
  CHECK(run_cli("curved-scan --chi-min 1.0 --chi-max 0.5").code == 2);
  CHECK(run_cli("curved-scan --chi-min 0 --chi-max 1").code == 2);
  CHECK(run_cli("curved-scan --chi-min 0.5 --chi-max 3.2").code == 2);
  CHECK(run_cli("curved-scan --chi-count 0").code == 2);
}

TEST_CASE("a full hundred-point scan completes within a second") {
  const auto start = std::chrono::steady_clock::now();
  const RunResult r = run_cli("curved-scan");  // default: 100 points
  const auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(r.code == 0);
  CHECK(split_lines(r.out).size() == 101);
  CHECK(std::chrono::duration<double>(elapsed).count() < 1.0);
}

}  // TEST_SUITE
