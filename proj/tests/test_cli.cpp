#include "nbbl1/cli/csv.hpp"
#include "nbbl1/cli/manifest.hpp"

#include "cli_support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <regex>

using namespace nbbl1::cli;
using clitest::invoke;
namespace fs = std::filesystem;

namespace {

bool empty_dir(const fs::path& dir) {
  return !fs::exists(dir) || fs::is_empty(dir);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("format_real and exact_real") {
  CHECK(format_real(1.0) == "1.000000000000000e+00");
  CHECK(format_real(-2.5e-7) == "-2.500000000000000e-07");
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -7.25e17}) {
    CHECK(std::stod(exact_real(v)) == v);
  }
}

TEST_CASE("csv writer quoting and column checks") {
  std::ostringstream os;
  CsvWriter csv(os, {"a", "b"});
  csv.field(std::string("x,y")).field(std::size_t{3});
  csv.end_row();
  CHECK(os.str() == "a,b\n\"x,y\",3\n");
  csv.field(1.0);
  CHECK_THROWS(csv.end_row());
}

TEST_CASE("manifest round trip") {
  RunManifest m;
  m.command = "solve";
  m.seed = 42;
  m.version = "1.0.0";
  m.timestamp = "2020-01-01T00:00:00Z";
  m.set("problem", "WOODS");
  m.set("mu", exact_real(0.1));
  std::stringstream ss;
  m.write(ss);
  const RunManifest back = RunManifest::read(ss);
  CHECK(back.command == "solve");
  CHECK(back.seed == 42);
  REQUIRE(back.find("mu") != nullptr);
  CHECK(*back.find("mu") == exact_real(0.1));
  CHECK(back.to_args() ==
        std::vector<std::string>{"solve", "--seed", "42", "--problem", "WOODS", "--mu",
                                 exact_real(0.1)});
}

TEST_CASE("usage errors exit 2 and write nothing") {
  const auto dir = clitest::scratch("usage");
  const std::string out = dir.string();
  CHECK(invoke({"solve", "--problem", "NOPE", "--out-dir", out}).code == 2);
  CHECK(invoke({"solve", "--problem", "WOODS", "--n", "6", "--out-dir", out}).code == 2);
  CHECK(invoke({"solve", "--problem", "WOODS", "--h", "2", "--out-dir", out}).code == 2);
  CHECK(invoke({"solve", "--problem", "WOODS", "--bb", "bb3", "--out-dir", out}).code == 2);
  CHECK(invoke({"cs-recover", "--n", "64", "--m", "65", "--out-dir", out}).code == 2);
  CHECK(invoke({"cs-recover", "--encoder", "fourier", "--out-dir", out}).code == 2);
  CHECK(invoke({"h-sweep", "--h-values", "0.5,1.5", "--out-dir", out}).code == 2);
  CHECK(invoke({"h-sweep", "--h-values", "0", "--out-dir", out}).code == 2);
  CHECK(invoke({"solve", "--out-dir", out}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(empty_dir(dir));
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"solve", "--help"}).code == 0);
}

TEST_CASE("solve writes trace, summary and manifest") {
  const auto dir = clitest::scratch("solve");
  const auto o = invoke({"solve", "--problem", "VARDIM", "--n", "100", "--mu", "0",
                         "--out-dir", dir.string()});
  REQUIRE(o.code == 0);
  CHECK(std::regex_match(o.run_dir.filename().string(),
                         std::regex(R"(solve-7-\d{8}T\d{6}Z)")));
  const auto summary = read_csv((o.run_dir / "summary.csv").string());
  REQUIRE(summary.size() == 2);
  CHECK(summary[0] == std::vector<std::string>{"Problem", "Dim", "mu", "Iter", "Nf", "Time",
                                               "Fun", "Normg", "Normd"});
  CHECK(summary[1][0] == "VARDIM");
  CHECK(summary[1][1] == "100");
  CHECK(std::stod(summary[1][6]) <= 1e-12);

  const auto trace = read_csv((o.run_dir / "trace.csv").string());
  REQUIRE(trace.size() >= 2);
  CHECK(trace[0] == std::vector<std::string>{"k", "F", "norm_d", "alpha", "lambda",
                                             "backtracks", "nf", "elapsed"});
  const std::regex real(R"(-?\d\.\d{15}e[+-]\d{2,3})");
  for (std::size_t r = 1; r < trace.size(); ++r) {
    CHECK(trace[r][0] == std::to_string(r - 1));
    for (std::size_t c : {1, 2, 3, 4, 7}) CHECK(std::regex_match(trace[r][c], real));
  }
  CHECK(std::stoul(trace.back()[6]) == std::stoul(summary[1][4]));

  const auto m = RunManifest::read_file((o.run_dir / "manifest.txt").string());
  CHECK(m.command == "solve");
  CHECK(m.seed == 7);
  for (const char* key : {"problem", "n", "mu", "reg", "preset", "h", "rho", "delta",
                          "m-tilde", "lambda-min", "lambda-max", "tol-d", "tol-x",
                          "max-iter", "max-backtracks", "bb", "lambda0"}) {
    CHECK_MESSAGE(m.find(key) != nullptr, key);
  }
}

TEST_CASE("flags override the preset") {
  const auto dir = clitest::scratch("override");
  const auto o = invoke({"solve", "--problem", "GENROSE", "--n", "20", "--preset", "cs",
                         "--rho", "0.5", "--max-iter", "3", "--run-dir",
                         (dir / "r").string()});
  CHECK(o.code == 1);
  CHECK(o.run_dir == dir / "r");
  const auto m = RunManifest::read_file((dir / "r" / "manifest.txt").string());
  CHECK(*m.find("preset") == "cs");
  CHECK(*m.find("rho") == "0.5");
  CHECK(*m.find("max-iter") == "3");
  CHECK(*m.find("h") == exact_real(1e-2));
}

TEST_CASE("seed comes from the environment when not given") {
  const auto dir = clitest::scratch("seed");
  ::setenv("NBBL1_SEED", "123", 1);
  const auto o = invoke({"cs-recover", "--n", "128", "--m", "64", "--p", "4",
                         "--out-dir", dir.string()});
  ::unsetenv("NBBL1_SEED");
  REQUIRE(o.code <= 1);
  CHECK(o.run_dir.filename().string().rfind("cs-recover-123-", 0) == 0);
  const auto m = RunManifest::read_file((o.run_dir / "manifest.txt").string());
  CHECK(m.seed == 123);
}

TEST_CASE("cs-recover outputs") {
  const auto dir = clitest::scratch("cs");
  const auto o = invoke({"cs-recover", "--n", "256", "--m", "128", "--p", "8",
                         "--seed", "3", "--run-dir", (dir / "r").string()});
  REQUIRE(o.code == 0);
  const auto signals = read_csv((dir / "r" / "signals.csv").string());
  CHECK(signals.size() == 257);
  CHECK(signals[0] == std::vector<std::string>{"index", "x_bar", "x_star"});
  const auto trace = read_csv((dir / "r" / "trace.csv").string());
  CHECK(trace[0].back() == "rel_err");
  const auto summary = read_csv((dir / "r" / "summary.csv").string());
  CHECK(summary[1][clitest::column(summary[0], "reason")] == "RelativeChangeSmall");
  CHECK(summary[1][clitest::column(summary[0], "rel_err")] == trace.back().back());
}

TEST_CASE("h-sweep grid and ordering") {
  const auto dir = clitest::scratch("sweep");
  const auto o = invoke({"h-sweep", "--n", "256", "--m", "128", "--p", "8", "--h-min",
                         "0.1", "--h-max", "1", "--points", "3", "--run-dir",
                         (dir / "r").string()});
  REQUIRE(o.code == 0);
  const auto sweep = read_csv((dir / "r" / "sweep.csv").string());
  REQUIRE(sweep.size() == 4);
  CHECK(sweep[0] == std::vector<std::string>{"h", "iterations", "nf", "elapsed", "rel_err"});
  CHECK(std::stod(sweep[1][0]) < std::stod(sweep[2][0]));
  CHECK(std::stod(sweep[3][0]) == doctest::Approx(1.0).epsilon(1e-15));

  const auto one = invoke({"h-sweep", "--n", "256", "--m", "128", "--p", "8",
                           "--h-values", "1", "--run-dir", (dir / "one").string()});
  REQUIRE(one.code == 0);
  CHECK(read_csv((dir / "one" / "sweep.csv").string()).size() == 2);
}

TEST_CASE("bench produces twenty rows") {
  const auto dir = clitest::scratch("bench");
  const auto o = invoke({"bench", "--run-dir", (dir / "r").string()});
  CHECK(o.code == 0);
  const auto table = read_csv((dir / "r" / "summary.csv").string());
  REQUIRE(table.size() == 21);
  CHECK(table[0].back() == "status");
  for (std::size_t r = 1; r < table.size(); ++r) CHECK(table[r].back() == "DirectionSmall");
}

TEST_CASE("replay reproduces numeric output") {
  const auto dir = clitest::scratch("replay");
  const auto first = invoke({"cs-recover", "--n", "256", "--m", "96", "--p", "8",
                             "--encoder", "dct", "--x0", "atb", "--seed", "9",
                             "--run-dir", (dir / "a").string()});
  REQUIRE(first.code == 0);
  const auto again =
      invoke({"replay", (dir / "a" / "manifest.txt").string(), "--run-dir",
              (dir / "b").string()});
  REQUIRE(again.code == 0);
  for (const char* file : {"trace.csv", "signals.csv", "summary.csv"}) {
    std::string why;
    CHECK_MESSAGE(clitest::same_numeric_columns((dir / "a" / file).string(),
                                                (dir / "b" / file).string(), &why),
                  file << ": " << why);
  }
  const auto ma = slurp(dir / "a" / "manifest.txt");
  const auto mb = slurp(dir / "b" / "manifest.txt");
  const auto strip = [](const std::string& s) {
    return std::regex_replace(s, std::regex("timestamp = [^\n]*"), "");
  };
  CHECK(strip(ma) == strip(mb));
  CHECK(invoke({"replay", (dir / "missing.txt").string()}).code == 2);
}
