#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "config_file.hpp"
#include "selftest.hpp"
#include "sinhreg/errors.hpp"

using namespace sinhreg;
using namespace sinhreg::cli;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sinhreg_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Largest abs_err column value of a reconstruct CSV.
double max_abs_err(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  double worst = 0.0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    std::stringstream ss(line);
    std::string cell;
    for (int i = 0; i < 4; ++i) std::getline(ss, cell, ',');
    worst = std::max(worst, std::stod(cell));
  }
  return worst;
}

int data_rows(const std::string& text) {
  int rows = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') ++rows;
  }
  return rows - 1;  // header
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("delta parsing") {
  CHECK(parse_delta("pi/2") == pi / 2.0);
  CHECK(parse_delta("5pi/6") == 5.0 * pi / 6.0);
  CHECK(parse_delta("2*pi/3") == 2.0 * pi / 3.0);
  CHECK(parse_delta("PI") == pi);
  CHECK(parse_delta(" 1.25 ") == 1.25);
  CHECK(parse_delta("0.5pi") == 0.5 * pi);
  CHECK_THROWS_AS(parse_delta("pi/0"), ConfigurationError);
  CHECK_THROWS_AS(parse_delta("half"), ConfigurationError);
  CHECK_THROWS_AS(parse_delta("pi*2"), ConfigurationError);
  CHECK(parse_delta_list("pi/2, 2pi/3").size() == 2);
}

TEST_CASE("list and config parsing") {
  CHECK(parse_int_list("6:15:3") == std::vector<int>{6, 9, 12, 15});
  CHECK(parse_int_list("2,5, 7") == std::vector<int>{2, 5, 7});
  CHECK_THROWS_AS(parse_int_list("9:6"), ConfigurationError);
  CHECK(parse_bool("yes"));
  CHECK_FALSE(parse_bool("0"));

  const auto kv = parse_key_values("# comment\ndeltas = pi/2,5pi/6\n\ntrials=3 # inline\nwindows = sinh\n", "cfg");
  ExperimentConfig cfg;
  apply_config(kv, cfg);
  CHECK(cfg.deltas.size() == 2);
  CHECK(cfg.trials == 3);
  CHECK(cfg.windows == std::vector<WindowKind>{WindowKind::Sinh});
  CHECK_THROWS_AS(parse_key_values("a = 1\na = 2\n", "cfg"), ConfigurationError);
  CHECK_THROWS_AS(parse_key_values("novalue\n", "cfg"), ConfigurationError);
  CHECK_THROWS_AS(apply_config({{"colour", "red"}}, cfg), ConfigurationError);
}

TEST_CASE("reconstruct writes 201 rows and the window matters") {
  const fs::path dir = scratch_dir("reconstruct");
  auto sinh = run({"--out-dir", dir.string(), "reconstruct", "--delta", "pi/2", "--n", "12", "--family",
                   "nonperiodic", "--window", "sinh", "--seed", "1"});
  REQUIRE(sinh.code == 0);
  const std::string text = slurp(dir / "reconstruct.csv");
  CHECK(data_rows(text) == 201);
  CHECK(text.find("# build: ") != std::string::npos);
  CHECK(text.find("# delta: 1.5707963267948966") != std::string::npos);
  CHECK(text.find("x,f,S,abs_err,out_of_theory\n") != std::string::npos);
  const double e_sinh = max_abs_err(dir / "reconstruct.csv");

  auto none = run({"--out-dir", dir.string(), "reconstruct", "--n", "12", "--window", "none", "--seed", "1",
                   "--output", "none.csv"});
  REQUIRE(none.code == 0);
  CHECK(max_abs_err(dir / "none.csv") > e_sinh);

  auto per = run({"--out-dir", dir.string(), "reconstruct", "--family", "periodic", "--n", "5", "--output", "p.csv"});
  CHECK(per.code == 0);
}

TEST_CASE("reconstruct guards the convergence hypotheses") {
  const fs::path dir = scratch_dir("guard");
  auto refused = run({"--out-dir", dir.string(), "reconstruct", "--n", "1", "--window", "sinh"});
  CHECK(refused.code == kExitUsage);
  CHECK(refused.err.find("out of theory") != std::string::npos);

  // beta = 2 * (pi - 2.9) < 1 is accepted with the override and flagged.
  auto low = run({"--out-dir", dir.string(), "reconstruct", "--n", "3", "--delta", "2.9", "--window", "sinh"});
  CHECK(low.code == kExitUsage);
  auto flagged = run({"--out-dir", dir.string(), "reconstruct", "--n", "3", "--delta", "2.9", "--window", "sinh",
                      "--allow-out-of-theory", "--output", "low.csv"});
  REQUIRE(flagged.code == 0);
  const std::string text = slurp(dir / "low.csv");
  CHECK(text.find("# out_of_theory: 1") != std::string::npos);
  CHECK(text.find(",0\n") == std::string::npos);

  // L >= 1 from an explicit node file.
  std::ofstream(dir / "nodes.txt") << "-2 -1 0 1 3.1\n";
  auto wide = run({"--out-dir", dir.string(), "reconstruct", "--nodes-file", (dir / "nodes.txt").string()});
  CHECK(wide.code == kExitUsage);
  auto wide_ok = run({"--out-dir", dir.string(), "reconstruct", "--nodes-file", (dir / "nodes.txt").string(),
                      "--allow-out-of-theory", "--output", "wide.csv"});
  REQUIRE(wide_ok.code == 0);
  CHECK(slurp(dir / "wide.csv").find("# out_of_theory: 1") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"reconstruct", "--n", "abc"}).code == kExitUsage);
  CHECK(run({"--help"}).code == 0);
  const fs::path dir = scratch_dir("codes");
  CHECK(run({"--out-dir", dir.string(), "reconstruct", "--delta", "4"}).code == kExitUsage);
  // Node separation that cannot be met is a numerical degeneracy.
  CHECK(run({"--out-dir", dir.string(), "reconstruct", "--n", "30", "--min-sep", "0.999", "--max-perturb", "0.9"})
            .code == kExitNumerical);
  std::ofstream(dir / "close.txt") << "-1 0 0.0001\n";
  CHECK(run({"--out-dir", dir.string(), "reconstruct", "--nodes-file", (dir / "close.txt").string()}).code ==
        kExitNumerical);
}

TEST_CASE("sweep honours config file and flag overrides") {
  const fs::path dir = scratch_dir("sweep");
  std::ofstream(dir / "sweep.cfg") << "deltas = pi/2\nn_values = 6,9\nwindows = gaussian,sinh\ntrials = 7\n";
  auto r = run({"--out-dir", dir.string(), "--threads", "2", "sweep", "--config", (dir / "sweep.cfg").string(),
                "--trials", "2"});
  REQUIRE(r.code == 0);
  const std::string csv = slurp(dir / "sweep.csv");
  CHECK(csv.find("# trials: 2") != std::string::npos);
  CHECK(csv.find("# n_values: 6,9") != std::string::npos);
  CHECK(data_rows(csv) == 4);
  CHECK(fs::exists(dir / "sweep.json"));
  CHECK_FALSE(fs::exists(dir / "sweep_failures.log"));

  auto bad = run({"--out-dir", dir.string(), "sweep", "--n-values", "2", "--deltas", "5pi/6", "--windows", "sinh",
                  "--families", "periodic", "--trials", "1"});
  CHECK(bad.code == kExitCheckFailed);
  CHECK(fs::exists(dir / "sweep_failures.log"));
}

TEST_CASE("output directory from the environment") {
  const fs::path dir = scratch_dir("env");
  ::setenv("SINHREG_OUTPUT_DIR", dir.string().c_str(), 1);
  auto r = run({"reconstruct", "--n", "4", "--range", "-1:1:5"});
  ::unsetenv("SINHREG_OUTPUT_DIR");
  REQUIRE(r.code == 0);
  CHECK(data_rows(slurp(dir / "reconstruct.csv")) == 5);
}

TEST_CASE("selftest passes and catches an injected fault") {
  const auto results = run_selftest();
  for (const auto& r : results) {
    CAPTURE(r.name);
    CAPTURE(r.detail);
    CHECK(r.passed);
  }
  auto ok = run({"selftest"});
  CHECK(ok.code == 0);
  auto broken = run({"--inject-fault", "selftest"});
  CHECK(broken.code == kExitCheckFailed);
  CHECK(broken.out.find("FAIL window-normalization") != std::string::npos);
  // The hook is reset afterwards.
  CHECK(run({"selftest"}).code == 0);
}

}  // TEST_SUITE
