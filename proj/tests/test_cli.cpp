#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string output;
};

// runs the installed command line binary and captures combined output
RunResult run(const std::string& args) {
  std::string cmd = std::string(RECURLAB_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof(buf), pipe)) r.output.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("recurlab_cli_" + std::to_string((long long)::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
  static int& counter() { static int c = 0; return c; }
  std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("help exits cleanly") {
  CHECK(run("--help").code == 0);
  CHECK(run("verify --help").code == 0);
}

TEST_CASE("unknown commands and flags are usage errors") {
  CHECK(run("frobnicate").code == 2);
  CHECK(run("corners solve --does-not-exist 1").code == 2);
  CHECK(run("corners solve").code == 2);  // missing required --n
}

TEST_CASE("corner search writes a parseable witness") {
  TempDir dir;
  auto r = run("--out " + dir.str() + " corners solve --n 3");
  CHECK(r.code == 0);
  CHECK(r.output.find("size=7") != std::string::npos);
  std::string witness = slurp(dir.path / "corners_solve_3.txt");
  CHECK(witness.rfind("N=3\n", 0) == 0);
  // 7 member lines follow the header
  CHECK(std::count(witness.begin(), witness.end(), '\n') == 8);
}

TEST_CASE("density table lists the exact small values") {
  TempDir dir;
  auto r = run("--out " + dir.str() + " corners table --max 4");
  CHECK(r.code == 0);
  std::string csv = slurp(dir.path / "corners_table.csv");
  CHECK(csv.find("1,1,1,") != std::string::npos);
  CHECK(csv.find("2,3/4,3/4,") != std::string::npos);
  CHECK(csv.find("3,7/9,7/9,") != std::string::npos);
  CHECK(csv.find("4,11/16,11/16,") != std::string::npos);
}

TEST_CASE("return profile of the identity is identically zero") {
  TempDir dir;
  auto r = run("--out " + dir.str() + " recur single --map identity --x 0 --n 5");
  CHECK(r.code == 0);
  std::string csv = slurp(dir.path / "recur_single.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.find(",0,") != std::string::npos);
    ++rows;
  }
  CHECK(rows == 3);  // horizon ladder 1, 2, 5
}

TEST_CASE("default verification suite passes and writes reports") {
  TempDir dir;
  auto r = run("--out " + dir.str() + " verify poincare --samples 2000");
  CHECK(r.code == 0);
  CHECK(fs::exists(dir.path / "reports_poincare.csv"));
  CHECK(fs::exists(dir.path / "report_poincare.json"));
  std::string csv = slurp(dir.path / "reports_poincare.csv");
  CHECK(csv.find("fail") == std::string::npos);
}

TEST_CASE("worker count never changes the reported statistics") {
  TempDir d1, d2;
  std::string base = " verify thm-x2 --samples 20000 --seed 77 ";
  CHECK(run("--out " + d1.str() + base + "--workers 1").code == 0);
  CHECK(run("--out " + d2.str() + base + "--workers 4").code == 0);
  CHECK(slurp(d1.path / "reports_thm_x2.csv") == slurp(d2.path / "reports_thm_x2.csv"));
  CHECK(slurp(d1.path / "report_thm_x2.json") == slurp(d2.path / "report_thm_x2.json"));
}

TEST_CASE("config file drives a single check") {
  TempDir dir;
  write_file(dir.path / "check.cfg",
             "schema=1\n"
             "# one exact finite configuration\n"
             "map=shift:12,5\n"
             "region=whole\n"
             "t=3\n");
  auto r = run("--out " + dir.str() + " verify poincare --config " +
               (dir.path / "check.cfg").string());
  CHECK(r.code == 0);
  CHECK(fs::exists(dir.path / "reports_poincare.csv"));
}

TEST_CASE("malformed configs are rejected without writing artifacts") {
  TempDir dir;
  write_file(dir.path / "bad.cfg",
             "schema=1\n"
             "map=shift:12,5\n"
             "surprise=1\n");
  auto r = run("--out " + dir.str() + " verify poincare --config " +
               (dir.path / "bad.cfg").string());
  CHECK(r.code == 2);
  CHECK(r.output.find("surprise") != std::string::npos);
  CHECK_FALSE(fs::exists(dir.path / "reports_poincare.csv"));

  write_file(dir.path / "noschema.cfg", "map=shift:12,5\n");
  CHECK(run("--out " + dir.str() + " verify poincare --config " +
            (dir.path / "noschema.cfg").string()).code == 2);

  write_file(dir.path / "dup.cfg", "schema=1\nt=2\nt=3\n");
  CHECK(run("--out " + dir.str() + " verify poincare --config " +
            (dir.path / "dup.cfg").string()).code == 2);

  CHECK(run("verify poincare --config /tmp/recurlab_missing_cfg_493").code == 2);
}

TEST_CASE("out-of-range horizons are usage errors") {
  CHECK(run("verify pair-poincare --t 99").code == 2);
  CHECK(run("verify thm-x4 --t 0").code == 2);
}

TEST_CASE("golden store verification against the repository data") {
  auto r = run("golden check --store " + std::string(RECURLAB_GOLDEN_DIR));
  CHECK(r.code == 0);
  CHECK(r.output.find("12 record(s)") != std::string::npos);
}

TEST_CASE("golden check detects tampering") {
  TempDir dir;
  fs::copy(RECURLAB_GOLDEN_DIR, dir.path / "golden");
  std::string records = slurp(dir.path / "golden" / "records.json");
  auto pos = records.find("4848");
  REQUIRE(pos != std::string::npos);
  records.replace(pos, 4, "4849");
  write_file(dir.path / "golden" / "records.json", records);
  auto r = run("golden check --store " + (dir.path / "golden").string());
  CHECK(r.code == 1);
  CHECK(r.output.find("MISMATCH") != std::string::npos);
}

TEST_CASE("golden regeneration needs explicit confirmation") {
  TempDir dir;
  CHECK(run("golden regenerate --store " + dir.str() + "/fresh").code == 2);
  CHECK_FALSE(fs::exists(dir.path / "fresh" / "records.json"));
  CHECK(run("golden regenerate --confirm --store " + dir.str() + "/fresh").code == 0);
  CHECK(fs::exists(dir.path / "fresh" / "records.json"));
  CHECK(fs::exists(dir.path / "fresh" / "meta.json"));
  CHECK(run("golden check --store " + dir.str() + "/fresh").code == 0);
}

TEST_CASE("missing golden store is a configuration error") {
  CHECK(run("golden check --store /tmp/recurlab_no_store_493").code == 2);
}

TEST_CASE("covering counts from the command line") {
  TempDir dir;
  auto r = run("--out " + dir.str() +
               " entropy cover --space torus --region arc:0,1/4 --eps 1/8");
  CHECK(r.code == 0);
  CHECK(r.output.find("exact") != std::string::npos);
  auto bad = run("entropy cover --space torus --region arc:0,1/4 --eps 0");
  CHECK(bad.code == 2);
}
