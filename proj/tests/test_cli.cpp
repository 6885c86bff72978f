#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sdesign/cli.hpp"
#include "sdesign/design_io.hpp"

using namespace sdesign;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "sdesign_cli_test") {
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

}  // namespace

TEST_CASE("construct writes a verified design") {
  TempDir tmp;
  const Run r = run({"construct", "--dim", "3", "--points", "8", "--output", tmp.file("o.txt")});
  CHECK(r.code == 0);
  CHECK(r.out.find("Octahedron(d=3)") != std::string::npos);
  CHECK(r.out.find("harmonic basis: PASS") != std::string::npos);
  CHECK(r.out.find("monomial moments: PASS") != std::string::npos);
  const DesignMatrix u = read_design_file(tmp.file("o.txt"));
  CHECK(u.dimension() == 3);
  CHECK(u.size() == 8);

  const Run json = run({"construct", "--dim", "4", "--points", "15", "--format", "json"});
  CHECK(json.code == 0);
  CHECK(parse_json(json.out).size() == 15);
  CHECK(json.err.find("AntipodalMerge") != std::string::npos);
}

TEST_CASE("construct refuses sizes without a construction") {
  const Run open = run({"construct", "--dim", "2", "--points", "7"});
  CHECK(open.code == 3);
  CHECK(open.out.empty());
  CHECK(open.err.find("open") != std::string::npos);
  CHECK(open.err.find("announced") != std::string::npos);

  const Run below = run({"construct", "--dim", "3", "--points", "6"});
  CHECK(below.code == 3);
  CHECK(below.err.find("below the lower bound N_3(3) = 8") != std::string::npos);
}

TEST_CASE("construct usage and I/O errors") {
  CHECK(run({"construct", "--dim", "3"}).code == 2);
  CHECK(run({"construct", "--dim", "x", "--points", "8"}).code == 2);
  CHECK(run({"construct", "--dim", "3", "--points", "8", "--format", "xml"}).code == 2);
  const Run unwritable =
      run({"construct", "--dim", "3", "--points", "8", "-o", "/nonexistent/dir/o.txt"});
  CHECK(unwritable.code == 2);
  CHECK(unwritable.err.find("cannot write") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify exit codes") {
  TempDir tmp;
  REQUIRE(run({"construct", "--dim", "3", "--points", "8", "-o", tmp.file("oct.txt")}).code == 0);
  const Run ok = run({"verify", tmp.file("oct.txt"), "--strength", "3"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("harmonic basis: PASS") != std::string::npos);

  write(tmp.file("tri.txt"),
        "# spherical-design\n1 3 3\n# recipe: triangle\n"
        "1 0\n-0.5 0.8660254037844386\n-0.5 -0.8660254037844386\n");
  const Run tri = run({"verify", tmp.file("tri.txt"), "-t", "3"});
  CHECK(tri.code == 1);
  CHECK(tri.out.find("degree 3 max residual: 3") != std::string::npos);
  CHECK(run({"verify", tmp.file("tri.txt"), "-t", "2"}).code == 0);

  write(tmp.file("trunc.txt"), "# spherical-design\n3 8 3\n# recipe: x\n1 0 0 0\n");
  CHECK(run({"verify", tmp.file("trunc.txt")}).code == 2);
  CHECK(run({"verify", tmp.file("missing.txt")}).code == 2);

  const Run json = run({"verify", tmp.file("oct.txt"), "--format", "json"});
  CHECK(json.code == 0);
  const auto doc = nlohmann::json::parse(json.out);
  CHECK(doc.at("passed") == true);
  CHECK(doc.at("harmonic").at("max_residual_by_degree").size() == 3);
}

TEST_CASE("verify reports norm failures as failures") {
  TempDir tmp;
  write(tmp.file("long.txt"), "# spherical-design\n1 2 1\n# recipe: x\n2 0\n-2 0\n");
  const Run r = run({"verify", tmp.file("long.txt")});
  CHECK(r.code == 1);
}

TEST_CASE("sidon subcommands") {
  const Run search = run({"sidon", "search", "--n", "12", "--t", "3"});
  CHECK(search.code == 0);
  CHECK(search.out == "s(12,3) = 3, witness {1,3,5}\n");

  const Run construct = run({"sidon", "construct", "--n", "25", "--t", "3"});
  CHECK(construct.code == 0);
  CHECK(construct.out == "{1,6,11,16,21}\n");

  const Run table = run({"sidon", "table", "--max-n", "30", "--jobs", "2"});
  CHECK(table.code == 0);
  CHECK(table.out.find("NO") == std::string::npos);

  const Run json = run({"sidon", "table", "--max-n", "4", "--format", "json"});
  CHECK(json.code == 0);
  const auto rows = nlohmann::json::parse(json.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].at("n") == 4);
  CHECK(rows[2].at("exact") == 1);

  const Run budget = run({"sidon", "search", "--n", "101", "--budget", "3"});
  CHECK(budget.code == 1);
  CHECK(budget.err.find("BUDGET EXHAUSTED") != std::string::npos);
  CHECK(budget.out.find(">=") != std::string::npos);

  CHECK(run({"sidon"}).code == 2);
  CHECK(run({"sidon", "search", "--n", "1"}).code == 2);
  CHECK(run({"sidon", "search", "--n", "10", "--t", "4"}).code == 2);
}

TEST_CASE("table and scan") {
  const Run table = run({"table", "--max-d", "9"});
  CHECK(table.code == 0);
  CHECK(table.out.find("2\t6\t6, 8, ≥ 10\n") != std::string::npos);
  CHECK(table.out.find("9\t20\t20, 22, ≥ 24\n") != std::string::npos);

  const Run checked = run({"table", "--max-d", "3", "--check", "--format", "json"});
  CHECK(checked.code == 0);
  CHECK(nlohmann::json::parse(checked.out)[1].at("check_passed") == true);

  const Run scan = run({"scan", "--max-d", "9", "--jobs", "2"});
  CHECK(scan.code == 0);
  CHECK(scan.out.find("COUNTEREXAMPLE") == std::string::npos);
  CHECK(run({"scan", "--max-d", "9", "--budget", "1"}).code == 1);
  CHECK(run({"scan", "--max-d", "8"}).code == 2);
}
