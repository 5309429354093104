#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "varbound/matrix_io.hpp"
#include "varbound/report.hpp"

using namespace varbound;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(VARBOUND_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("varbound_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_rotated_pair(const fs::path& dir) {
  CMatrix x = CMatrix::Zero(3, 3), y = CMatrix::Zero(3, 3);
  x(0, 0) = -1;
  x(2, 2) = 1;
  y(0, 1) = y(1, 0) = 1;
  y(1, 2) = Complex(0, 1);
  y(2, 1) = Complex(0, -1);
  std::ofstream(dir / "X.json") << matrix_to_json(HermitianOperator(x));
  std::ofstream(dir / "Y.json") << matrix_to_json(HermitianOperator(y));
}

}  // namespace

TEST_CASE("doubles are written with 17 significant digits") {
  CHECK(report::format_double(0.1) == "0.10000000000000001");
  CHECK(report::format_double(0.25) == "0.25");
  CHECK(report::format_double(std::nan("")) == "null");
  report::Json j;
  j["v"] = 1.0 / 3;
  j["a"] = report::Json::array({1, 2});
  CHECK(report::dump(j) == "{\n  \"v\": 0.33333333333333331,\n  \"a\": [1, 2]\n}\n");
}

TEST_CASE("atomic writes replace the target in one step") {
  const fs::path dir = scratch_dir();
  const fs::path target = dir / "out.json";
  report::write_atomic(target, "first");
  report::write_atomic(target, "second");
  CHECK(slurp(target) == "second");
  int siblings = 0;
  for (const auto& e : fs::directory_iterator(dir)) siblings += e.path().filename().string().rfind(".out.json", 0) == 0;
  CHECK(siblings == 0);
  CHECK_THROWS(report::write_atomic(dir / "missing" / "x.json", "data"));
  fs::remove_all(dir);
}

TEST_CASE("bound command for spin 1, exact") {
  const Run r = cli("bound --angmom 1 --method exact");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == 0.4375);
  CHECK(j["polynomial"] == "16λ - 7");
  CHECK(j["method"] == "exact");
  CHECK(j["witness"].size() == 3);
}

TEST_CASE("bound command for spin 10, numeric") {
  const Run r = cli("bound --angmom 10 --method numeric");
  REQUIRE(r.status == 0);
  CHECK(std::abs(nlohmann::json::parse(r.out)["value"].get<double>() - 2.445) <= 2e-3);
}

TEST_CASE("bound command on matrix files, certified") {
  const fs::path dir = scratch_dir();
  write_rotated_pair(dir);
  const Run r = cli("bound " + (dir / "X.json").string() + " " + (dir / "Y.json").string() +
                    " --method certified --tol 1e-4");
  REQUIRE(r.status == 0);
  const double v = nlohmann::json::parse(r.out)["value"].get<double>();
  CHECK(v <= 15.0 / 32);
  CHECK(v >= 15.0 / 32 - 1e-4);

  const Run e = cli("bound " + (dir / "X.json").string() + " " + (dir / "Y.json").string() + " --method exact");
  REQUIRE(e.status == 0);
  CHECK(nlohmann::json::parse(e.out)["exact_value"] == "15/32");
  fs::remove_all(dir);
}

TEST_CASE("half-integer spins accept fractions and decimals") {
  const Run a = cli("bound --angmom 3/2");
  const Run b = cli("bound --angmom 1.5");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out)["j"] == "3/2");
  CHECK(cli("bound --angmom 1.25").status == 1);
  CHECK(cli("bound --angmom 0").status == 1);
}

TEST_CASE("table of exact spin bounds") {
  const Run r = cli("table1 --j 1/2..2 --method exact");
  REQUIRE(r.status == 0);
  const auto rows = nlohmann::json::parse(r.out)["rows"];
  REQUIRE(rows.size() == 4);
  const double values[] = {0.25, 0.4375, 0.6009, 0.7496};
  const int orders[] = {1, 1, 3, 3};
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(rows[k]["bound"].get<double>() - values[k]) <= 1e-4);
    CHECK(rows[k]["order"].get<int>() == orders[k]);
    CHECK(rows[k]["status"] == "ok");
  }
}

TEST_CASE("empty spin list gives an empty table") {
  const Run r = cli("table1 --j \"\"");
  CHECK(r.status == 0);
  CHECK(nlohmann::json::parse(r.out)["rows"].empty());
}

TEST_CASE("exit codes") {
  CHECK(cli("bound /nonexistent/X.json /nonexistent/Y.json").status == 1);
  CHECK(cli("bound --angmom 1 --weights 1,2 --method exact").status == 1);
  CHECK(cli("bound --angmom 1 --weights 1,-2").status == 1);
  CHECK(cli("bound --angmom 2 --method exact").status == 0);
  CHECK(cli("bound --angmom 2 --method exact", "VARBOUND_BUDGET=10").status == 3);
  const Run table = cli("table1 --j 1/2,2 --method exact", "VARBOUND_BUDGET=10");
  CHECK(table.status == 3);
  const auto rows = nlohmann::json::parse(table.out)["rows"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["status"] == "ok");
  CHECK(rows[1]["status"].get<std::string>().rfind("budget exceeded", 0) == 0);
}

TEST_CASE("weighted certified run brackets the weighted bound") {
  const Run r = cli("bound --angmom 1 --weights 1,2 --method certified --tol 1e-3");
  REQUIRE(r.status == 0);
  const double v = nlohmann::json::parse(r.out)["value"].get<double>();
  CHECK(v <= 15.0 / 32 + 1e-12);
  CHECK(v >= 15.0 / 32 - 1e-3);
}

TEST_CASE("identical runs give byte-identical reports") {
  CHECK(cli("bound --angmom 5/2 --seed 7").out == cli("bound --angmom 5/2 --seed 7").out);
  CHECK(cli("jnr3d --angmom 1 --dirs 200").out == cli("jnr3d --angmom 1 --dirs 200").out);
}

TEST_CASE("geometry commands") {
  const auto cloud = nlohmann::json::parse(cli("jnr3d --angmom 3/2 --dirs 4000").out);
  CHECK(std::abs(cloud["min_shade"].get<double>() - 0.6009) <= 2e-3);

  const fs::path dir = scratch_dir();
  const std::string base = (dir / "range").string();
  REQUIRE(cli("urange --angmom 1 --gnuplot --out " + base).status == 0);
  CHECK(fs::exists(base + ".csv"));
  CHECK(slurp(base + ".gp").find("plot 'range.csv'") != std::string::npos);
  CHECK(nlohmann::json::parse(cli("urange --angmom 1").out)["cells"].size() == 4);
  fs::remove_all(dir);

  const auto dual = nlohmann::json::parse(cli("dual2d --angmom 1/2 --dirs 16").out);
  for (const auto& p : dual["points"]) {
    const double r = std::hypot(p[0].get<double>(), p[1].get<double>());
    CHECK(std::abs(r - 2.0) <= 1e-10);
  }
  CHECK(cli("jnr2d --angmom 1 --gnuplot").status == 1);
}
