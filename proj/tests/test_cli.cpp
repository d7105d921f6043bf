#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "evc/condensation.hpp"
#include "evc/csv.hpp"
#include "evc/driver.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("evc_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int counter;
};
int TempDir::counter = 0;

int run(const std::string& args) {
  std::string cmd = std::string(EVC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void write_fixture(const fs::path& p, const evc::SparseGraph& g) {
  std::ofstream out(p);
  evc::write_edge_list(out, g);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("compute writes a normalized descending rank csv") {
  TempDir tmp;
  write_fixture(tmp.path / "g.txt", fixtures::seven_block());
  REQUIRE(run("compute --input " + (tmp.path / "g.txt").string() +
              " --algo componentwise --out-dir " + tmp.path.string()) == 0);

  std::ifstream in(tmp.path / "rank.csv");
  auto rows = evc::read_rank_csv(in);
  REQUIRE(rows.size() == 7);
  double sum = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    sum += rows[i].score;
    if (i > 0) {
      // descending score, ties by ascending label
      CHECK(rows[i - 1].score >= rows[i].score);
      if (rows[i - 1].score == rows[i].score)
        CHECK(rows[i - 1].label < rows[i].label);
    }
  }
  CHECK(std::fabs(sum - 1.0) <= 1e-9);
  CHECK(rows[0].score == doctest::Approx(0.2083).epsilon(5e-3));

  CHECK(fs::exists(tmp.path / "report.csv"));
  std::string report = slurp(tmp.path / "report.csv");
  CHECK(report.rfind("component,level,size,iterations,lambda,status,converged",
                     0) == 0);
}

TEST_CASE("compute is byte-deterministic") {
  TempDir tmp;
  write_fixture(tmp.path / "g.txt", fixtures::twelve_block());
  REQUIRE(run("compute --input " + (tmp.path / "g.txt").string() +
              " --algo auto-blocks --out-dir " + (tmp.path / "a").string()) ==
          0);
  REQUIRE(run("compute --input " + (tmp.path / "g.txt").string() +
              " --algo auto-blocks --out-dir " + (tmp.path / "b").string()) ==
          0);
  CHECK(slurp(tmp.path / "a" / "rank.csv") == slurp(tmp.path / "b" / "rank.csv"));
}

TEST_CASE("compute auto-blocks splits mass by vertex count") {
  TempDir tmp;
  write_fixture(tmp.path / "g.txt", fixtures::twelve_block());
  REQUIRE(run("compute --input " + (tmp.path / "g.txt").string() +
              " --algo auto-blocks --out-dir " + tmp.path.string()) == 0);
  std::ifstream in(tmp.path / "rank.csv");
  auto rows = evc::read_rank_csv(in);
  double first_block = 0.0;
  for (const auto& r : rows)
    if (r.label < 7) first_block += r.score;
  CHECK(first_block == doctest::Approx(7.0 / 12.0).epsilon(1e-6));
}

TEST_CASE("exit codes: usage, io") {
  TempDir tmp;
  CHECK(run("compute") == 1);                       // missing --input
  CHECK(run("frobnicate") == 1);                    // unknown subcommand
  CHECK(run("compute --input /nonexistent/x.txt --out-dir " +
            tmp.path.string()) == 2);
  write_fixture(tmp.path / "g.txt", fixtures::seven_block());
  CHECK(run("compute --input " + (tmp.path / "g.txt").string() +
            " --algo warp-drive --out-dir " + tmp.path.string()) == 1);
  std::ofstream bad(tmp.path / "bad.txt");
  bad << "not an edge list\n";
  bad.close();
  CHECK(run("compute --input " + (tmp.path / "bad.txt").string() +
            " --out-dir " + tmp.path.string()) == 2);
}

TEST_CASE("non-convergence still exits zero with a flag in the report") {
  TempDir tmp;
  std::ofstream g(tmp.path / "cycle.txt");
  g << "0 1\n1 0\n";  // periodic pair
  g.close();
  REQUIRE(run("compute --input " + (tmp.path / "cycle.txt").string() +
              " --max-iter 50 --out-dir " + tmp.path.string()) == 0);
  std::string report = slurp(tmp.path / "report.csv");
  CHECK(report.find(",0\n") != std::string::npos);  // converged=0 column
}

TEST_CASE("generate dag-of-sccs: deterministic, level span") {
  TempDir tmp;
  const std::string out1 = (tmp.path / "g1.txt").string();
  const std::string out2 = (tmp.path / "g2.txt").string();
  REQUIRE(run("generate dag-of-sccs --components 10 --comp-size 5 --seed 7 "
              "--output " + out1) == 0);
  REQUIRE(run("generate dag-of-sccs --components 10 --comp-size 5 --seed 7 "
              "--output " + out2) == 0);
  CHECK(slurp(out1) == slurp(out2));

  std::ifstream in(out1);
  evc::SparseGraph g = evc::parse_edge_list(in);
  CHECK(g.vertex_count() == 50);
  evc::Decomposition d = evc::find_components(g);
  CHECK(d.max_level >= 1);  // at least two levels
}

TEST_CASE("generate isolated-blocks feeds detect_blocks") {
  TempDir tmp;
  const std::string out = (tmp.path / "blocks.txt").string();
  REQUIRE(run("generate isolated-blocks --blocks 2 --output " + out) == 0);
  std::ifstream in(out);
  evc::SparseGraph g = evc::parse_edge_list(in);
  CHECK(evc::detect_blocks(g).blocks.size() == 2);
}

TEST_CASE("generate giant-component hits the requested fraction") {
  TempDir tmp;
  const std::string out = (tmp.path / "giant.txt").string();
  REQUIRE(run("generate giant-component --n 2000 --giant-frac 0.5 --seed 3 "
              "--output " + out) == 0);
  std::ifstream in(out);
  evc::SparseGraph g = evc::parse_edge_list(in);
  REQUIRE(g.vertex_count() == 2000);
  evc::Decomposition d = evc::find_components(g);
  std::uint32_t largest = 0;
  for (const auto& c : d.components) largest = std::max(largest, c.size);
  CHECK(largest >= 900);

  CHECK(run("generate giant-component --n 4 --output " +
            (tmp.path / "tiny.txt").string()) == 1);  // invalid params
}

TEST_CASE("sweep covers the tolerance cross product") {
  TempDir tmp;
  write_fixture(tmp.path / "g.txt", fixtures::seven_block());
  REQUIRE(run("sweep --input " + (tmp.path / "g.txt").string() +
              " --tols 1e-3,1e-6,1e-9 --out-dir " + tmp.path.string()) == 0);
  std::ifstream in(tmp.path / "sweep.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "tol,algorithm,solve_seconds,total_seconds,total_iterations");
  long long iters[2][3];
  int rows = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string tol, algo, s1, s2, it;
    std::getline(ss, tol, ',');
    std::getline(ss, algo, ',');
    std::getline(ss, s1, ',');
    std::getline(ss, s2, ',');
    std::getline(ss, it, ',');
    iters[algo == "baseline" ? 1 : 0][rows / 2] = std::stoll(it);
    ++rows;
  }
  CHECK(rows == 6);
  // tighter tolerance never takes fewer iterations
  for (int a = 0; a < 2; ++a) {
    CHECK(iters[a][0] <= iters[a][1]);
    CHECK(iters[a][1] <= iters[a][2]);
  }
}

TEST_CASE("compare emits per-component rows against one baseline count") {
  TempDir tmp;
  std::ofstream g(tmp.path / "scc.txt");
  g << "0 1\n1 2\n2 0\n0 0\n";  // one strongly connected component
  g.close();
  REQUIRE(run("compare --input " + (tmp.path / "scc.txt").string() +
              " --tol 1e-9 --out-dir " + tmp.path.string()) == 0);
  std::ifstream in(tmp.path / "compare.csv");
  std::string header, row, extra;
  std::getline(in, header);
  CHECK(header ==
        "component,level,size,iterations,lambda,status,baseline_iterations,"
        "max_abs_diff");
  REQUIRE(std::getline(in, row));
  CHECK_FALSE(std::getline(in, extra));  // single component, single row
  const double diff = std::stod(row.substr(row.rfind(',') + 1));
  CHECK(diff <= 1e-8);
}

TEST_CASE("forcing scalar kernels gives the same ranks") {
  TempDir tmp;
  write_fixture(tmp.path / "g.txt", fixtures::seven_block());
  REQUIRE(run("compute --input " + (tmp.path / "g.txt").string() +
              " --kernels scalar --out-dir " + (tmp.path / "s").string()) == 0);
  REQUIRE(run("compute --input " + (tmp.path / "g.txt").string() +
              " --kernels auto --out-dir " + (tmp.path / "a").string()) == 0);
  std::ifstream s_in(tmp.path / "s" / "rank.csv");
  std::ifstream a_in(tmp.path / "a" / "rank.csv");
  auto s_rows = evc::read_rank_csv(s_in);
  auto a_rows = evc::read_rank_csv(a_in);
  REQUIRE(s_rows.size() == a_rows.size());
  for (std::size_t i = 0; i < s_rows.size(); ++i) {
    CHECK(s_rows[i].label == a_rows[i].label);
    CHECK(s_rows[i].score == doctest::Approx(a_rows[i].score).epsilon(1e-9));
  }
}
