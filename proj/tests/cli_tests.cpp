#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "polymatrix/constructions.hpp"
#include "polymatrix/game_json.hpp"

using namespace polymatrix;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(POLYMATRIX_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "polymatrix-cli-tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Matrix scalar_block(double v) {
  Matrix m(1, 1);
  m(0, 0) = v;
  return m;
}

// the 3-agent (1,1,1) zero-sum game with p = q = r = 1
PolymatrixGame triangle_game(Vector b) {
  AgentPartition p({1, 1, 1});
  return PolymatrixGame(p, GameClass::ZeroSum,
                        {{0, 1, scalar_block(1.0)},
                         {0, 2, scalar_block(1.0)},
                         {1, 2, scalar_block(1.0)}},
                        std::move(b));
}

}  // namespace

TEST_CASE("construct reports the witness determinants") {
  auto even = run("construct --kind coord-even --dims 2,2,2");
  CHECK(even.exit_code == 0);
  CHECK(even.out.find("|det|=1") != std::string::npos);
  CHECK(even.out.find("verdict=Unique") != std::string::npos);

  auto odd = run("construct --kind coord-odd --dims 3,2,2");
  CHECK(odd.exit_code == 0);
  CHECK(odd.out.find("det=2") != std::string::npos);
}

TEST_CASE("construct rejects a parity violation with exit 2") {
  auto r = run("construct --kind zs-even --dims 3,3,1");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("error") != std::string::npos);
}

TEST_CASE("construct --out writes a loadable game plus a manifest") {
  fs::path game = work_dir() / "witness.json";
  auto r = run("construct --kind zs-even --dims 3,3 --out " + game.string());
  CHECK(r.exit_code == 0);
  auto g = load_game(game.string());
  CHECK(g.partition().total() == 6);
  CHECK(g.class_tag() == GameClass::ZeroSum);
  CHECK(fs::exists(game.string() + ".manifest.json"));
}

TEST_CASE("classify a saved game") {
  fs::path game = work_dir() / "triangle.json";
  save_game(triangle_game(Vector::Zero(3)), game.string());
  auto r = run("classify --in " + game.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("class=zero-sum") != std::string::npos);
  CHECK(r.out.find("K=3") != std::string::npos);
}

TEST_CASE("solve: the K=6 witness with b = e_1 has x* = e_4") {
  fs::path game = work_dir() / "witness-b.json";
  auto g = construct({ConstructionKind::CoordinationEven,
                      AgentPartition({2, 2, 2})});
  save_game(g.with_costs(Vector::Unit(6, 0)), game.string());
  auto r = run("solve --in " + game.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("verdict=Unique") != std::string::npos);
  CHECK(r.out.find("x*=(0, 0, 0, 1, 0, 0)") != std::string::npos);
}

TEST_CASE("solve: degenerate and infeasible triangle games") {
  fs::path flat = work_dir() / "triangle-flat.json";
  save_game(triangle_game(Vector::Zero(3)), flat.string());
  auto r1 = run("solve --in " + flat.string());
  CHECK(r1.exit_code == 0);
  CHECK(r1.out.find("verdict=NonUnique W=1") != std::string::npos);

  fs::path infeasible = work_dir() / "triangle-bad.json";
  save_game(triangle_game((Vector(3) << 1, 0, 0).finished()),
            infeasible.string());
  auto r2 = run("solve --in " + infeasible.string());
  CHECK(r2.exit_code == 0);  // reporting NoEquilibrium is a success
  CHECK(r2.out.find("verdict=NoEquilibrium") != std::string::npos);
}

TEST_CASE("solve on a missing file exits 2") {
  CHECK(run("solve --in /nonexistent/game.json").exit_code == 2);
}

TEST_CASE("reduce pins a coordinate and writes the reduced game") {
  fs::path game = work_dir() / "to-reduce.json";
  auto r0 = run("sample --class general --dims 2,2 --seed 5 --gaussian-costs"
                " --out " + game.string());
  REQUIRE(r0.exit_code == 0);
  fs::path reduced = work_dir() / "reduced.json";
  auto r = run("reduce --in " + game.string() +
               " --agent 1 --constraint 1,0 --rhs 0.75 --pivot 1 --out " +
               reduced.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("reduced dims=[1,2]") != std::string::npos);
  CHECK(load_game(reduced.string()).partition().dims() ==
        std::vector<int>{1, 2});
}

TEST_CASE("montecarlo reproduces the dichotomy and is thread-independent") {
  fs::path rep1 = work_dir() / "mc1.json";
  fs::path rep8 = work_dir() / "mc8.json";
  auto r1 = run("montecarlo --class zero-sum --dims 1,1,1 --samples 300"
                " --seed 11 --threads 1 --out " + rep1.string());
  auto r8 = run("montecarlo --class zero-sum --dims 1,1,1 --samples 300"
                " --seed 11 --threads 8 --out " + rep8.string());
  CHECK(r1.exit_code == 0);
  CHECK(r1.out == r8.out);
  CHECK(slurp(rep1) == slurp(rep8));
  CHECK(r1.out.find("zero-sum,1-1-1,300,0") != std::string::npos);

  fs::path sweep = work_dir() / "sweep.csv";
  auto rc = run("montecarlo --class zero-sum --dims 1,1,1,1 --samples 200"
                " --seed 12 --csv " + sweep.string());
  CHECK(rc.exit_code == 0);
  std::string csv = slurp(sweep);
  CHECK(csv.find("class,dims,samples,fraction,min_sv_min") == 0);
  CHECK(csv.find("zero-sum,1-1-1-1,200,1") != std::string::npos);
}

TEST_CASE("simulate writes byte-identical artifacts on rerun") {
  fs::path game = work_dir() / "triangle-sim.json";
  save_game(triangle_game(Vector::Zero(3)), game.string());
  fs::path csv_a = work_dir() / "traj-a.csv";
  fs::path csv_b = work_dir() / "traj-b.csv";
  std::string common = "simulate --in " + game.string() +
                       " --x0 1,0,0 --horizon 100 --report ";
  fs::path rep_a = work_dir() / "conv-a.json";
  fs::path rep_b = work_dir() / "conv-b.json";
  auto ra = run(common + rep_a.string() + " --out " + csv_a.string() +
                " --svg " + (work_dir() / "plot-a").string());
  auto rb = run(common + rep_b.string() + " --out " + csv_b.string() +
                " --svg " + (work_dir() / "plot-b").string());
  CHECK(ra.exit_code == 0);
  CHECK(ra.out == rb.out);
  CHECK(slurp(csv_a) == slurp(csv_b));
  CHECK(slurp(rep_a) == slurp(rep_b));
  CHECK(slurp(work_dir() / "plot-a-distance.svg") ==
        slurp(work_dir() / "plot-b-distance.svg"));
  CHECK(slurp(work_dir() / "plot-a-projection.svg") ==
        slurp(work_dir() / "plot-b-projection.svg"));
  // the closest equilibrium from x0 = (1,0,0) is (1/3, -1/3, 1/3)
  std::string conv = slurp(rep_a);
  CHECK(conv.find("0.3333333333333") != std::string::npos);
}

TEST_CASE("simulate with ExactFlow on an infeasible game exits 3") {
  fs::path game = work_dir() / "triangle-infeasible.json";
  save_game(triangle_game((Vector(3) << 1, 0, 0).finished()), game.string());
  auto r = run("simulate --in " + game.string() + " --x0 0,0,0 --horizon 1");
  CHECK(r.exit_code == 3);
  auto rk = run("simulate --in " + game.string() +
                " --x0 0,0,0 --horizon 1 --method rk4");
  CHECK(rk.exit_code == 0);
}
