// polymatrix: construct, classify, solve, reduce, sample, montecarlo and
// simulate polymatrix games from the command line.
//
// Exit codes: 0 success, 2 input/spec error, 3 mathematical infeasibility.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

#include "polymatrix/constructions.hpp"
#include "polymatrix/dynamics.hpp"
#include "polymatrix/equilibrium.hpp"
#include "polymatrix/game.hpp"
#include "polymatrix/game_json.hpp"
#include "polymatrix/reduce.hpp"
#include "polymatrix/sampling.hpp"
#include "polymatrix/svg.hpp"

using namespace polymatrix;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

// Raised for "the math says no" conditions (exit 3), as opposed to
// malformed input (exit 2).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_manifest(const std::string& command, const json& config,
                    const std::vector<std::string>& outputs) {
  for (const auto& path : outputs) {
    json m;
    m["command"] = command;
    m["config"] = config;
    m["version"] = kVersion;
    m["outputs"] = outputs;
    write_file(path + ".manifest.json", m.dump(2) + "\n");
  }
}

std::string vec_to_string(const Vector& v) {
  std::string out = "(";
  char buf[32];
  for (int i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g", v(i));
    out += buf;
    if (i + 1 < v.size()) out += ", ";
  }
  return out + ")";
}

Vector to_vector(const std::vector<double>& v) {
  Vector out(static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out(static_cast<int>(i)) = v[i];
  return out;
}

json dims_json(const std::vector<int>& dims) { return json(dims); }

// ------------------------------------------------------------ construct

struct ConstructArgs {
  std::string kind;
  std::vector<int> dims;
  std::string out;
};

int cmd_construct(const ConstructArgs& a) {
  ConstructionSpec spec{construction_kind_from_string(a.kind),
                        AgentPartition(a.dims)};
  UniquenessReport rep = verify_construction(spec);
  double det = rep.det.value();
  std::printf("kind=%s dims=%s K=%d verdict=%s det=%.12g |det|=%.12g\n",
              a.kind.c_str(), json(a.dims).dump().c_str(),
              spec.partition.total(), to_string(rep.verdict).c_str(), det,
              std::abs(det));
  if (!a.out.empty()) {
    save_game(construct(spec), a.out);
    json cfg{{"kind", a.kind}, {"dims", dims_json(a.dims)}, {"out", a.out}};
    write_manifest("construct", cfg, {a.out});
  }
  return 0;
}

// ------------------------------------------------------------ classify

int cmd_classify(const std::string& in) {
  PolymatrixGame g = load_game(in);
  GameClass cls = classify(consolidate(g), g.partition());
  std::printf("class=%s agents=%d K=%d dims=%s\n", to_string(cls).c_str(),
              g.partition().agents(), g.partition().total(),
              json(g.partition().dims()).dump().c_str());
  return 0;
}

// ------------------------------------------------------------ solve

int cmd_solve(const std::string& in, const std::string& out) {
  PolymatrixGame g = load_game(in);
  SolveResult res = solve_unique(g);
  json report;
  report["verdict"] = to_string(res.verdict);
  if (res.verdict == Verdict::Unique) {
    double residual = nash_residual(g, *res.unique);
    std::printf("verdict=Unique x*=%s nash_residual=%.3e\n",
                vec_to_string(*res.unique).c_str(), residual);
    report["x"] = std::vector<double>(res.unique->data(),
                                      res.unique->data() + res.unique->size());
    report["nash_residual"] = residual;
  } else if (res.verdict == Verdict::NonUnique) {
    auto eqset = equilibrium_set(g);
    double residual = nash_residual(g, eqset->particular);
    std::printf("verdict=NonUnique W=%d particular=%s nash_residual=%.3e\n",
                eqset->nullity(), vec_to_string(eqset->particular).c_str(),
                residual);
    for (const auto& d : eqset->basis)
      std::printf("basis %s\n", vec_to_string(d).c_str());
    report["equilibrium_set"] = eqset->to_json();
    report["nash_residual"] = residual;
  } else {
    std::printf("verdict=NoEquilibrium\n");
  }
  if (!out.empty()) {
    write_file(out, report.dump(2) + "\n");
    write_manifest("solve", json{{"in", in}, {"out", out}}, {out});
  }
  return 0;
}

// ------------------------------------------------------------ reduce

struct ReduceArgs {
  std::string in;
  std::string out;
  int agent = 1;  // 1-based on the command line, like the file format
  int pivot = 1;
  std::vector<double> constraint;
  double rhs = 0.0;
};

int cmd_reduce(const ReduceArgs& a) {
  PolymatrixGame g = load_game(a.in);
  AffineReduction red =
      affine_reduce(g, a.agent - 1, to_vector(a.constraint), a.rhs,
                    a.pivot - 1);
  std::printf("reduced dims=%s\n",
              json(red.game.partition().dims()).dump().c_str());
  if (!a.out.empty()) {
    save_game(red.game, a.out);
    json cfg{{"in", a.in},       {"agent", a.agent},
             {"pivot", a.pivot}, {"constraint", a.constraint},
             {"rhs", a.rhs},     {"out", a.out}};
    write_manifest("reduce", cfg, {a.out});
  }
  return 0;
}

// ------------------------------------------------------------ sample

struct SampleArgs {
  std::string cls = "general";
  std::vector<int> dims;
  std::uint64_t seed = 0;
  int index = 0;
  double scale = 1.0;
  bool gaussian_costs = false;
  std::string out;
};

int cmd_sample(const SampleArgs& a) {
  SamplerConfig cfg;
  cfg.game_class = game_class_from_string(a.cls);
  cfg.dims = a.dims;
  cfg.seed = a.seed;
  cfg.samples = a.index + 1;
  cfg.scale = a.scale;
  cfg.gaussian_costs = a.gaussian_costs;
  PolymatrixGame g = sample_game(cfg, a.index);
  UniquenessReport rep = uniqueness_preconditions(g);
  std::printf("class=%s K=%d verdict=%s rank=%d\n", a.cls.c_str(),
              g.partition().total(), to_string(rep.verdict).c_str(), rep.rank);
  if (!a.out.empty()) {
    save_game(g, a.out);
    json mcfg = cfg.to_json();
    mcfg["index"] = a.index;
    mcfg["out"] = a.out;
    write_manifest("sample", mcfg, {a.out});
  }
  return 0;
}

// ------------------------------------------------------------ montecarlo

struct MonteCarloArgs {
  std::string cls = "general";
  std::vector<int> dims;
  std::uint64_t seed = 0;
  int samples = 1000;
  double scale = 1.0;
  int threads = 1;
  std::string out;
  std::string csv;
};

int cmd_montecarlo(const MonteCarloArgs& a) {
  SamplerConfig cfg;
  cfg.game_class = game_class_from_string(a.cls);
  cfg.dims = a.dims;
  cfg.seed = a.seed;
  cfg.samples = a.samples;
  cfg.scale = a.scale;
  MonteCarloReport rep = mc_unique_fraction(cfg, a.threads);
  std::printf("%s\n", rep.csv_row().c_str());

  std::vector<std::string> outputs;
  if (!a.out.empty()) {
    write_file(a.out, rep.to_json().dump(2) + "\n");
    outputs.push_back(a.out);
  }
  if (!a.csv.empty()) {
    bool fresh = !std::filesystem::exists(a.csv);
    std::ofstream f(a.csv, std::ios::app);
    if (!f) throw std::invalid_argument("cannot open " + a.csv);
    if (fresh) f << MonteCarloReport::csv_header() << "\n";
    f << rep.csv_row() << "\n";
  }
  if (!outputs.empty()) {
    json mcfg = cfg.to_json();
    mcfg["threads"] = a.threads;  // does not affect output bytes
    mcfg["out"] = a.out;
    write_manifest("montecarlo", mcfg, outputs);
  }
  return 0;
}

// ------------------------------------------------------------ simulate

struct SimulateArgs {
  std::string in;
  std::vector<double> x0;
  std::uint64_t seed = 0;
  std::string method = "exact";
  double step = 1e-3;
  double horizon = 1e3;
  double record_every = 0.1;
  std::string out;
  std::string report;
  std::string svg;
};

int cmd_simulate(const SimulateArgs& a) {
  PolymatrixGame g = load_game(a.in);
  const int K = g.partition().total();

  Vector x0;
  if (!a.x0.empty()) {
    if (static_cast<int>(a.x0.size()) != K)
      throw std::invalid_argument("--x0 must have K = " + std::to_string(K) +
                                  " entries");
    x0 = to_vector(a.x0);
  } else {
    GaussianStream rng(a.seed, 0);
    x0.resize(K);
    for (int i = 0; i < K; ++i) x0(i) = rng.gaussian();
  }

  IntegratorConfig cfg;
  cfg.method = integrator_method_from_string(a.method);
  cfg.step = a.step;
  cfg.horizon = a.horizon;
  cfg.record_every = a.record_every;
  cfg.validate();

  Trajectory traj;
  try {
    traj = simulate(g, x0, cfg);
  } catch (const std::runtime_error& e) {
    throw InfeasibleError(e.what());
  }
  std::optional<ConvergenceReport> conv;
  if (equilibrium_set(g))
    conv = convergence_report(g, traj);
  if (conv) {
    std::printf("final_avg_distance=%.6e max_energy_drift=%.6e "
                "max_hyperplane_drift=%.6e%s%s\n",
                conv->final_distance, conv->max_energy_drift,
                conv->max_hyperplane_drift,
                traj.warning.empty() ? "" : " warning=",
                traj.warning.c_str());
  } else {
    std::printf("warning=%s final_state_norm=%.6e\n", traj.warning.c_str(),
                traj.states.back().norm());
  }

  std::vector<std::string> outputs;
  if (!a.out.empty()) {
    write_file(a.out, trajectory_csv(g, traj));
    outputs.push_back(a.out);
  }
  if (!a.report.empty() && conv) {
    write_file(a.report, conv->to_json().dump(2) + "\n");
    outputs.push_back(a.report);
  }
  if (!a.svg.empty()) {
    if (conv) {
      SvgSeries dist{"|xbar - x*|", traj.times, conv->distances};
      SvgOptions dopt;
      dopt.log_x = dopt.log_y = true;
      dopt.title = "time-average distance to the closest equilibrium";
      write_file(a.svg + "-distance.svg", svg_line_plot({dist}, dopt));
      outputs.push_back(a.svg + "-distance.svg");
    }

    // coordinate-pair projections of the orbit
    std::vector<SvgSeries> pairs;
    for (int c = 0; c + 1 < K && c < 6; c += 2) {
      SvgSeries s;
      s.label = "x" + std::to_string(c + 1) + " vs x" + std::to_string(c + 2);
      for (const auto& x : traj.states) {
        s.x.push_back(x(c));
        s.y.push_back(x(c + 1));
      }
      pairs.push_back(std::move(s));
    }
    SvgOptions popt;
    popt.title = "trajectory projections";
    write_file(a.svg + "-projection.svg", svg_line_plot(pairs, popt));
    outputs.push_back(a.svg + "-projection.svg");
  }
  if (!outputs.empty()) {
    json mcfg = cfg.to_json();
    mcfg["in"] = a.in;
    mcfg["seed"] = a.seed;
    mcfg["x0"] = std::vector<double>(x0.data(), x0.data() + x0.size());
    write_manifest("simulate", mcfg, outputs);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polymatrix games: equilibria, uniqueness, gradient dynamics"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct_cmd =
      app.add_subcommand("construct", "build a unique-equilibrium witness");
  construct_cmd->add_option("--kind", ca.kind, "coord-even|coord-odd|zs-even")
      ->required();
  construct_cmd->add_option("--dims", ca.dims, "agent dimensions, e.g. 2,2,2")
      ->delimiter(',')
      ->required();
  construct_cmd->add_option("--out", ca.out, "game JSON output path");

  std::string classify_in;
  auto* classify_cmd = app.add_subcommand("classify", "classify a game file");
  classify_cmd->add_option("--in", classify_in, "game JSON path")->required();

  std::string solve_in, solve_out;
  auto* solve_cmd =
      app.add_subcommand("solve", "describe the Nash equilibrium set");
  solve_cmd->add_option("--in", solve_in, "game JSON path")->required();
  solve_cmd->add_option("--out", solve_out, "report JSON output path");

  ReduceArgs ra;
  auto* reduce_cmd = app.add_subcommand(
      "reduce", "eliminate one coordinate via an affine constraint");
  reduce_cmd->add_option("--in", ra.in, "game JSON path")->required();
  reduce_cmd->add_option("--agent", ra.agent, "1-based agent index")
      ->required();
  reduce_cmd
      ->add_option("--constraint", ra.constraint, "coefficients a, a^T x_i = c")
      ->delimiter(',')
      ->required();
  reduce_cmd->add_option("--rhs", ra.rhs, "constraint right-hand side c")
      ->required();
  reduce_cmd->add_option("--pivot", ra.pivot, "1-based coordinate to eliminate")
      ->required();
  reduce_cmd->add_option("--out", ra.out, "reduced game JSON output path");

  SampleArgs sa;
  auto* sample_cmd = app.add_subcommand("sample", "draw one Gaussian game");
  sample_cmd->add_option("--class", sa.cls, "zero-sum|coordination|general");
  sample_cmd->add_option("--dims", sa.dims, "agent dimensions")
      ->delimiter(',')
      ->required();
  sample_cmd->add_option("--seed", sa.seed, "RNG seed");
  sample_cmd->add_option("--index", sa.index, "sample index within the seed");
  sample_cmd->add_option("--scale", sa.scale, "entry standard deviation");
  sample_cmd->add_flag("--gaussian-costs", sa.gaussian_costs,
                       "sample b as well (default b = 0)");
  sample_cmd->add_option("--out", sa.out, "game JSON output path");

  MonteCarloArgs ma;
  auto* mc_cmd =
      app.add_subcommand("montecarlo", "uniqueness fraction over many draws");
  mc_cmd->add_option("--class", ma.cls, "zero-sum|coordination|general");
  mc_cmd->add_option("--dims", ma.dims, "agent dimensions")
      ->delimiter(',')
      ->required();
  mc_cmd->add_option("--samples", ma.samples, "number of draws");
  mc_cmd->add_option("--seed", ma.seed, "RNG seed");
  mc_cmd->add_option("--scale", ma.scale, "entry standard deviation");
  mc_cmd->add_option("--threads", ma.threads,
                     "worker count (never changes the result)");
  mc_cmd->add_option("--out", ma.out, "report JSON output path");
  mc_cmd->add_option("--csv", ma.csv, "sweep CSV to append a row to");

  SimulateArgs za;
  auto* sim_cmd =
      app.add_subcommand("simulate", "integrate the gradient flow x' = Ax - b");
  sim_cmd->add_option("--in", za.in, "game JSON path")->required();
  sim_cmd->add_option("--x0", za.x0, "initial profile (default: seeded Gaussian)")
      ->delimiter(',');
  sim_cmd->add_option("--seed", za.seed, "seed for the sampled x0");
  sim_cmd->add_option("--method", za.method, "exact|rk4");
  sim_cmd->add_option("--step", za.step, "RK4 substep");
  sim_cmd->add_option("--horizon", za.horizon, "integration horizon");
  sim_cmd->add_option("--record-every", za.record_every, "sampling interval");
  sim_cmd->add_option("--out", za.out, "trajectory CSV output path");
  sim_cmd->add_option("--report", za.report, "convergence JSON output path");
  sim_cmd->add_option("--svg", za.svg, "SVG output path prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*construct_cmd) return cmd_construct(ca);
    if (*classify_cmd) return cmd_classify(classify_in);
    if (*solve_cmd) return cmd_solve(solve_in, solve_out);
    if (*reduce_cmd) return cmd_reduce(ra);
    if (*sample_cmd) return cmd_sample(sa);
    if (*mc_cmd) return cmd_montecarlo(ma);
    if (*sim_cmd) return cmd_simulate(za);
  } catch (const InfeasibleError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
