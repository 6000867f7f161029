#include <doctest.h>

#include <cmath>

#include "polymatrix/equilibrium.hpp"
#include "polymatrix/game.hpp"
#include "polymatrix/reduce.hpp"
#include "polymatrix/sampling.hpp"

using namespace polymatrix;

namespace {

// Residual of the constrained first-order conditions at x: agents j != i
// need a zero gradient, agent i needs its gradient orthogonal to the
// constraint tangent space {v : a^T v = 0}.
double constrained_foc_residual(const PolymatrixGame& g, int agent,
                                const Vector& a, const Vector& x) {
  const auto& p = g.partition();
  Vector field = payoff_field(g, x);
  double res = 0.0;
  for (int j = 0; j < p.agents(); ++j) {
    Vector fj = agent_segment(p, field, j);
    if (j != agent) {
      res = std::max(res, fj.cwiseAbs().maxCoeff());
    } else {
      Vector tangent_part = fj - (fj.dot(a) / a.squaredNorm()) * a;
      res = std::max(res, tangent_part.cwiseAbs().maxCoeff());
    }
  }
  return res;
}

}  // namespace

TEST_CASE("affine_reduce input validation") {
  SamplerConfig cfg;
  cfg.game_class = GameClass::General;
  cfg.dims = {2, 2};
  cfg.seed = 1;
  cfg.samples = 1;
  auto g = sample_game(cfg, 0);
  Vector a(2);
  a << 0.0, 1.0;
  CHECK_THROWS_AS(affine_reduce(g, 0, a, 1.0, 0), std::invalid_argument);

  SamplerConfig one;
  one.game_class = GameClass::General;
  one.dims = {1, 2};
  one.seed = 1;
  one.samples = 1;
  auto g1 = sample_game(one, 0);
  Vector a1(1);
  a1 << 1.0;
  CHECK_THROWS_AS(affine_reduce(g1, 0, a1, 1.0, 0), std::invalid_argument);
}

TEST_CASE("pinning a coordinate: lift satisfies the pinned constraint") {
  // (2,2,2) reduces to (1,2,2): every k_i stays <= K/2, so the reduced
  // game is generically uniquely solvable
  SamplerConfig cfg;
  cfg.game_class = GameClass::General;
  cfg.dims = {2, 2, 2};
  cfg.seed = 314;
  cfg.samples = 1;
  cfg.gaussian_costs = true;
  auto g = sample_game(cfg, 0);
  const double c = 0.75;
  Vector a = Vector::Unit(2, 0);

  auto red = affine_reduce(g, 0, a, c, 0);
  CHECK(red.game.partition().dims() == std::vector<int>{1, 2, 2});
  CHECK(red.game.class_tag() == GameClass::General);

  auto res = solve_unique(red.game);
  REQUIRE(res.verdict == Verdict::Unique);
  Vector x = red.lift(*res.unique);
  CHECK(x(0) == doctest::Approx(c));
  CHECK(constrained_foc_residual(g, 0, a, x) <= 1e-9);
}

TEST_CASE("simplex-interior game reduces to a 1-dim-per-agent game") {
  // 2 agents, 2 strategies each, both constrained by 1^T x_i = 1.
  AgentPartition p({2, 2});
  Matrix M(2, 2);
  M << 1, -1, -1, 1;  // matching-pennies style interaction
  PolymatrixGame g(p, GameClass::ZeroSum, {{0, 1, M}}, Vector::Zero(4));
  Vector ones = Vector::Ones(2);

  auto red1 = affine_reduce(g, 0, ones, 1.0, 1);
  auto red2 = affine_reduce(red1.game, 1, ones, 1.0, 1);
  CHECK(red2.game.partition().dims() == std::vector<int>{1, 1});

  auto res = solve_unique(red2.game);
  REQUIRE(res.verdict == Verdict::Unique);
  Vector x = red1.lift(red2.lift(*res.unique));
  // the fully-mixed equilibrium of matching pennies
  CHECK((x - 0.5 * Vector::Ones(4)).norm() < 1e-10);
  CHECK(x.segment(0, 2).sum() == doctest::Approx(1.0));
  CHECK(x.segment(2, 2).sum() == doctest::Approx(1.0));

  // brute-force grid check of best responses on the reduced game: utilities
  // are linear in the own coordinate, so no grid deviation may improve
  for (double dev = -2.0; dev <= 2.0; dev += 0.25) {
    for (int agent = 0; agent < 2; ++agent) {
      Vector y = *res.unique;
      Vector yd = y;
      yd(agent) += dev;
      CHECK(utility(red2.game, yd, agent) <=
            utility(red2.game, y, agent) + 1e-10);
    }
  }
}

TEST_CASE("pivot with c=0 on an already-zero coordinate keeps the set") {
  // K=3, dims (2,1): equilibria are {x3 = 1, x1 = -2 x2}; the slice with
  // x1 = 0 is the single point (0, 0, 1).
  AgentPartition p({2, 1});
  Matrix A(3, 3);
  A << 0, 0, 1, 0, 0, 2, 1, 2, 0;
  Vector b(3);
  b << 1, 2, 0;
  PolymatrixGame g = game_from_consolidated(A, p, GameClass::General, b);

  auto red = affine_reduce(g, 0, Vector::Unit(2, 0), 0.0, 0);
  auto res = solve_unique(red.game);
  REQUIRE(res.verdict == Verdict::Unique);
  Vector x = red.lift(*res.unique);
  Vector want(3);
  want << 0, 0, 1;
  CHECK((x - want).norm() < 1e-10);
  CHECK(nash_residual(g, x) < 1e-10);  // lies in the original equilibrium set
}

TEST_CASE("reduce-then-lift preserves the payoff field on the surface") {
  GaussianStream rng(555, 0);
  for (int rep = 0; rep < 30; ++rep) {
    SamplerConfig cfg;
    cfg.game_class = GameClass::General;
    cfg.dims = {3, 2, 2};
    cfg.seed = 1000 + rep;
    cfg.samples = 1;
    cfg.gaussian_costs = true;
    auto g = sample_game(cfg, 0);

    int agent = rep % 3;
    int ki = g.partition().dim(agent);
    Vector a(ki);
    for (int v = 0; v < ki; ++v) a(v) = rng.gaussian();
    int pivot = rep % ki;
    if (std::abs(a(pivot)) < 0.1) a(pivot) = 1.0;
    double c = rng.gaussian();

    auto red = affine_reduce(g, agent, a, c, pivot);
    Vector y(red.game.partition().total());
    for (int v = 0; v < y.size(); ++v) y(v) = rng.gaussian();

    Vector x = red.lift(y);
    CHECK(std::abs(agent_segment(g.partition(), x, agent).dot(a) - c) < 1e-10);

    Vector orig_field = payoff_field(g, x);
    Vector red_field = payoff_field(red.game, y);
    const auto& rp = red.game.partition();
    for (int j = 0; j < rp.agents(); ++j) {
      Vector want = agent_segment(g.partition(), orig_field, j);
      if (j == agent) want = red.basis.transpose() * want;
      CHECK((agent_segment(rp, red_field, j) - want).cwiseAbs().maxCoeff() <=
            1e-10 * std::max(1.0, orig_field.norm()));
    }
  }
}
