#include "polymatrix/reduce.hpp"

#include <stdexcept>

namespace polymatrix {

StrategyProfile AffineReduction::lift(const StrategyProfile& y) const {
  const auto& rp = game.partition();
  if (y.size() != rp.total())
    throw std::invalid_argument("reduced profile length mismatch");
  StrategyProfile x(rp.total() + 1);
  int src = 0, dst = 0;
  for (int j = 0; j < rp.agents(); ++j) {
    if (j == agent) {
      x.segment(dst, basis.rows()) = basis * y.segment(src, rp.dim(j)) + shift;
      dst += static_cast<int>(basis.rows());
    } else {
      x.segment(dst, rp.dim(j)) = y.segment(src, rp.dim(j));
      dst += rp.dim(j);
    }
    src += rp.dim(j);
  }
  return x;
}

AffineReduction affine_reduce(const PolymatrixGame& game, int agent,
                              const Vector& a, double c, int pivot) {
  const auto& p = game.partition();
  if (agent < 0 || agent >= p.agents())
    throw std::invalid_argument("invalid agent index");
  const int ki = p.dim(agent);
  if (a.size() != ki)
    throw std::invalid_argument("constraint coefficient length mismatch");
  if (pivot < 0 || pivot >= ki)
    throw std::invalid_argument("pivot coordinate out of range");
  if (a(pivot) == 0.0)
    throw std::invalid_argument("cannot pivot on zero coefficient");
  if (ki < 2)
    throw std::invalid_argument("reduction would empty the agent");

  // x_i = P y + t with y the remaining coordinates of agent i.
  Matrix P = Matrix::Zero(ki, ki - 1);
  Vector t = Vector::Zero(ki);
  t(pivot) = c / a(pivot);
  int col = 0;
  for (int v = 0; v < ki; ++v) {
    if (v == pivot) continue;
    P(v, col) = 1.0;
    P(pivot, col) = -a(v) / a(pivot);
    ++col;
  }

  std::vector<int> dims = p.dims();
  dims[agent] -= 1;
  AgentPartition rp(std::move(dims));

  std::vector<InteractionBlock> blocks;
  Vector costs(rp.total());
  for (int j = 0; j < p.agents(); ++j) {
    auto bj = agent_segment(p, game.costs(), j);
    if (j == agent) {
      costs.segment(rp.offset(j), rp.dim(j)) = P.transpose() * bj;
    } else {
      costs.segment(rp.offset(j), rp.dim(j)) = bj - game.block(j, agent) * t;
    }
    for (int l = 0; l < p.agents(); ++l) {
      if (j == l) continue;
      Matrix blk = game.block(j, l);
      if (l == agent) blk = blk * P;
      if (j == agent) blk = P.transpose() * blk;
      if (!blk.isZero(0.0)) blocks.push_back({j, l, std::move(blk)});
    }
  }

  // The substitution mixes the class relation, so the result is General.
  PolymatrixGame reduced(rp, GameClass::General, std::move(blocks),
                         std::move(costs));
  return AffineReduction{std::move(reduced), agent, pivot, std::move(P),
                         std::move(t)};
}

}  // namespace polymatrix
