#include "polymatrix/game.hpp"

#include <numeric>
#include <stdexcept>

namespace polymatrix {

std::string to_string(GameClass c) {
  switch (c) {
    case GameClass::ZeroSum:
      return "zero-sum";
    case GameClass::Coordination:
      return "coordination";
    case GameClass::General:
      return "general";
  }
  throw std::logic_error("unreachable game class");
}

GameClass game_class_from_string(const std::string& s) {
  if (s == "zero-sum") return GameClass::ZeroSum;
  if (s == "coordination") return GameClass::Coordination;
  if (s == "general") return GameClass::General;
  throw std::invalid_argument("unknown game class: " + s);
}

AgentPartition::AgentPartition(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.size() < 2)
    throw std::invalid_argument("partition needs at least 2 agents");
  offsets_.reserve(dims_.size());
  for (int k : dims_) {
    if (k < 1) throw std::invalid_argument("agent dimension must be >= 1");
    offsets_.push_back(total_);
    total_ += k;
  }
}

PolymatrixGame::PolymatrixGame(AgentPartition partition, GameClass cls,
                               std::vector<InteractionBlock> blocks,
                               Vector costs)
    : partition_(std::move(partition)), class_(cls), costs_(std::move(costs)) {
  if (costs_.size() != partition_.total())
    throw std::invalid_argument("cost vector length must equal K");
  const bool symmetric_class = class_ != GameClass::General;
  for (auto& blk : blocks) {
    if (blk.i == blk.j)
      throw std::invalid_argument("diagonal blocks are identically zero and never stored");
    if (blk.i < 0 || blk.j < 0 || blk.i >= partition_.agents() ||
        blk.j >= partition_.agents())
      throw std::invalid_argument("block agent index out of range");
    if (symmetric_class && blk.i > blk.j)
      throw std::invalid_argument(
          "symmetric classes store only i<j blocks; the mirror is derived");
    if (blk.payoff.rows() != partition_.dim(blk.i) ||
        blk.payoff.cols() != partition_.dim(blk.j))
      throw std::invalid_argument("block shape disagrees with the partition");
    auto key = std::make_pair(blk.i, blk.j);
    if (blocks_.count(key))
      throw std::invalid_argument("duplicate block for an agent pair");
    blocks_.emplace(key, std::move(blk.payoff));
  }
}

Matrix PolymatrixGame::block(int i, int j) const {
  if (i == j) return Matrix::Zero(partition_.dim(i), partition_.dim(j));
  auto it = blocks_.find({i, j});
  if (it != blocks_.end()) return it->second;
  if (class_ != GameClass::General) {
    auto mirror = blocks_.find({j, i});
    if (mirror != blocks_.end()) {
      return class_ == GameClass::ZeroSum ? Matrix(-mirror->second.transpose())
                                          : Matrix(mirror->second.transpose());
    }
  }
  return Matrix::Zero(partition_.dim(i), partition_.dim(j));
}

PolymatrixGame PolymatrixGame::with_costs(Vector b) const {
  PolymatrixGame g = *this;
  if (b.size() != partition_.total())
    throw std::invalid_argument("cost vector length must equal K");
  g.costs_ = std::move(b);
  return g;
}

Matrix consolidate(const PolymatrixGame& game) {
  const auto& p = game.partition();
  Matrix A = Matrix::Zero(p.total(), p.total());
  for (int i = 0; i < p.agents(); ++i)
    for (int j = 0; j < p.agents(); ++j) {
      if (i == j) continue;
      A.block(p.offset(i), p.offset(j), p.dim(i), p.dim(j)) = game.block(i, j);
    }
  return A;
}

PolymatrixGame game_from_consolidated(const Matrix& A,
                                      const AgentPartition& partition,
                                      GameClass cls, Vector costs, double tol) {
  if (A.rows() != partition.total() || A.cols() != partition.total())
    throw std::invalid_argument("matrix size disagrees with the partition");
  std::vector<InteractionBlock> blocks;
  for (int i = 0; i < partition.agents(); ++i) {
    for (int j = 0; j < partition.agents(); ++j) {
      Matrix blk =
          A.block(partition.offset(i), partition.offset(j), partition.dim(i),
                  partition.dim(j));
      if (i == j) {
        if (blk.cwiseAbs().maxCoeff() > tol)
          throw std::invalid_argument(
              "not a polymatrix consolidated matrix: nonzero diagonal block");
        continue;
      }
      if (cls != GameClass::General) {
        if (i > j) continue;  // mirror is derived
        Matrix mirror = A.block(partition.offset(j), partition.offset(i),
                                partition.dim(j), partition.dim(i));
        Matrix expect = cls == GameClass::ZeroSum ? Matrix(-blk.transpose())
                                                  : Matrix(blk.transpose());
        if ((mirror - expect).cwiseAbs().maxCoeff() > tol)
          throw std::invalid_argument(
              "matrix violates the requested class relation");
      }
      if (blk.isZero(0.0)) continue;
      blocks.push_back({i, j, std::move(blk)});
    }
  }
  return PolymatrixGame(partition, cls, std::move(blocks), std::move(costs));
}

double default_classify_tol(const Matrix& A) {
  double amax = A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
  return 1e-12 * std::max(1.0, amax);
}

GameClass classify(const Matrix& A, const AgentPartition& partition,
                   double tol) {
  if (A.rows() != A.cols() || A.rows() != partition.total())
    throw std::invalid_argument("matrix size disagrees with the partition");
  for (int i = 0; i < partition.agents(); ++i) {
    if (A.block(partition.offset(i), partition.offset(i), partition.dim(i),
                partition.dim(i))
            .cwiseAbs()
            .maxCoeff() > tol)
      throw std::invalid_argument(
          "not a polymatrix consolidated matrix: nonzero diagonal block");
  }
  if ((A + A.transpose()).cwiseAbs().maxCoeff() <= tol)
    return GameClass::ZeroSum;
  if ((A - A.transpose()).cwiseAbs().maxCoeff() <= tol)
    return GameClass::Coordination;
  return GameClass::General;
}

GameClass classify(const Matrix& A, const AgentPartition& partition) {
  return classify(A, partition, default_classify_tol(A));
}

Vector payoff_field(const PolymatrixGame& game, const StrategyProfile& x) {
  if (x.size() != game.partition().total())
    throw std::invalid_argument("profile length must equal K");
  return -game.costs() + consolidate(game) * x;
}

double utility(const PolymatrixGame& game, const StrategyProfile& x, int i) {
  const auto& p = game.partition();
  if (i < 0 || i >= p.agents())
    throw std::invalid_argument("invalid agent index");
  if (x.size() != p.total())
    throw std::invalid_argument("profile length must equal K");
  Vector grad = -agent_segment(p, game.costs(), i);
  for (int j = 0; j < p.agents(); ++j) {
    if (j == i) continue;
    grad += game.block(i, j) * agent_segment(p, x, j);
  }
  return agent_segment(p, x, i).dot(grad);
}

}  // namespace polymatrix
