#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

namespace polymatrix {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// How the pairwise blocks of a game are tied together.
enum class GameClass { ZeroSum, Coordination, General };

std::string to_string(GameClass c);
GameClass game_class_from_string(const std::string& s);

/// Partition of the consolidated strategy vector into per-agent blocks.
/// Block i occupies coordinates [offset(i), offset(i) + dim(i)).
class AgentPartition {
 public:
  explicit AgentPartition(std::vector<int> dims);

  int agents() const { return static_cast<int>(dims_.size()); }
  int dim(int i) const { return dims_.at(i); }
  int offset(int i) const { return offsets_.at(i); }
  int total() const { return total_; }
  const std::vector<int>& dims() const { return dims_; }

  bool operator==(const AgentPartition& o) const { return dims_ == o.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<int> offsets_;
  int total_ = 0;
};

/// A strategy profile is a point in R^K; per-agent views come from the
/// partition offsets.
using StrategyProfile = Vector;

inline auto agent_segment(const AgentPartition& p, const StrategyProfile& x,
                          int i) {
  return x.segment(p.offset(i), p.dim(i));
}

struct InteractionBlock {
  int i;
  int j;
  Matrix payoff;  // shape dim(i) x dim(j)
};

/// An n-agent game where agent i's utility is
///   x_i^T (-b_i + sum_{j != i} A^(ij) x_j).
///
/// Zero-sum and coordination games store only the i<j blocks; the mirror
/// block is derived structurally (B^(ji) = -B^(ij)^T resp. B^(ij)^T), so the
/// class invariant holds exactly rather than up to a tolerance. General
/// games store every nonzero ordered pair. Instances are immutable after
/// construction.
class PolymatrixGame {
 public:
  PolymatrixGame(AgentPartition partition, GameClass cls,
                 std::vector<InteractionBlock> blocks, Vector costs);

  const AgentPartition& partition() const { return partition_; }
  GameClass class_tag() const { return class_; }
  const Vector& costs() const { return costs_; }
  const std::map<std::pair<int, int>, Matrix>& stored_blocks() const {
    return blocks_;
  }

  /// Block (i, j), materializing the derived mirror for symmetric classes.
  /// Returns a zero matrix for pairs without a stored block.
  Matrix block(int i, int j) const;

  /// Same game with a different consolidated cost vector.
  PolymatrixGame with_costs(Vector b) const;

 private:
  AgentPartition partition_;
  GameClass class_;
  std::map<std::pair<int, int>, Matrix> blocks_;
  Vector costs_;
};

/// Consolidated K x K payoff matrix: zero diagonal blocks, block (i, j)
/// given by the game's interaction blocks.
Matrix consolidate(const PolymatrixGame& game);

/// Carve a consolidated matrix back into a game. Validates that the
/// diagonal blocks are zero and that the off-diagonal blocks satisfy the
/// requested class relation within `tol`.
PolymatrixGame game_from_consolidated(const Matrix& A,
                                      const AgentPartition& partition,
                                      GameClass cls, Vector costs,
                                      double tol = 0.0);

double default_classify_tol(const Matrix& A);

/// Class of a consolidated matrix: ZeroSum if ||A + A^T||_max <= tol,
/// Coordination if ||A - A^T||_max <= tol (zero-sum wins the tie), else
/// General. Throws if a diagonal block exceeds tol.
GameClass classify(const Matrix& A, const AgentPartition& partition,
                   double tol);
GameClass classify(const Matrix& A, const AgentPartition& partition);

/// -b + A x, the stacked per-agent utility gradients.
Vector payoff_field(const PolymatrixGame& game, const StrategyProfile& x);

/// x_i^T (-b_i + sum_{j != i} A^(ij) x_j).
double utility(const PolymatrixGame& game, const StrategyProfile& x, int i);

}  // namespace polymatrix
