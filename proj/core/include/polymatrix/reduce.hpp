#pragma once

#include "polymatrix/game.hpp"

namespace polymatrix {

/// Result of eliminating one coordinate of agent `agent` via the affine
/// constraint a^T x_i = c. `basis` maps reduced coordinates of the agent
/// back into its original strategy space; `shift` carries the constant
/// part, so x_i = basis * y_i + shift.
struct AffineReduction {
  PolymatrixGame game;
  int agent;
  int pivot;
  Matrix basis;  // k_i x (k_i - 1)
  Vector shift;  // k_i

  /// Reconstruct a full profile from a reduced one.
  StrategyProfile lift(const StrategyProfile& y) const;
};

/// Substitute x_{i,pivot} = (c - sum_{v != pivot} a_v x_{i,v}) / a_pivot into
/// every bilinear term touching agent i. Other agents pick up a linear cost
/// from the constant part; agent i's own cost is projected onto the
/// remaining coordinates. The result is always tagged General.
AffineReduction affine_reduce(const PolymatrixGame& game, int agent,
                              const Vector& a, double c, int pivot);

}  // namespace polymatrix
