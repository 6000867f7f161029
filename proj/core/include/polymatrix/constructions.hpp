#pragma once

#include "polymatrix/equilibrium.hpp"
#include "polymatrix/game.hpp"

namespace polymatrix {

/// The explicit witness games with a unique Nash equilibrium: a one-band
/// symmetric matrix for even K, a two-band symmetric matrix for odd K, and
/// the skew variant of the even band. Valid for any partition with every
/// k_i <= K/2 (the bands then never touch a diagonal block).
enum class ConstructionKind { CoordinationEven, CoordinationOdd, ZeroSumEven };

std::string to_string(ConstructionKind k);
ConstructionKind construction_kind_from_string(const std::string& s);

struct ConstructionSpec {
  ConstructionKind kind;
  AgentPartition partition;
};

/// Validates parity and the k_i <= K/2 requirement; throws on violation.
void validate_spec(const ConstructionSpec& spec);

/// Witness game with b = 0 and the matching class tag.
PolymatrixGame construct(const ConstructionSpec& spec);

/// uniqueness_preconditions on the constructed game. The verdict is Unique
/// with |det| = 1 for the even kinds and det = 2 for CoordinationOdd.
UniquenessReport verify_construction(const ConstructionSpec& spec);

}  // namespace polymatrix
