#include "polymatrix/constructions.hpp"

#include <stdexcept>

namespace polymatrix {

std::string to_string(ConstructionKind k) {
  switch (k) {
    case ConstructionKind::CoordinationEven:
      return "coord-even";
    case ConstructionKind::CoordinationOdd:
      return "coord-odd";
    case ConstructionKind::ZeroSumEven:
      return "zs-even";
  }
  throw std::logic_error("unreachable construction kind");
}

ConstructionKind construction_kind_from_string(const std::string& s) {
  if (s == "coord-even") return ConstructionKind::CoordinationEven;
  if (s == "coord-odd") return ConstructionKind::CoordinationOdd;
  if (s == "zs-even") return ConstructionKind::ZeroSumEven;
  throw std::invalid_argument("unknown construction kind: " + s);
}

void validate_spec(const ConstructionSpec& spec) {
  const int K = spec.partition.total();
  const bool want_odd = spec.kind == ConstructionKind::CoordinationOdd;
  if ((K % 2 != 0) != want_odd)
    throw std::invalid_argument(
        want_odd ? "odd construction requires odd total dimension"
                 : "even construction requires even total dimension");
  for (int i = 0; i < spec.partition.agents(); ++i)
    if (2 * spec.partition.dim(i) > K)
      throw std::invalid_argument(
          "agent dimension exceeds K/2: diagonal block would be nonzero");
}

PolymatrixGame construct(const ConstructionSpec& spec) {
  validate_spec(spec);
  const int K = spec.partition.total();
  Matrix A = Matrix::Zero(K, K);
  switch (spec.kind) {
    case ConstructionKind::CoordinationEven:
      for (int w = 0; w < K / 2; ++w) {
        A(w, K / 2 + w) = 1.0;
        A(K / 2 + w, w) = 1.0;
      }
      break;
    case ConstructionKind::ZeroSumEven:
      for (int w = 0; w < K / 2; ++w) {
        A(w, K / 2 + w) = 1.0;
        A(K / 2 + w, w) = -1.0;
      }
      break;
    case ConstructionKind::CoordinationOdd:
      // Two bands at offsets floor(K/2) and ceil(K/2).
      for (int w = 0; w < (K + 1) / 2; ++w) {
        A(w, K / 2 + w) = 1.0;
        A(K / 2 + w, w) = 1.0;
      }
      for (int w = 0; w < K / 2; ++w) {
        A(w, (K + 1) / 2 + w) = 1.0;
        A((K + 1) / 2 + w, w) = 1.0;
      }
      break;
  }
  GameClass cls = spec.kind == ConstructionKind::ZeroSumEven
                      ? GameClass::ZeroSum
                      : GameClass::Coordination;
  return game_from_consolidated(A, spec.partition, cls, Vector::Zero(K));
}

UniquenessReport verify_construction(const ConstructionSpec& spec) {
  return uniqueness_preconditions(construct(spec));
}

}  // namespace polymatrix
