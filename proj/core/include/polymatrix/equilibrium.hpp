#pragma once

#include <json.hpp>
#include <optional>
#include <vector>

#include "polymatrix/game.hpp"

namespace polymatrix {

enum class Verdict { Unique, NonUnique, NoEquilibrium };

std::string to_string(Verdict v);

/// Determinant in sign-log form so that large K cannot overflow. sign = 0
/// means numerically singular (at the SVD rank tolerance), in which case
/// log_abs is absent.
struct DetSignLog {
  int sign = 0;
  std::optional<double> log_abs;

  double value() const;  // throws if |det| overflows a double
  nlohmann::json to_json() const;
};

/// Affine description of {x : Ax = b}: minimum-norm particular solution
/// plus an orthonormal basis of the nullspace of A. W = basis.size() = 0
/// iff the equilibrium is unique.
struct EquilibriumSet {
  Vector particular;
  std::vector<Vector> basis;

  int nullity() const { return static_cast<int>(basis.size()); }
  nlohmann::json to_json() const;
};

struct UniquenessReport {
  std::vector<bool> half_condition;  // per agent, k_i <= K/2
  bool parity_condition = false;     // K even (binding for zero-sum only)
  DetSignLog det;
  int rank = 0;
  Verdict verdict = Verdict::NoEquilibrium;
  double rank_tol = 0.0;
  double min_singular_value = 0.0;

  nlohmann::json to_json() const;
};

/// Singular-value threshold sigma_max * K * eps, the standard numerical
/// rank rule standing in for exact-arithmetic invertibility.
double rank_tolerance(const Matrix& A);

double consistency_tolerance(const Vector& b);

/// ||A x - b||_2; zero exactly at Nash equilibria.
double nash_residual(const PolymatrixGame& game, const StrategyProfile& x);

struct SolveResult {
  Verdict verdict;
  std::optional<StrategyProfile> unique;  // set iff verdict == Unique
  int nullity = 0;                        // W when verdict == NonUnique
};

/// x* = A^{-1} b via a pivoted factorization when A has full numerical
/// rank; otherwise reports NonUnique (consistent) or NoEquilibrium.
SolveResult solve_unique(const PolymatrixGame& game);

/// Full affine equilibrium set from an SVD of A, or nullopt when Ax = b is
/// inconsistent. Basis vector signs are fixed (largest-magnitude entry
/// positive) so serialization is reproducible.
std::optional<EquilibriumSet> equilibrium_set(const PolymatrixGame& game);

/// Orthogonal projection of x0 onto the affine equilibrium set.
StrategyProfile closest_equilibrium(const EquilibriumSet& eqset,
                                    const StrategyProfile& x0);

UniquenessReport uniqueness_preconditions(const PolymatrixGame& game);

/// Brute-force determinant, sum over all m! permutations with the sign
/// computed by inversion counting. Independent oracle for the
/// factorization-based determinant; capped at m <= 10.
double leibniz_det(const Matrix& A);

/// Determinant of A in sign-log form via a fully pivoted LU; the sign is
/// forced to 0 when the SVD rank is below full.
DetSignLog det_sign_log(const Matrix& A);

}  // namespace polymatrix
