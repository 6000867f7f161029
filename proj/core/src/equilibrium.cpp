#include "polymatrix/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace polymatrix {

using nlohmann::json;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Unique:
      return "Unique";
    case Verdict::NonUnique:
      return "NonUnique";
    case Verdict::NoEquilibrium:
      return "NoEquilibrium";
  }
  throw std::logic_error("unreachable verdict");
}

double DetSignLog::value() const {
  if (sign == 0) return 0.0;
  double v = std::exp(*log_abs);
  if (!std::isfinite(v)) throw std::overflow_error("determinant overflows double");
  return sign * v;
}

json DetSignLog::to_json() const {
  json j;
  j["sign"] = sign;
  if (log_abs)
    j["log_abs"] = *log_abs;
  else
    j["log_abs"] = nullptr;
  return j;
}

json EquilibriumSet::to_json() const {
  json j;
  j["particular"] =
      std::vector<double>(particular.data(), particular.data() + particular.size());
  json basis_json = json::array();
  for (const auto& d : basis)
    basis_json.push_back(std::vector<double>(d.data(), d.data() + d.size()));
  j["basis"] = std::move(basis_json);
  j["nullity"] = nullity();
  return j;
}

json UniquenessReport::to_json() const {
  json j;
  j["half_condition"] = half_condition;
  j["parity_condition"] = parity_condition;
  j["det"] = det.to_json();
  j["rank"] = rank;
  j["rank_tol"] = rank_tol;
  j["min_singular_value"] = min_singular_value;
  j["verdict"] = to_string(verdict);
  return j;
}

double rank_tolerance(const Matrix& A) {
  Eigen::JacobiSVD<Matrix> svd(A);
  double smax = A.size() == 0 ? 0.0 : svd.singularValues()(0);
  return smax * static_cast<double>(A.rows()) *
         std::numeric_limits<double>::epsilon();
}

double consistency_tolerance(const Vector& b) {
  return 1e-8 * std::max(1.0, b.norm());
}

double nash_residual(const PolymatrixGame& game, const StrategyProfile& x) {
  return (consolidate(game) * x - game.costs()).norm();
}

namespace {

struct SvdDecomp {
  Eigen::JacobiSVD<Matrix> svd;
  int rank = 0;
  double tol = 0.0;
  double smin = 0.0;

  explicit SvdDecomp(const Matrix& A)
      : svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV) {
    const auto& s = svd.singularValues();
    double smax = s.size() > 0 ? s(0) : 0.0;
    tol = smax * static_cast<double>(A.rows()) *
          std::numeric_limits<double>::epsilon();
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > tol) ++rank;
    smin = s.size() > 0 ? s(s.size() - 1) : 0.0;
  }

  Vector min_norm_solution(const Vector& b) const {
    const auto& s = svd.singularValues();
    Vector y = svd.matrixU().transpose() * b;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      y(i) = i < rank ? y(i) / s(i) : 0.0;
    return svd.matrixV() * y;
  }
};

// Largest-magnitude entry made positive; ties broken by the first index.
Vector fix_sign(Vector d) {
  Eigen::Index arg = 0;
  d.cwiseAbs().maxCoeff(&arg);
  if (d(arg) < 0) d = -d;
  return d;
}

}  // namespace

SolveResult solve_unique(const PolymatrixGame& game) {
  Matrix A = consolidate(game);
  SvdDecomp dec(A);
  const int K = static_cast<int>(A.rows());
  if (dec.rank == K) {
    StrategyProfile x = A.colPivHouseholderQr().solve(game.costs());
    return SolveResult{Verdict::Unique, x, 0};
  }
  Vector particular = dec.min_norm_solution(game.costs());
  if ((A * particular - game.costs()).norm() >
      consistency_tolerance(game.costs()))
    return SolveResult{Verdict::NoEquilibrium, std::nullopt, 0};
  return SolveResult{Verdict::NonUnique, std::nullopt, K - dec.rank};
}

std::optional<EquilibriumSet> equilibrium_set(const PolymatrixGame& game) {
  Matrix A = consolidate(game);
  SvdDecomp dec(A);
  Vector particular = dec.min_norm_solution(game.costs());
  if ((A * particular - game.costs()).norm() >
      consistency_tolerance(game.costs()))
    return std::nullopt;
  EquilibriumSet set;
  set.particular = std::move(particular);
  const int K = static_cast<int>(A.rows());
  for (int i = dec.rank; i < K; ++i)
    set.basis.push_back(fix_sign(dec.svd.matrixV().col(i)));
  return set;
}

StrategyProfile closest_equilibrium(const EquilibriumSet& eqset,
                                    const StrategyProfile& x0) {
  StrategyProfile x = eqset.particular;
  for (const auto& d : eqset.basis) x += d.dot(x0 - eqset.particular) * d;
  return x;
}

UniquenessReport uniqueness_preconditions(const PolymatrixGame& game) {
  Matrix A = consolidate(game);
  SvdDecomp dec(A);
  const auto& p = game.partition();
  UniquenessReport rep;
  rep.half_condition.reserve(p.agents());
  for (int i = 0; i < p.agents(); ++i)
    rep.half_condition.push_back(2 * p.dim(i) <= p.total());
  rep.parity_condition = p.total() % 2 == 0;
  rep.rank = dec.rank;
  rep.rank_tol = dec.tol;
  rep.min_singular_value = dec.smin;
  rep.det = det_sign_log(A);
  const int K = p.total();
  if (dec.rank == K) {
    rep.verdict = Verdict::Unique;
  } else {
    Vector particular = dec.min_norm_solution(game.costs());
    rep.verdict = (A * particular - game.costs()).norm() <=
                          consistency_tolerance(game.costs())
                      ? Verdict::NonUnique
                      : Verdict::NoEquilibrium;
  }
  return rep;
}

double leibniz_det(const Matrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("matrix must be square");
  const int m = static_cast<int>(A.rows());
  if (m > 10) throw std::invalid_argument("leibniz_det is capped at m <= 10");
  if (m == 0) return 1.0;
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  double det = 0.0;
  do {
    int inversions = 0;
    for (int w = 0; w < m; ++w)
      for (int v = w + 1; v < m; ++v)
        if (perm[w] > perm[v]) ++inversions;
    double prod = inversions % 2 == 0 ? 1.0 : -1.0;
    for (int w = 0; w < m; ++w) prod *= A(w, perm[w]);
    det += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

DetSignLog det_sign_log(const Matrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("matrix must be square");
  SvdDecomp dec(A);
  if (dec.rank < A.rows()) return DetSignLog{0, std::nullopt};
  Eigen::FullPivLU<Matrix> lu(A);
  int sign = lu.permutationP().determinant() * lu.permutationQ().determinant();
  double log_abs = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    double piv = lu.matrixLU()(i, i);
    if (piv == 0.0) return DetSignLog{0, std::nullopt};
    if (piv < 0) sign = -sign;
    log_abs += std::log(std::abs(piv));
  }
  return DetSignLog{sign, log_abs};
}

}  // namespace polymatrix
