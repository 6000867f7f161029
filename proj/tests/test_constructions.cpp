#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "polymatrix/constructions.hpp"
#include "polymatrix/equilibrium.hpp"

using namespace polymatrix;

namespace {

// All nonincreasing partitions of K with >= 2 parts and each part <= K/2.
std::vector<std::vector<int>> valid_partitions(int K) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest, int maxpart) -> void {
    if (rest == 0) {
      if (cur.size() >= 2) out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  rec(rec, K, K / 2);
  return out;
}

// Count permutations with a nonzero Leibniz product by exhaustion.
int nonzero_leibniz_terms(const Matrix& A) {
  const int m = static_cast<int>(A.rows());
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  int count = 0;
  do {
    bool nonzero = true;
    for (int w = 0; w < m && nonzero; ++w) nonzero = A(w, perm[w]) != 0.0;
    if (nonzero) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace

TEST_CASE("even coordination witness matches the displayed K=6 matrix") {
  ConstructionSpec spec{ConstructionKind::CoordinationEven,
                        AgentPartition({2, 2, 2})};
  Matrix A = consolidate(construct(spec));
  Matrix want = Matrix::Zero(6, 6);
  for (int w = 0; w < 3; ++w) want(w, 3 + w) = want(3 + w, w) = 1.0;
  CHECK(A == want);
}

TEST_CASE("odd coordination witness matches the displayed K=7 matrix") {
  ConstructionSpec spec{ConstructionKind::CoordinationOdd,
                        AgentPartition({3, 2, 2})};
  Matrix A = consolidate(construct(spec));
  Matrix want = Matrix::Zero(7, 7);
  for (int w = 0; w < 4; ++w) want(w, 3 + w) = want(3 + w, w) = 1.0;
  for (int w = 0; w < 3; ++w) want(w, 4 + w) = want(4 + w, w) = 1.0;
  CHECK(A == want);
}

TEST_CASE("zero-sum witness for K=4, partition (2,1,1)") {
  ConstructionSpec spec{ConstructionKind::ZeroSumEven,
                        AgentPartition({2, 1, 1})};
  Matrix A = consolidate(construct(spec));
  Matrix want(4, 4);
  want << 0, 0, 1, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, -1, 0, 0;
  CHECK(A == want);
  CHECK((A + A.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(leibniz_det(A)) == 1.0);
}

TEST_CASE("construct rejects invalid specs") {
  CHECK_THROWS_AS(
      construct({ConstructionKind::ZeroSumEven, AgentPartition({3, 3, 1})}),
      std::invalid_argument);  // K odd
  CHECK_THROWS_AS(
      construct({ConstructionKind::CoordinationOdd, AgentPartition({2, 2})}),
      std::invalid_argument);  // K even
  CHECK_THROWS_AS(
      construct({ConstructionKind::CoordinationEven, AgentPartition({4, 1, 1})}),
      std::invalid_argument);  // k_1 > K/2
}

TEST_CASE("all valid specs up to K=10: class, diagonal blocks, determinant") {
  for (int K = 4; K <= 10; ++K) {
    for (const auto& dims : valid_partitions(K)) {
      AgentPartition part(dims);
      std::vector<ConstructionKind> kinds;
      if (K % 2 == 0)
        kinds = {ConstructionKind::CoordinationEven,
                 ConstructionKind::ZeroSumEven};
      else
        kinds = {ConstructionKind::CoordinationOdd};
      for (auto kind : kinds) {
        PolymatrixGame g = construct({kind, part});
        Matrix A = consolidate(g);
        CHECK(classify(A, part) == g.class_tag());
        for (int i = 0; i < part.agents(); ++i)
          CHECK(A.block(part.offset(i), part.offset(i), part.dim(i), part.dim(i))
                    .cwiseAbs()
                    .maxCoeff() == 0.0);
        if (K <= 9) {
          double want = kind == ConstructionKind::CoordinationOdd ? 2.0 : 1.0;
          CHECK(std::abs(leibniz_det(A)) == want);
        }
      }
    }
  }
}

TEST_CASE("permutation structure of the witnesses") {
  for (int K = 4; K <= 9; ++K) {
    std::vector<int> half(2, K / 2);
    std::vector<int> dims = K % 2 == 0 ? half : std::vector<int>{K / 2, K / 2, 1};
    AgentPartition part(dims);
    if (K % 2 == 0) {
      CHECK(nonzero_leibniz_terms(consolidate(construct(
                {ConstructionKind::CoordinationEven, part}))) == 1);
      CHECK(nonzero_leibniz_terms(consolidate(construct(
                {ConstructionKind::ZeroSumEven, part}))) == 1);
    } else {
      CHECK(nonzero_leibniz_terms(consolidate(construct(
                {ConstructionKind::CoordinationOdd, part}))) == 2);
    }
  }
}

TEST_CASE("verify_construction reports Unique with the right determinant") {
  auto even = verify_construction(
      {ConstructionKind::CoordinationEven, AgentPartition({2, 2, 2})});
  CHECK(even.verdict == Verdict::Unique);
  CHECK(std::abs(even.det.value()) == doctest::Approx(1.0));

  auto odd = verify_construction(
      {ConstructionKind::CoordinationOdd, AgentPartition({3, 2, 2})});
  CHECK(odd.verdict == Verdict::Unique);
  CHECK(odd.det.value() == doctest::Approx(2.0));

  auto zs = verify_construction(
      {ConstructionKind::ZeroSumEven, AgentPartition({3, 3})});
  CHECK(zs.verdict == Verdict::Unique);
  CHECK(std::abs(zs.det.value()) == doctest::Approx(1.0));
}

TEST_CASE("witnesses with b = 0 have the origin as unique equilibrium") {
  for (auto [kind, dims] :
       std::vector<std::pair<ConstructionKind, std::vector<int>>>{
           {ConstructionKind::CoordinationEven, {2, 2, 2}},
           {ConstructionKind::CoordinationOdd, {2, 2, 1}},
           {ConstructionKind::ZeroSumEven, {1, 1, 1, 1}}}) {
    auto res = solve_unique(construct({kind, AgentPartition(dims)}));
    REQUIRE(res.verdict == Verdict::Unique);
    CHECK(res.unique->norm() < 1e-12);
  }
}
