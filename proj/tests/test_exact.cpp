#include <gtest/gtest.h>

#include <random>

#include "amalgam/exact.hpp"

using namespace amalgam;
using exact::Constraint;
using exact::LinearProgram;
using exact::LpStatus;
using exact::Relation;

TEST(ExactRank, SmallMatrices) {
  EXPECT_EQ(exact::rank(IntMatrix{{1, 1}}), 1u);
  EXPECT_EQ(exact::rank(IntMatrix{{1, 1}, {2, 2}}), 1u);
  EXPECT_EQ(exact::rank(IntMatrix{{1, 0}, {0, 1}}), 2u);
  EXPECT_EQ(exact::rank(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}), 2u);
  EXPECT_EQ(exact::rank(IntMatrix(2, 3, 0)), 0u);
}

TEST(ExactRank, RankOfProductOfRankOneFactors) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Int> dist(1, 9);
  for (int t = 0; t < 100; ++t) {
    IntMatrix m(3, 4);
    std::vector<Int> u(3), v(4);
    for (auto& x : u) x = dist(rng);
    for (auto& x : v) x = dist(rng);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = u[i] * v[j];
    EXPECT_EQ(exact::rank(m), 1u);
  }
}

TEST(PrimitiveIntegerVector, ClearsDenominatorsAndCommonFactors) {
  const std::vector<Rational> v{Rational(1, 2), Rational(1, 3), Rational(0)};
  EXPECT_EQ(exact::primitive_integer_vector(v), (std::vector<Int>{3, 2, 0}));
  const std::vector<Rational> w{Rational(4), Rational(6)};
  EXPECT_EQ(exact::primitive_integer_vector(w), (std::vector<Int>{2, 3}));
}

TEST(Simplex, TextbookOptimum) {
  // max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
  LinearProgram lp{2, {3, 5}, {}};
  lp.constraints.push_back({{1, 0}, Relation::LessEqual, 4});
  lp.constraints.push_back({{0, 2}, Relation::LessEqual, 12});
  lp.constraints.push_back({{3, 2}, Relation::LessEqual, 18});
  const auto sol = exact::maximize(lp);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_EQ(sol.value, 36);
  EXPECT_EQ(sol.x[0], 2);
  EXPECT_EQ(sol.x[1], 6);
}

TEST(Simplex, EqualityAndGreaterEqualRows) {
  // max x + y  s.t. x + y = 1, x - y >= 1/2  -> value 1, x >= 3/4
  LinearProgram lp{2, {1, 1}, {}};
  lp.constraints.push_back({{1, 1}, Relation::Equal, 1});
  lp.constraints.push_back({{1, -1}, Relation::GreaterEqual, Rational(1, 2)});
  const auto sol = exact::maximize(lp);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_EQ(sol.value, 1);
  EXPECT_GE(sol.x[0], Rational(3, 4));
}

TEST(Simplex, DetectsInfeasibleAndUnbounded) {
  LinearProgram infeasible{1, {1}, {}};
  infeasible.constraints.push_back({{1}, Relation::LessEqual, 1});
  infeasible.constraints.push_back({{1}, Relation::GreaterEqual, 2});
  EXPECT_EQ(exact::maximize(infeasible).status, LpStatus::Infeasible);

  LinearProgram unbounded{2, {1, 0}, {}};
  unbounded.constraints.push_back({{1, -1}, Relation::LessEqual, 1});
  EXPECT_EQ(exact::maximize(unbounded).status, LpStatus::Unbounded);
}

TEST(Simplex, NegativeRightHandSides) {
  // -x <= -2 means x >= 2; minimize x by maximizing -x.
  LinearProgram lp{1, {-1}, {}};
  lp.constraints.push_back({{-1}, Relation::LessEqual, -2});
  const auto sol = exact::maximize(lp);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_EQ(sol.x[0], 2);
}

TEST(Simplex, DegenerateRedundantEqualities) {
  // Duplicate equality rows leave an artificial basic at zero.
  LinearProgram lp{2, {1, 2}, {}};
  lp.constraints.push_back({{1, 1}, Relation::Equal, 2});
  lp.constraints.push_back({{2, 2}, Relation::Equal, 4});
  lp.constraints.push_back({{0, 1}, Relation::LessEqual, 1});
  const auto sol = exact::maximize(lp);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_EQ(sol.value, 3);
}

// Brute force over a grid of vertices is not available in general, so compare
// against enumerating every basis of small random 2-variable problems.
TEST(Simplex, MatchesVertexEnumerationIn2D) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coef(-4, 4), rhs(0, 8);
  for (int trial = 0; trial < 200; ++trial) {
    LinearProgram lp{2, {coef(rng), coef(rng)}, {}};
    for (int k = 0; k < 3; ++k) lp.constraints.push_back({{coef(rng), coef(rng)}, Relation::LessEqual, rhs(rng)});
    lp.constraints.push_back({{1, 0}, Relation::LessEqual, 10});
    lp.constraints.push_back({{0, 1}, Relation::LessEqual, 10});
    // Feasible (origin) and bounded (box), so the optimum is attained at a
    // vertex: intersect every pair of constraint lines including the axes.
    std::vector<std::array<Rational, 3>> lines;
    for (const auto& c : lp.constraints) lines.push_back({c.coeffs[0], c.coeffs[1], c.rhs});
    lines.push_back({1, 0, 0});
    lines.push_back({0, 1, 0});
    Rational best = 0;
    bool any = false;
    for (std::size_t a = 0; a < lines.size(); ++a) {
      for (std::size_t b = a + 1; b < lines.size(); ++b) {
        const Rational det = lines[a][0] * lines[b][1] - lines[a][1] * lines[b][0];
        if (det == 0) continue;
        const Rational x = (lines[a][2] * lines[b][1] - lines[a][1] * lines[b][2]) / det;
        const Rational y = (lines[a][0] * lines[b][2] - lines[a][2] * lines[b][0]) / det;
        if (x < 0 || y < 0) continue;
        bool feasible = true;
        for (const auto& c : lp.constraints) feasible = feasible && c.coeffs[0] * x + c.coeffs[1] * y <= c.rhs;
        if (!feasible) continue;
        const Rational v = lp.objective[0] * x + lp.objective[1] * y;
        if (!any || v > best) best = v, any = true;
      }
    }
    const auto sol = exact::maximize(lp);
    ASSERT_EQ(sol.status, LpStatus::Optimal);
    EXPECT_EQ(sol.value, best) << "trial " << trial;
  }
}

TEST(Simplex, FallsBackToBigRationalsOnOverflow) {
  // Coefficients near 2^62 overflow the int64 pass; the answer must not change.
  const Rational big = Rational(Int{1} << 62) - 1;
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {1, 1};
  lp.constraints.push_back({{big, big - 2}, Relation::LessEqual, big});
  lp.constraints.push_back({{1, 0}, Relation::LessEqual, Rational(1, 3)});
  const auto sol = exact::maximize(lp);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  // y is cheaper per unit of the first constraint, so it takes all of it.
  EXPECT_EQ(sol.x[0], 0);
  EXPECT_EQ(sol.x[1], big / (big - 2));
  EXPECT_EQ(sol.value, big / (big - 2));
}
