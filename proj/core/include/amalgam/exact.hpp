#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <string>
#include <vector>

#include "amalgam/matrix.hpp"

namespace amalgam {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& q);

namespace exact {

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix to_rational(const IntMatrix& m);

/// Rank over Q by fraction-exact Gaussian elimination.
std::size_t rank(RationalMatrix rows);
std::size_t rank(const IntMatrix& m);

/// Scales a vector of nonnegative rationals by the lcm of its denominators
/// and divides by the gcd of the result. Throws std::overflow_error if an
/// entry leaves the Int range.
std::vector<Int> primitive_integer_vector(std::span<const Rational> v);

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::Equal;
  Rational rhs = 0;
};

/// maximize objective . x  subject to constraints, x >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value = 0;
  std::vector<Rational> x;
};

/// Two-phase primal simplex over exact rationals with Bland's anti-cycling rule.
LpSolution maximize(const LinearProgram& lp);

}  // namespace exact
}  // namespace amalgam
