#include "amalgam/exact.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace amalgam {

std::string to_string(const Rational& q) { return q.str(); }

namespace exact {

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

std::size_t rank(RationalMatrix rows) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < ncols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

std::vector<Int> primitive_integer_vector(std::span<const Rational> v) {
  BigInt lcm = 1;
  for (const auto& q : v) {
    const BigInt d = boost::multiprecision::denominator(q);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  std::vector<BigInt> ints;
  ints.reserve(v.size());
  BigInt g = 0;
  for (const auto& q : v) {
    ints.push_back(boost::multiprecision::numerator(q) * (lcm / boost::multiprecision::denominator(q)));
    g = boost::multiprecision::gcd(g, ints.back());
  }
  std::vector<Int> out;
  out.reserve(v.size());
  for (auto& x : ints) {
    if (g > 1) x /= g;
    if (x > std::numeric_limits<Int>::max() || x < std::numeric_limits<Int>::min())
      throw std::overflow_error("integer witness does not fit in 64 bits");
    out.push_back(static_cast<Int>(x));
  }
  return out;
}

namespace {

struct FractionOverflow {};

__extension__ using Wide = __int128;

/// Reduced int64 fraction; any overflow throws FractionOverflow so the
/// caller can redo the computation over cpp_rational.
class SmallFraction {
 public:
  SmallFraction(Int n = 0) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)

  static SmallFraction from(const Rational& q) {
    const BigInt& n = boost::multiprecision::numerator(q);
    const BigInt& d = boost::multiprecision::denominator(q);
    constexpr Int lim = std::numeric_limits<Int>::max();
    if (n > lim || n < -lim || d > lim) throw FractionOverflow{};
    return make(static_cast<Int>(n), static_cast<Int>(d));
  }
  Rational to_rational() const { return Rational(num_, den_); }

  friend SmallFraction operator+(const SmallFraction& a, const SmallFraction& b) {
    if (a.den_ == b.den_) return make(add(a.num_, b.num_), a.den_);
    return make(add(mul(a.num_, b.den_), mul(b.num_, a.den_)), mul(a.den_, b.den_));
  }
  friend SmallFraction operator-(const SmallFraction& a, const SmallFraction& b) { return a + (-b); }
  friend SmallFraction operator*(const SmallFraction& a, const SmallFraction& b) {
    const Int g1 = std::gcd(a.num_, b.den_), g2 = std::gcd(b.num_, a.den_);
    if (g1 == 0 || g2 == 0) return SmallFraction(0);
    return make(mul(a.num_ / g1, b.num_ / g2), mul(a.den_ / g2, b.den_ / g1));
  }
  friend SmallFraction operator/(const SmallFraction& a, const SmallFraction& b) {
    if (b.num_ == 0) throw std::domain_error("division by zero");
    return a * make(b.den_, b.num_);
  }
  SmallFraction operator-() const {
    if (num_ == std::numeric_limits<Int>::min()) throw FractionOverflow{};
    SmallFraction r = *this;
    r.num_ = -num_;
    return r;
  }
  SmallFraction& operator+=(const SmallFraction& o) { return *this = *this + o; }
  SmallFraction& operator-=(const SmallFraction& o) { return *this = *this - o; }
  SmallFraction& operator*=(const SmallFraction& o) { return *this = *this * o; }

  friend bool operator==(const SmallFraction&, const SmallFraction&) = default;
  friend bool operator<(const SmallFraction& a, const SmallFraction& b) {
    return static_cast<Wide>(a.num_) * b.den_ < static_cast<Wide>(b.num_) * a.den_;
  }
  friend bool operator>(const SmallFraction& a, const SmallFraction& b) { return b < a; }
  friend bool operator<=(const SmallFraction& a, const SmallFraction& b) { return !(b < a); }

 private:
  static Int add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw FractionOverflow{};
    return r;
  }
  static Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw FractionOverflow{};
    return r;
  }
  static SmallFraction make(Int n, Int d) {
    if (d < 0) {
      if (n == std::numeric_limits<Int>::min() || d == std::numeric_limits<Int>::min()) throw FractionOverflow{};
      n = -n;
      d = -d;
    }
    const Int g = std::gcd(n, d);
    SmallFraction r;
    r.num_ = n / g;
    r.den_ = d / g;
    return r;
  }

  Int num_;
  Int den_;
};

template <class T>
struct Tableau {
  std::vector<std::vector<T>> rows;  // m x (ncols + 1); last column is the rhs
  std::vector<std::size_t> basis;    // basic column per row
  std::size_t ncols = 0;

  const T& rhs(std::size_t r) const { return rows[r][ncols]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const T inv = T(1) / rows[pr][pc];
    for (auto& v : rows[pr]) v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == pr || rows[r][pc] == T(0)) continue;
      const T f = rows[r][pc];
      for (std::size_t k = 0; k <= ncols; ++k)
        if (rows[pr][k] != T(0)) rows[r][k] -= f * rows[pr][k];
    }
    basis[pr] = pc;
  }
};

// Maximizes cost . x using columns [0, usable) only. Bland's rule.
template <class T>
LpStatus optimize(Tableau<T>& t, const std::vector<T>& cost, std::size_t usable) {
  std::vector<bool> is_basic(t.ncols, false);
  for (;;) {
    std::fill(is_basic.begin(), is_basic.end(), false);
    for (auto b : t.basis) is_basic[b] = true;

    std::optional<std::size_t> entering;
    for (std::size_t j = 0; j < usable && !entering; ++j) {
      if (is_basic[j]) continue;
      T rc = cost[j];
      for (std::size_t r = 0; r < t.rows.size(); ++r)
        if (t.rows[r][j] != T(0)) rc -= cost[t.basis[r]] * t.rows[r][j];
      if (rc > T(0)) entering = j;
    }
    if (!entering) return LpStatus::Optimal;

    std::optional<std::size_t> leaving;
    T best_ratio;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const T& a = t.rows[r][*entering];
      if (a <= T(0)) continue;
      T ratio = t.rhs(r) / a;
      if (!leaving || ratio < best_ratio || (ratio == best_ratio && t.basis[r] < t.basis[*leaving])) {
        leaving = r;
        best_ratio = std::move(ratio);
      }
    }
    if (!leaving) return LpStatus::Unbounded;
    t.pivot(*leaving, *entering);
  }
}

// Expects nonnegative right-hand sides.
template <class T>
LpSolution solve(const LinearProgram& lp, const std::vector<Constraint>& cons, T (*convert)(const Rational&),
                 Rational (*back)(const T&)) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = cons.size();
  std::size_t n_slack = 0, n_art = 0;
  for (const auto& c : cons) {
    if (c.relation != Relation::Equal) ++n_slack;
    if (c.relation != Relation::LessEqual) ++n_art;
  }
  const std::size_t art_begin = n + n_slack;

  Tableau<T> t;
  t.ncols = n + n_slack + n_art;
  t.rows.assign(m, std::vector<T>(t.ncols + 1, T(0)));
  t.basis.assign(m, 0);
  std::size_t slack = n, art = art_begin;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = cons[r];
    for (std::size_t j = 0; j < n; ++j) t.rows[r][j] = convert(c.coeffs[j]);
    t.rows[r][t.ncols] = convert(c.rhs);
    switch (c.relation) {
      case Relation::LessEqual:
        t.rows[r][slack] = T(1);
        t.basis[r] = slack++;
        break;
      case Relation::GreaterEqual:
        t.rows[r][slack++] = T(-1);
        t.rows[r][art] = T(1);
        t.basis[r] = art++;
        break;
      case Relation::Equal:
        t.rows[r][art] = T(1);
        t.basis[r] = art++;
        break;
    }
  }

  LpSolution sol;
  if (n_art > 0) {
    std::vector<T> phase1(t.ncols, T(0));
    for (std::size_t j = art_begin; j < t.ncols; ++j) phase1[j] = T(-1);
    optimize(t, phase1, t.ncols);
    T infeasibility(0);
    for (std::size_t r = 0; r < m; ++r)
      if (t.basis[r] >= art_begin) infeasibility += t.rhs(r);
    if (infeasibility > T(0)) return sol;

    // Drive zero-valued artificials out of the basis; drop redundant rows.
    for (std::size_t r = 0; r < t.rows.size();) {
      if (t.basis[r] < art_begin) {
        ++r;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < art_begin && !col; ++j)
        if (t.rows[r][j] != T(0)) col = j;
      if (col) {
        t.pivot(r, *col);
        ++r;
      } else {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
  }

  std::vector<T> cost(t.ncols, T(0));
  for (std::size_t j = 0; j < n; ++j) cost[j] = convert(lp.objective[j]);
  if (optimize(t, cost, art_begin) == LpStatus::Unbounded) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  sol.status = LpStatus::Optimal;
  sol.x.assign(n, 0);
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    if (t.basis[r] < n) sol.x[t.basis[r]] = back(t.rhs(r));
  for (std::size_t j = 0; j < n; ++j) sol.value += lp.objective[j] * sol.x[j];
  return sol;
}

}  // namespace

LpSolution maximize(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  if (lp.objective.size() != n) throw std::invalid_argument("objective length differs from num_vars");

  // Normalize to nonnegative right-hand sides.
  std::vector<Constraint> cons = lp.constraints;
  for (auto& c : cons) {
    if (c.coeffs.size() != n) throw std::invalid_argument("constraint length differs from num_vars");
    if (c.rhs < 0) {
      for (auto& a : c.coeffs) a = -a;
      c.rhs = -c.rhs;
      if (c.relation == Relation::LessEqual)
        c.relation = Relation::GreaterEqual;
      else if (c.relation == Relation::GreaterEqual)
        c.relation = Relation::LessEqual;
    }
  }

  // Same pivots either way; the int64 pass is only a faster representation.
  try {
    return solve<SmallFraction>(
        lp, cons, [](const Rational& q) { return SmallFraction::from(q); },
        [](const SmallFraction& f) { return f.to_rational(); });
  } catch (const FractionOverflow&) {
    return solve<Rational>(
        lp, cons, [](const Rational& q) { return q; }, [](const Rational& q) { return q; });
  }
}

}  // namespace exact
}  // namespace amalgam
