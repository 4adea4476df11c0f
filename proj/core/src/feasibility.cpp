#include "amalgam/feasibility.hpp"

#include <algorithm>
#include <numeric>

namespace amalgam {

using exact::Constraint;
using exact::LinearProgram;
using exact::LpStatus;
using exact::Relation;

Int WitnessPair::max_entry() const {
  Int m = 0;
  for (Int v : p1) m = std::max(m, v);
  for (Int v : p2) m = std::max(m, v);
  return m;
}

WitnessPair WitnessPair::scaled(Int k) const {
  WitnessPair w = *this;
  for (auto* v : {&w.p1, &w.p2, &w.d})
    for (Int& x : *v) x = checked_mul(x, k);
  return w;
}

bool validates(const AmalgamInstance& instance, const WitnessPair& w) {
  const auto& mu1 = instance.mu1;
  const auto& mu2 = instance.mu2;
  if (w.p1.size() != mu1.rows() || w.p2.size() != mu2.rows()) return false;
  if (w.d.size() != mu1.cols() || mu2.cols() != mu1.cols()) return false;
  auto positive = [](const std::vector<Int>& v) {
    return std::all_of(v.begin(), v.end(), [](Int x) { return x > 0; });
  };
  if (!positive(w.p1) || !positive(w.p2) || !positive(w.d)) return false;
  return mu1.transpose_times(w.p1) == w.d && mu2.transpose_times(w.p2) == w.d;
}

bool satisfies_half_column_bound(const AmalgamInstance& instance, const WitnessPair& w) {
  for (int side : {1, 2}) {
    const auto& mu = instance.mu(side);
    const auto& p = side == 1 ? w.p1 : w.p2;
    for (std::size_t j = 0; j < mu.cols(); ++j)
      for (std::size_t i = 0; i < mu.rows(); ++i)
        if (mu(i, j) != 0 && checked_mul(2, p[i]) > w.d[j]) return false;
  }
  return true;
}

namespace {

// maximize t  s.t.  mu1^T p1 - mu2^T p2 = 0,  t <= p_k <= 1,  plus optionally
// sum_k mu_s(k,j) p_s(k) - 2 p_s(i) >= 0 for every nonzero mu_s(i,j).
// Variables: p1 (l1), p2 (l2), t.
std::optional<WitnessPair> solve_cone(const AmalgamInstance& inst, bool half_column) {
  const std::size_t l1 = inst.mu1.rows(), l2 = inst.mu2.rows(), l0 = inst.base.size();
  const std::size_t n = l1 + l2 + 1, t_var = l1 + l2;

  LinearProgram lp;
  lp.num_vars = n;
  lp.objective.assign(n, 0);
  lp.objective[t_var] = 1;

  for (std::size_t j = 0; j < l0; ++j) {
    Constraint c{std::vector<Rational>(n, 0), Relation::Equal, 0};
    for (std::size_t i = 0; i < l1; ++i) c.coeffs[i] = inst.mu1(i, j);
    for (std::size_t i = 0; i < l2; ++i) c.coeffs[l1 + i] = -inst.mu2(i, j);
    lp.constraints.push_back(std::move(c));
  }
  for (std::size_t k = 0; k < l1 + l2; ++k) {
    Constraint lower{std::vector<Rational>(n, 0), Relation::GreaterEqual, 0};
    lower.coeffs[k] = 1;
    lower.coeffs[t_var] = -1;
    lp.constraints.push_back(std::move(lower));
    Constraint upper{std::vector<Rational>(n, 0), Relation::LessEqual, 1};
    upper.coeffs[k] = 1;
    lp.constraints.push_back(std::move(upper));
  }
  if (half_column) {
    for (int side : {1, 2}) {
      const auto& mu = inst.mu(side);
      const std::size_t off = side == 1 ? 0 : l1;
      for (std::size_t j = 0; j < l0; ++j) {
        for (std::size_t i = 0; i < mu.rows(); ++i) {
          if (mu(i, j) == 0) continue;
          Constraint c{std::vector<Rational>(n, 0), Relation::GreaterEqual, 0};
          for (std::size_t k = 0; k < mu.rows(); ++k) c.coeffs[off + k] = mu(k, j);
          c.coeffs[off + i] -= 2;
          lp.constraints.push_back(std::move(c));
        }
      }
    }
  }

  const auto sol = exact::maximize(lp);
  if (sol.status != LpStatus::Optimal) throw InvariantBreach("bounded witness LP did not reach an optimum");
  if (sol.value <= 0) return std::nullopt;

  const auto ints = exact::primitive_integer_vector(std::span<const Rational>(sol.x.data(), l1 + l2));
  WitnessPair w;
  w.p1.assign(ints.begin(), ints.begin() + static_cast<std::ptrdiff_t>(l1));
  w.p2.assign(ints.begin() + static_cast<std::ptrdiff_t>(l1), ints.end());
  w.d = inst.mu1.transpose_times(w.p1);
  if (!validates(inst, w)) throw InvariantBreach("LP witness failed re-validation");
  if (half_column && !satisfies_half_column_bound(inst, w))
    throw InvariantBreach("LP witness violates the half-column bound");
  return w;
}

bool all_nonzero_at_least_two(const AmalgamInstance& inst) {
  for (int side : {1, 2}) {
    const auto& mu = inst.mu(side);
    for (std::size_t i = 0; i < mu.rows(); ++i)
      for (Int v : mu.row(i))
        if (v == 1) return false;
  }
  return true;
}

}  // namespace

std::optional<WitnessPair> rfd_decide(const AmalgamInstance& instance) {
  require_valid(instance);
  return solve_cone(instance, false);
}

TraceWeights trace_weights(const AmalgamInstance& instance, const WitnessPair& w) {
  if (!validates(instance, w)) throw PreconditionError("witness does not validate against the instance");
  auto weights = [](const BlockAlgebra& alg, const std::vector<Int>& p) {
    Rational total = 0;
    for (std::size_t i = 0; i < p.size(); ++i) total += Rational(p[i]) * alg[i];
    std::vector<Rational> out;
    out.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out.push_back(Rational(p[i]) * alg[i] / total);
    return out;
  };
  return {weights(instance.a1, w.p1), weights(instance.a2, w.p2)};
}

bool traces_agree_on_base(const AmalgamInstance& instance, const TraceWeights& weights) {
  for (std::size_t j = 0; j < instance.base.size(); ++j) {
    Rational lhs = 0, rhs = 0;
    for (std::size_t i = 0; i < instance.mu1.rows(); ++i)
      lhs += weights.alpha1[i] * instance.mu1(i, j) / instance.a1[i];
    for (std::size_t i = 0; i < instance.mu2.rows(); ++i)
      rhs += weights.alpha2[i] * instance.mu2(i, j) / instance.a2[i];
    if (lhs != rhs) return false;
  }
  return true;
}

Uniformizers rank_one_uniformizers(const AmalgamInstance& instance) {
  require_valid(instance);
  if (exact::rank(instance.mu1) != 1 || exact::rank(instance.mu2) != 1)
    throw PreconditionError("rank_one_uniformizers requires rank(mu1) = rank(mu2) = 1");
  const std::size_t l0 = instance.base.size();
  const Int c1 = instance.mu1.column_sum(0), c2 = instance.mu2.column_sum(0);
  const Int g = std::gcd(c1, c2);
  const Uniformizers q{c2 / g, c1 / g};
  for (std::size_t j = 0; j < l0; ++j) {
    if (checked_mul(q.q1, instance.mu1.column_sum(j)) != checked_mul(q.q2, instance.mu2.column_sum(j)))
      throw PreconditionError("column sums of mu1 and mu2 are not proportional: instance is not RFD");
  }
  return q;
}

MultiplicitySearch multiplicity_witness_search(const AmalgamInstance& instance, Int bound) {
  require_valid(instance);
  if (bound < 1) throw PreconditionError("search bound must be positive");
  MultiplicitySearch out;
  if (all_nonzero_at_least_two(instance)) {
    out.method = "fast_path";
    out.witness = solve_cone(instance, false);
    out.cone_feasible = out.witness.has_value();
    return out;
  }
  out.method = "exact_lp";
  auto w = solve_cone(instance, true);
  out.cone_feasible = w.has_value();
  if (!w) return out;
  if (w->max_entry() <= bound) {
    out.witness = std::move(w);
    return out;
  }
  out.method = "bounded_enumeration";
  out.witness = bounded_witness_enumeration(instance, bound, true);
  return out;
}

namespace {

// Depth-first search for p2 with mu2^T p2 = target and 1 <= p2(i) <= cap(i).
struct SecondSideSearch {
  const MultiplicityMatrix& mu;
  std::vector<Int> cap;
  std::vector<Int> residual;
  std::vector<Int> p;

  bool run(std::size_t row) {
    if (row == mu.rows())
      return std::all_of(residual.begin(), residual.end(), [](Int r) { return r == 0; });
    Int c = cap[row];
    for (std::size_t j = 0; j < mu.cols(); ++j)
      if (mu(row, j) > 0) c = std::min(c, residual[j] / mu(row, j));
    for (Int v = 1; v <= c; ++v) {
      p[row] = v;
      for (std::size_t j = 0; j < mu.cols(); ++j) residual[j] -= mu(row, j) * v;
      const bool found = run(row + 1);
      for (std::size_t j = 0; j < mu.cols(); ++j) residual[j] += mu(row, j) * v;
      if (found) return true;
    }
    return false;
  }
};

bool side_one_half_column_ok(const MultiplicityMatrix& mu, const std::vector<Int>& p, const std::vector<Int>& d) {
  for (std::size_t j = 0; j < d.size(); ++j)
    for (std::size_t i = 0; i < p.size(); ++i)
      if (mu(i, j) != 0 && 2 * p[i] > d[j]) return false;
  return true;
}

}  // namespace

std::optional<WitnessPair> bounded_witness_enumeration(const AmalgamInstance& instance, Int bound,
                                                       bool require_half_column_bound, Int max_grid) {
  require_valid(instance);
  if (bound < 1) throw PreconditionError("search bound must be positive");
  const auto& mu1 = instance.mu1;
  const auto& mu2 = instance.mu2;
  const std::size_t l1 = mu1.rows(), l2 = mu2.rows();
  Int grid = 1;
  for (std::size_t i = 0; i < l1; ++i) {
    grid = checked_mul(grid, bound);
    if (grid > max_grid) throw PreconditionError("bounded witness search too large");
  }

  std::vector<Int> p1(l1, 1);
  for (;;) {
    const std::vector<Int> d = mu1.transpose_times(p1);
    if (!require_half_column_bound || side_one_half_column_ok(mu1, p1, d)) {
      std::vector<Int> cap(l2, bound);
      if (require_half_column_bound)
        for (std::size_t i = 0; i < l2; ++i)
          for (std::size_t j = 0; j < d.size(); ++j)
            if (mu2(i, j) != 0) cap[i] = std::min(cap[i], d[j] / 2);
      SecondSideSearch search{mu2, std::move(cap), d, std::vector<Int>(l2, 0)};
      if (search.run(0)) return WitnessPair{p1, search.p, d};
    }
    // Odometer step over [1,bound]^{l1}, last coordinate fastest.
    std::size_t k = l1;
    while (k > 0 && p1[k - 1] == bound) p1[--k] = 1;
    if (k == 0) return std::nullopt;
    ++p1[k - 1];
  }
}

}  // namespace amalgam
