#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amalgam/algdata.hpp"
#include "amalgam/exact.hpp"

namespace amalgam {

/// Strictly positive multiplicity vectors with mu1^T p1 = mu2^T p2 = d.
struct WitnessPair {
  std::vector<Int> p1;
  std::vector<Int> p2;
  std::vector<Int> d;

  Int max_entry() const;
  WitnessPair scaled(Int k) const;
  friend bool operator==(const WitnessPair&, const WitnessPair&) = default;
};

/// True iff all entries are positive, shapes match and mu1^T p1 = mu2^T p2 = d.
bool validates(const AmalgamInstance& instance, const WitnessPair& w);

/// Every (s, j, i) with mu_s(i,j) != 0 has 2 p_s(i) <= d(j).
bool satisfies_half_column_bound(const AmalgamInstance& instance, const WitnessPair& w);

/// Decides residual finite-dimensionality exactly: a witness exists iff the
/// rational kernel of [mu1^T | -mu2^T] meets the open positive orthant. An
/// exact LP maximizes the minimum coordinate over the kernel intersected with
/// the unit box; the optimum is scaled to a primitive integer vector.
/// Returns nullopt for "not RFD". Throws InvalidInstance.
std::optional<WitnessPair> rfd_decide(const AmalgamInstance& instance);

struct TraceWeights {
  std::vector<Rational> alpha1;
  std::vector<Rational> alpha2;
};

/// alpha_s(i) = p_s(i) n_s(i) / sum_k p_s(k) n_s(k). Throws PreconditionError
/// if the witness does not validate.
TraceWeights trace_weights(const AmalgamInstance& instance, const WitnessPair& w);

/// For every base block j, sum_i alpha1(i) mu1(i,j)/n1(i) == sum_i alpha2(i) mu2(i,j)/n2(i).
bool traces_agree_on_base(const AmalgamInstance& instance, const TraceWeights& weights);

struct Uniformizers {
  Int q1 = 0;
  Int q2 = 0;
  friend bool operator==(const Uniformizers&, const Uniformizers&) = default;
};

/// Smallest positive (q1, q2) with mu1^T (q1 1) = mu2^T (q2 1). Requires both
/// multiplicity matrices to have rank one; throws PreconditionError otherwise
/// or when no such pair exists.
Uniformizers rank_one_uniformizers(const AmalgamInstance& instance);

inline constexpr Int kDefaultSearchBound = 64;

struct MultiplicitySearch {
  std::optional<WitnessPair> witness;
  /// The homogeneous cone {RFD equation, half-column bound, p > 0} is nonempty.
  bool cone_feasible = false;
  /// How the answer was obtained: "fast_path", "exact_lp", "bounded_enumeration".
  std::string method;
};

/// Looks for a witness that also satisfies the half-column bound, with every
/// entry of (p1, p2) at most `bound`. When every nonzero multiplicity is >= 2
/// any RFD witness qualifies and is returned directly. Otherwise the exact LP
/// over the cone decides existence; if its primitive solution exceeds the
/// bound an exhaustive bounded search is run.
MultiplicitySearch multiplicity_witness_search(const AmalgamInstance& instance,
                                               Int bound = kDefaultSearchBound);

/// Exhaustive search over p1 in [1,bound]^{l1}, solving for p2 in
/// [1,bound]^{l2} by pruned depth-first search. Returns the first witness in
/// lexicographic (p1, p2) order. Throws PreconditionError if the p1 grid has
/// more than `max_grid` points.
std::optional<WitnessPair> bounded_witness_enumeration(const AmalgamInstance& instance, Int bound,
                                                       bool require_half_column_bound,
                                                       Int max_grid = 50'000'000);

}  // namespace amalgam
