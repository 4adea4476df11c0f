#include "amalgam/classify.hpp"

#include <algorithm>
#include <array>

#include "amalgam/reduction.hpp"

namespace amalgam {

namespace {

constexpr std::array<std::pair<Rule, const char*>, 9> kRuleIds{{
    {Rule::NotRfd, "not_rfd"},
    {Rule::PedersenDirectSum, "pedersen_direct_sum"},
    {Rule::PlainFreeProduct, "plain_free_product"},
    {Rule::M2AmalgamCircle, "m2_amalgam_circle"},
    {Rule::RankOneCharacterization, "rank_one_characterization"},
    {Rule::M2AbelianFamily, "m2_abelian_family"},
    {Rule::BigMultiplicities, "big_multiplicities"},
    {Rule::MultiplicityConditionLp, "multiplicity_condition_lp"},
    {Rule::Unresolved, "unresolved"},
}};

bool all_entries_equal(const MultiplicityMatrix& mu, Int v) {
  for (std::size_t i = 0; i < mu.rows(); ++i)
    for (Int x : mu.row(i))
      if (x != v) return false;
  return true;
}

bool nonzero_entries_at_least_two(const AmalgamInstance& c) {
  for (int side : {1, 2})
    for (std::size_t i = 0; i < c.mu(side).rows(); ++i)
      for (Int x : c.mu(side).row(i))
        if (x == 1) return false;
  return true;
}

bool some_entry_at_least_two(const AmalgamInstance& c) {
  return c.mu1.max_entry() >= 2 || c.mu2.max_entry() >= 2;
}

bool is_m2_circle(const AmalgamInstance& c) {
  const IntMatrix ones{{1, 1}};
  return c.base.size() == 2 && c.mu1 == ones && c.mu2 == ones;
}

// (a, b) when A1 = M2 over C^2 via [[1,1]] and A2 is abelian with a rows
// [1,0] and b rows [0,1].
std::optional<std::pair<Int, Int>> family_shape_oriented(const AmalgamInstance& c) {
  if (c.base.size() != 2 || !(c.mu1 == IntMatrix{{1, 1}})) return std::nullopt;
  Int a = 0, b = 0;
  for (std::size_t i = 0; i < c.mu2.rows(); ++i) {
    if (c.mu2(i, 0) == 1 && c.mu2(i, 1) == 0) ++a;
    else if (c.mu2(i, 0) == 0 && c.mu2(i, 1) == 1) ++b;
    else return std::nullopt;
  }
  if (a == 0 || b == 0) return std::nullopt;
  return std::pair{a, b};
}

std::optional<std::pair<Int, Int>> family_shape(const AmalgamInstance& c) {
  if (auto s = family_shape_oriented(c)) return s;
  return family_shape_oriented(c.swapped());
}

bool plain_side_is(const BlockAlgebra& a, std::initializer_list<Int> blocks) {
  return a.blocks() == std::vector<Int>(blocks);
}

struct Outcome {
  Rule rule;
  Label label;
  std::string description;
};

struct Analysis {
  const ClassifyOptions& options;
  Evidence evidence;
  std::vector<Outcome> fired;
  bool rank_one = false;

  const AmalgamInstance& c() const { return evidence.compressed; }

  void ensure_link() {
    if (evidence.link || !evidence.components || evidence.components->count() != 1) return;
    try {
      evidence.link = lp_order_search(c(), options.order_search_limit);
    } catch (const PreconditionError& e) {
      evidence.notes.push_back(std::string("linked-order search skipped: ") + e.what());
    }
  }

  void ensure_multiplicity_search() {
    if (evidence.multiplicity_search) return;
    try {
      evidence.multiplicity_search = multiplicity_witness_search(c(), options.search_bound);
    } catch (const PreconditionError& e) {
      evidence.notes.push_back(std::string("multiplicity witness search skipped: ") + e.what());
    }
  }

  void fire(Rule rule, Label label, std::string description) {
    fired.push_back({rule, label, std::move(description)});
  }

  void plain_free_product() {
    if (c().base.size() != 1) return;
    const auto& a1 = c().a1;
    const auto& a2 = c().a2;
    if (plain_side_is(a1, {1, 1}) && plain_side_is(a2, {1, 1})) {
      fire(Rule::PlainFreeProduct, Label::NotPrimitive, "C^2 * C^2 has nontrivial center");
    } else if (plain_side_is(a1, {1}) || plain_side_is(a2, {1})) {
      const auto& other = plain_side_is(a1, {1}) ? a2 : a1;
      fire(Rule::PlainFreeProduct, other.size() == 1 ? Label::Primitive : Label::NotPrimitive,
           "one factor is C, the product is the other factor");
    } else {
      fire(Rule::PlainFreeProduct, Label::Primitive, "free product over C");
    }
  }

  void rank_one_rules() {
    if (c().base.size() < 2 || !rank_one) return;
    evidence.rank_one = rank_one_diagnostics(c());
    if (is_m2_circle(c())) {
      evidence.isomorphism = "M_2(C(T))";
      fire(Rule::M2AmalgamCircle, Label::NotPrimitive, "M_2 *_{C^2} M_2 = M_2(C(T))");
      return;
    }
    const bool covered = std::any_of(evidence.rank_one.begin(), evidence.rank_one.end(),
                                     [](const RankOneDiagnostic& d) { return d.holds; });
    if (!covered) throw InvariantBreach("rank-one instance outside every known primitivity condition");
    fire(Rule::RankOneCharacterization, Label::Primitive, "rank-one multiplicities, not the M_2(C(T)) exception");
  }

  void m2_family() {
    const auto shape = family_shape(c());
    if (!shape) return;
    evidence.family_shape = shape;
    const auto [a, b] = *shape;
    const Int lo = std::min(a, b), hi = std::max(a, b);
    if (a == 1 && b == 1) {
      evidence.isomorphism = "M_2";
      fire(Rule::M2AbelianFamily, Label::Primitive, "the abelian factor equals the base, product is M_2");
    } else if (lo == 1) {
      evidence.isomorphism = "M_2(C^" + std::to_string(hi) + ")";
      fire(Rule::M2AbelianFamily, Label::NotPrimitive, "isomorphic to " + evidence.isomorphism);
    } else if (lo == 2 && hi == 2) {
      evidence.isomorphism = "M_2(C^2 * C^2)";
      fire(Rule::M2AbelianFamily, Label::NotPrimitive, "isomorphic to " + evidence.isomorphism);
    } else {
      fire(Rule::M2AbelianFamily, Label::Primitive, "M_2 over C^2 with abelian factor of sizes >= 2 and >= 3");
    }
  }

  void big_multiplicities() {
    if (!nonzero_entries_at_least_two(c())) return;
    ensure_link();
    if (evidence.link) fire(Rule::BigMultiplicities, Label::Primitive, "all nonzero multiplicities >= 2 with a linked order");
  }

  void multiplicity_condition() {
    if (!some_entry_at_least_two(c())) return;
    ensure_link();
    if (!evidence.link) return;
    ensure_multiplicity_search();
    if (evidence.multiplicity_search && evidence.multiplicity_search->witness)
      fire(Rule::MultiplicityConditionLp, Label::Primitive,
           "half-column multiplicity witness with a linked order");
  }

  void explain_unresolved() {
    const auto& comps = evidence.components;
    if (comps && comps->count() == 1) {
      ensure_link();
      if (!evidence.link) evidence.notes.push_back("connected_but_unorderable");
    }
    if (!nonzero_entries_at_least_two(c())) evidence.notes.push_back("some multiplicity equals 1");
    if (!some_entry_at_least_two(c())) evidence.notes.push_back("every multiplicity equals 1");
    if (!rank_one) evidence.notes.push_back("multiplicity matrices are not both rank one");
    if (evidence.link && some_entry_at_least_two(c())) {
      ensure_multiplicity_search();
      if (const auto& s = evidence.multiplicity_search) {
        if (!s->cone_feasible) evidence.notes.push_back("no half-column multiplicity witness exists");
        else if (!s->witness) evidence.notes.push_back("no half-column multiplicity witness within the search bound");
      }
    }
  }
};

Analysis analyse(const AmalgamInstance& instance, const ClassifyOptions& options) {
  Analysis an{options, {}, {}, false};
  an.evidence.compressed = compress(instance);
  const auto& c = an.evidence.compressed;

  an.evidence.rfd_witness = rfd_decide(c);
  if (!an.evidence.rfd_witness) {
    an.fire(Rule::NotRfd, Label::Unknown, "no agreeing faithful traces");
    return an;
  }
  an.evidence.components = column_components(c);
  if (an.evidence.components->count() >= 2)
    an.fire(Rule::PedersenDirectSum, Label::NotPrimitive,
            "direct sum of " + std::to_string(an.evidence.components->count()) + " amalgamated products");
  an.rank_one = exact::rank(c.mu1) == 1 && exact::rank(c.mu2) == 1;
  an.plain_free_product();
  an.rank_one_rules();
  an.m2_family();
  an.big_multiplicities();
  an.multiplicity_condition();
  return an;
}

}  // namespace

std::string to_string(Label label) {
  switch (label) {
    case Label::Primitive: return "Primitive";
    case Label::NotPrimitive: return "NotPrimitive";
    case Label::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string to_string(Rule rule) {
  for (auto [r, id] : kRuleIds)
    if (r == rule) return id;
  return "unresolved";
}

std::optional<Label> parse_label(const std::string& text) {
  for (Label l : {Label::Primitive, Label::NotPrimitive, Label::Unknown})
    if (to_string(l) == text) return l;
  return std::nullopt;
}

std::optional<Rule> parse_rule(const std::string& text) {
  for (auto [r, id] : kRuleIds)
    if (text == id) return r;
  return std::nullopt;
}

std::vector<RankOneDiagnostic> rank_one_diagnostics(const AmalgamInstance& instance) {
  if (exact::rank(instance.mu1) != 1 || exact::rank(instance.mu2) != 1)
    throw PreconditionError("rank_one_diagnostics requires rank(mu1) = rank(mu2) = 1");
  const auto& mu1 = instance.mu1;
  const auto& mu2 = instance.mu2;
  const std::size_t l0 = instance.base.size();
  const Int l1 = static_cast<Int>(mu1.rows()), l2 = static_cast<Int>(mu2.rows());
  std::vector<RankOneDiagnostic> out;

  {
    RankOneDiagnostic d{"single_column_density", false, std::nullopt, ""};
    for (std::size_t j = 0; j < l0; ++j) {
      const Int c1 = mu1.column_sum(j), c2 = mu2.column_sum(j);
      const Rational v = Rational(l1, c1 * c1) + Rational(l2, c2 * c2);
      if (!d.value || v < *d.value) {
        d.value = v;
        d.detail = "minimum at base block " + std::to_string(j);
      }
    }
    d.holds = d.value && *d.value < 1;
    out.push_back(std::move(d));
  }

  {
    RankOneDiagnostic d{"matrix_algebra_side", false, std::nullopt, "no side is M_{l0} over all-ones"};
    for (int side : {1, 2}) {
      const auto& mine = instance.mu(side);
      const auto& other = instance.mu(3 - side);
      if (mine.rows() != 1 || !all_entries_equal(mine, 1) || other.rows() < 2) continue;
      Rational v = 1;
      for (std::size_t j = 0; j < l0; ++j) v += Rational(1, other.column_sum(j));
      if (!d.value || v < *d.value) {
        d.value = v;
        d.detail = "A" + std::to_string(side) + " = M_" + std::to_string(l0) + ", compared with l0 = " +
                   std::to_string(l0);
      }
      d.holds = d.holds || v < static_cast<Int>(l0);
    }
    out.push_back(std::move(d));
  }

  {
    RankOneDiagnostic d{"all_ones", false, std::nullopt, ""};
    d.holds = all_entries_equal(mu1, 1) && all_entries_equal(mu2, 1) && l0 >= 2 && (l1 > 1 || l2 > 1);
    d.detail = "every multiplicity is 1, l0 >= 2 and a factor has several blocks";
    out.push_back(std::move(d));
  }

  {
    RankOneDiagnostic d{"matrix_matrix", false, std::nullopt, ""};
    d.holds = l1 == 1 && l2 == 1 && l0 >= 2 && (some_entry_at_least_two(instance) || l0 >= 3);
    d.detail = "both factors are full matrix algebras, with l0 >= 3 or a multiplicity >= 2";
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<std::pair<Rule, Label>> applicable_rules(const AmalgamInstance& instance, const ClassifyOptions& options) {
  const auto an = analyse(instance, options);
  std::vector<std::pair<Rule, Label>> out;
  for (const auto& o : an.fired) out.emplace_back(o.rule, o.label);
  return out;
}

Verdict classify(const AmalgamInstance& instance, const ClassifyOptions& options) {
  auto an = analyse(instance, options);
  Verdict v;
  if (an.fired.empty()) {
    an.explain_unresolved();
    v.label = Label::Unknown;
    v.rule = Rule::Unresolved;
    v.summary = "Unknown (no known criterion applies)";
  } else {
    const Outcome& first = an.fired.front();
    for (std::size_t k = 1; k < an.fired.size(); ++k) {
      if (an.fired[k].label != first.label)
        throw InvariantBreach("rules " + to_string(first.rule) + " and " + to_string(an.fired[k].rule) +
                              " disagree");
      an.evidence.corroborating.push_back(an.fired[k].rule);
    }
    v.label = first.label;
    v.rule = first.rule;
    v.summary = to_string(first.label) + " (" + first.description + ")";
  }
  v.evidence = std::move(an.evidence);
  return v;
}

namespace {

VerdictCheck fail(std::string why) { return {false, std::move(why)}; }

bool components_split(const AmalgamInstance& c, const ColumnComponents& comps) {
  const std::size_t l0 = c.base.size();
  std::vector<std::size_t> owner(l0, comps.count());
  for (std::size_t k = 0; k < comps.count(); ++k)
    for (std::size_t j : comps.columns[k]) {
      if (j >= l0 || owner[j] != comps.count()) return false;
      owner[j] = k;
    }
  if (std::count(owner.begin(), owner.end(), comps.count()) != 0) return false;
  for (int side : {1, 2}) {
    const auto& mu = c.mu(side);
    for (std::size_t i = 0; i < mu.rows(); ++i) {
      std::size_t seen = comps.count();
      for (std::size_t j = 0; j < l0; ++j) {
        if (mu(i, j) == 0) continue;
        if (seen == comps.count()) seen = owner[j];
        else if (seen != owner[j]) return false;
      }
    }
  }
  return true;
}

}  // namespace

VerdictCheck check_verdict(const AmalgamInstance& instance, const Verdict& verdict) {
  const Evidence& ev = verdict.evidence;
  const AmalgamInstance c = compress(instance);
  if (!(c == ev.compressed)) return fail("evidence carries a different compressed instance");
  if (verdict.rule == Rule::NotRfd) {
    if (verdict.label != Label::Unknown) return fail("not_rfd must be Unknown");
    return rfd_decide(c) ? fail("instance is RFD") : VerdictCheck{true, ""};
  }
  if (!ev.rfd_witness || !validates(c, *ev.rfd_witness)) return fail("missing or invalid RFD witness");
  if (!traces_agree_on_base(c, trace_weights(c, *ev.rfd_witness))) return fail("trace weights disagree on D");

  const std::size_t l0 = c.base.size();
  const auto expect = [&](Label label) {
    return verdict.label == label ? VerdictCheck{true, ""} : fail("label does not match rule");
  };
  switch (verdict.rule) {
    case Rule::PedersenDirectSum:
      if (!ev.components || ev.components->count() < 2 || !components_split(c, *ev.components))
        return fail("components do not split the multiplicity matrices");
      return expect(Label::NotPrimitive);
    case Rule::PlainFreeProduct: {
      if (l0 != 1) return fail("base is not C");
      const bool c2c2 = plain_side_is(c.a1, {1, 1}) && plain_side_is(c.a2, {1, 1});
      const bool trivial1 = plain_side_is(c.a1, {1}), trivial2 = plain_side_is(c.a2, {1});
      Label want = Label::Primitive;
      if (c2c2) want = Label::NotPrimitive;
      else if (trivial1 || trivial2) want = (trivial1 ? c.a2 : c.a1).size() == 1 ? Label::Primitive : Label::NotPrimitive;
      return expect(want);
    }
    case Rule::M2AmalgamCircle:
      if (!is_m2_circle(c)) return fail("not the M_2 *_{C^2} M_2 pattern");
      return expect(Label::NotPrimitive);
    case Rule::RankOneCharacterization: {
      if (l0 < 2 || exact::rank(c.mu1) != 1 || exact::rank(c.mu2) != 1) return fail("not a rank-one instance");
      if (is_m2_circle(c)) return fail("the M_2(C(T)) exception is not primitive");
      const auto diag = rank_one_diagnostics(c);
      if (std::none_of(diag.begin(), diag.end(), [](const RankOneDiagnostic& d) { return d.holds; }))
        return fail("no rank-one condition holds");
      return expect(Label::Primitive);
    }
    case Rule::M2AbelianFamily: {
      const auto shape = family_shape(c);
      if (!shape || shape != ev.family_shape) return fail("family shape mismatch");
      const auto [a, b] = *shape;
      const bool primitive = (a == 1 && b == 1) || (std::min(a, b) >= 2 && std::max(a, b) >= 3);
      return expect(primitive ? Label::Primitive : Label::NotPrimitive);
    }
    case Rule::BigMultiplicities:
      if (!nonzero_entries_at_least_two(c)) return fail("a multiplicity equals 1");
      if (!ev.link || !verify_link_certificate(c, *ev.link)) return fail("missing or invalid linked order");
      return expect(Label::Primitive);
    case Rule::MultiplicityConditionLp: {
      if (!some_entry_at_least_two(c)) return fail("no multiplicity >= 2");
      if (!ev.link || !verify_link_certificate(c, *ev.link)) return fail("missing or invalid linked order");
      if (!ev.multiplicity_search || !ev.multiplicity_search->witness) return fail("missing multiplicity witness");
      const auto& w = *ev.multiplicity_search->witness;
      if (!validates(c, w) || !satisfies_half_column_bound(c, w)) return fail("multiplicity witness fails its bounds");
      return expect(Label::Primitive);
    }
    case Rule::Unresolved:
      return expect(Label::Unknown);
    case Rule::NotRfd:
      break;
  }
  return fail("unhandled rule");
}

}  // namespace amalgam
