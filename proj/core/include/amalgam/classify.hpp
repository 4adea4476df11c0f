#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amalgam/algdata.hpp"
#include "amalgam/exact.hpp"
#include "amalgam/feasibility.hpp"
#include "amalgam/structure.hpp"

namespace amalgam {

enum class Label { Primitive, NotPrimitive, Unknown };

enum class Rule {
  NotRfd,                   // no agreeing faithful traces; nothing applies
  PedersenDirectSum,        // disconnected columns split the product
  PlainFreeProduct,         // D = C
  M2AmalgamCircle,          // M2 *_{C^2} M2 = M2(C(T))
  RankOneCharacterization,  // rank(mu1) = rank(mu2) = 1
  M2AbelianFamily,          // M2 *_{C^2} (C^a + C^b)
  BigMultiplicities,        // nonzero multiplicities >= 2 plus a linked order
  MultiplicityConditionLp,  // half-column witness, some entry >= 2, linked order
  Unresolved,
};

std::string to_string(Label label);
/// Stable identifier, e.g. "pedersen_direct_sum".
std::string to_string(Rule rule);
std::optional<Label> parse_label(const std::string& text);
std::optional<Rule> parse_rule(const std::string& text);

struct RankOneDiagnostic {
  /// "single_column_density", "matrix_algebra_side", "all_ones" or "matrix_matrix".
  std::string name;
  bool holds = false;
  /// The inequality's left-hand side where there is one.
  std::optional<Rational> value;
  std::string detail;
};

/// Evaluates the sufficient conditions for primitivity known for rank-one
/// multiplicity matrices, in exact arithmetic. Throws PreconditionError
/// unless both matrices have rank one. Expects an abelian base.
std::vector<RankOneDiagnostic> rank_one_diagnostics(const AmalgamInstance& instance);

struct Evidence {
  AmalgamInstance compressed;
  std::optional<WitnessPair> rfd_witness;
  std::optional<ColumnComponents> components;
  std::optional<LinkCertificate> link;
  std::optional<MultiplicitySearch> multiplicity_search;
  std::vector<RankOneDiagnostic> rank_one;
  /// (a, b) for the M2 abelian family, in the orientation where A1 = M2.
  std::optional<std::pair<Int, Int>> family_shape;
  /// Known isomorphism type when one is available.
  std::string isomorphism;
  /// Further rules whose hypotheses hold; all give the same label.
  std::vector<Rule> corroborating;
  std::vector<std::string> notes;
};

struct Verdict {
  Label label = Label::Unknown;
  Rule rule = Rule::Unresolved;
  std::string summary;
  Evidence evidence;
};

struct ClassifyOptions {
  Int search_bound = kDefaultSearchBound;
  std::size_t order_search_limit = kDefaultOrderSearchLimit;
};

/// Runs the ordered rule list on compress(instance); complete
/// characterizations come before sufficient conditions. Throws
/// InvalidInstance on invalid input.
Verdict classify(const AmalgamInstance& instance, const ClassifyOptions& options = {});

/// Every rule whose hypotheses hold on compress(instance), with its label, in
/// rule order. classify picks the first.
std::vector<std::pair<Rule, Label>> applicable_rules(const AmalgamInstance& instance,
                                                     const ClassifyOptions& options = {});

struct VerdictCheck {
  bool ok = false;
  std::string reason;
};

/// Re-derives the hypotheses of the verdict's rule from its attached
/// evidence, independently of classify's control flow.
VerdictCheck check_verdict(const AmalgamInstance& instance, const Verdict& verdict);

}  // namespace amalgam
