#pragma once

#include <optional>
#include <vector>

#include "amalgam/algdata.hpp"

namespace amalgam {

/// A row of mu_side that is nonzero on two base blocks.
struct Link {
  std::size_t row = 0;
  int side = 1;
  friend bool operator==(const Link&, const Link&) = default;
};

/// An order of the base blocks in which consecutive blocks are linked:
/// links[j] joins order[j] and order[j+1].
struct LinkCertificate {
  std::vector<std::size_t> order;
  std::vector<Link> links;
};

/// True iff `order` is a permutation of [l0] and every link is supported at
/// both of its base blocks.
bool verify_link_certificate(const AmalgamInstance& instance, const LinkCertificate& cert);

struct ColumnComponents {
  /// Base-block indices per component, each sorted, components ordered by
  /// their smallest member.
  std::vector<std::vector<std::size_t>> columns;
  /// rows1[k] / rows2[k]: rows of mu1 / mu2 supported inside component k.
  std::vector<std::vector<std::size_t>> rows1;
  std::vector<std::vector<std::size_t>> rows2;

  std::size_t count() const noexcept { return columns.size(); }
};

/// Connected components of the base blocks, two blocks being adjacent when
/// some row of mu1 or mu2 is nonzero at both.
ColumnComponents column_components(const AmalgamInstance& instance);

/// Result of checking consecutive base blocks in the given order.
struct LinkCheck {
  std::optional<LinkCertificate> certificate;
  /// When no certificate: first position j such that (j, j+1) is unlinked.
  std::size_t first_unlinked = 0;
};

/// Checks the identity order. Links are chosen by scanning side 1 then side 2,
/// lowest row first. A single base block gives the trivial certificate.
LinkCheck lp_literal(const AmalgamInstance& instance);

inline constexpr std::size_t kDefaultOrderSearchLimit = 20;

/// Searches every order of the base blocks for a linked one, by dynamic
/// programming over subsets for Hamiltonian paths in the adjacency graph.
/// Returns the lexicographically smallest linked order, or nullopt. Throws
/// PreconditionError when l0 exceeds `limit`.
std::optional<LinkCertificate> lp_order_search(const AmalgamInstance& instance,
                                               std::size_t limit = kDefaultOrderSearchLimit);

}  // namespace amalgam
