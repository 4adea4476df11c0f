#include "amalgam/structure.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace amalgam {

namespace {

std::optional<Link> find_link(const AmalgamInstance& inst, std::size_t a, std::size_t b) {
  for (int side : {1, 2}) {
    const auto& mu = inst.mu(side);
    for (std::size_t i = 0; i < mu.rows(); ++i)
      if (mu(i, a) != 0 && mu(i, b) != 0) return Link{i, side};
  }
  return std::nullopt;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

std::size_t first_support(const MultiplicityMatrix& mu, std::size_t row) {
  for (std::size_t j = 0; j < mu.cols(); ++j)
    if (mu(row, j) != 0) return j;
  return mu.cols();
}

}  // namespace

bool verify_link_certificate(const AmalgamInstance& instance, const LinkCertificate& cert) {
  const std::size_t l0 = instance.base.size();
  if (cert.order.size() != l0 || cert.links.size() + 1 != l0) return false;
  std::vector<bool> seen(l0, false);
  for (std::size_t j : cert.order) {
    if (j >= l0 || seen[j]) return false;
    seen[j] = true;
  }
  for (std::size_t k = 0; k < cert.links.size(); ++k) {
    const Link& link = cert.links[k];
    if (link.side != 1 && link.side != 2) return false;
    const auto& mu = instance.mu(link.side);
    if (link.row >= mu.rows()) return false;
    if (mu(link.row, cert.order[k]) == 0 || mu(link.row, cert.order[k + 1]) == 0) return false;
  }
  return true;
}

ColumnComponents column_components(const AmalgamInstance& instance) {
  require_valid(instance);
  const std::size_t l0 = instance.base.size();
  std::vector<std::size_t> parent(l0);
  std::iota(parent.begin(), parent.end(), 0);
  for (int side : {1, 2}) {
    const auto& mu = instance.mu(side);
    for (std::size_t i = 0; i < mu.rows(); ++i) {
      const std::size_t first = first_support(mu, i);
      for (std::size_t j = first + 1; j < l0; ++j)
        if (mu(i, j) != 0) parent[find_root(parent, j)] = find_root(parent, first);
    }
  }

  ColumnComponents out;
  std::vector<std::size_t> index_of_root(l0, l0);
  std::vector<std::size_t> component_of(l0);
  for (std::size_t j = 0; j < l0; ++j) {
    const std::size_t r = find_root(parent, j);
    if (index_of_root[r] == l0) {
      index_of_root[r] = out.columns.size();
      out.columns.emplace_back();
    }
    component_of[j] = index_of_root[r];
    out.columns[component_of[j]].push_back(j);
  }
  out.rows1.resize(out.count());
  out.rows2.resize(out.count());
  for (std::size_t i = 0; i < instance.mu1.rows(); ++i)
    out.rows1[component_of[first_support(instance.mu1, i)]].push_back(i);
  for (std::size_t i = 0; i < instance.mu2.rows(); ++i)
    out.rows2[component_of[first_support(instance.mu2, i)]].push_back(i);
  return out;
}

LinkCheck lp_literal(const AmalgamInstance& instance) {
  require_valid(instance);
  const std::size_t l0 = instance.base.size();
  LinkCertificate cert;
  cert.order.resize(l0);
  std::iota(cert.order.begin(), cert.order.end(), 0);
  for (std::size_t j = 0; j + 1 < l0; ++j) {
    auto link = find_link(instance, j, j + 1);
    if (!link) return {std::nullopt, j};
    cert.links.push_back(*link);
  }
  return {std::move(cert), 0};
}

std::optional<LinkCertificate> lp_order_search(const AmalgamInstance& instance, std::size_t limit) {
  require_valid(instance);
  const std::size_t l0 = instance.base.size();
  if (l0 > limit || l0 >= 63) throw PreconditionError("linked-order search too large: l0 = " + std::to_string(l0));

  std::vector<std::vector<std::optional<Link>>> link(l0, std::vector<std::optional<Link>>(l0));
  std::vector<std::uint64_t> adjacent(l0, 0);
  for (std::size_t a = 0; a < l0; ++a)
    for (std::size_t b = 0; b < l0; ++b)
      if (a != b && (link[a][b] = find_link(instance, a, b))) adjacent[a] |= std::uint64_t{1} << b;

  // starts[mask] has bit v set iff some path visiting exactly `mask` begins at v.
  const std::uint64_t full = (std::uint64_t{1} << l0) - 1;
  std::vector<std::uint64_t> starts(full + 1, 0);
  for (std::size_t v = 0; v < l0; ++v) starts[std::uint64_t{1} << v] |= std::uint64_t{1} << v;
  for (std::uint64_t mask = 1; mask <= full; ++mask) {
    if ((mask & (mask - 1)) == 0) continue;
    for (std::size_t v = 0; v < l0; ++v) {
      const std::uint64_t bit = std::uint64_t{1} << v;
      if (!(mask & bit)) continue;
      if (starts[mask & ~bit] & adjacent[v]) starts[mask] |= bit;
    }
  }
  if (starts[full] == 0) return std::nullopt;

  // Greedy reconstruction picks the smallest feasible vertex at each step.
  LinkCertificate cert;
  std::uint64_t remaining = full;
  std::uint64_t candidates = starts[full];
  while (remaining) {
    std::size_t v = 0;
    while (!(candidates & (std::uint64_t{1} << v))) ++v;
    if (!cert.order.empty()) cert.links.push_back(*link[cert.order.back()][v]);
    cert.order.push_back(v);
    remaining &= ~(std::uint64_t{1} << v);
    if (remaining) candidates = starts[remaining] & adjacent[v];
  }
  if (!verify_link_certificate(instance, cert)) throw InvariantBreach("order search produced an invalid certificate");
  return cert;
}

}  // namespace amalgam
