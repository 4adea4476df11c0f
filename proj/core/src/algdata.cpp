#include "amalgam/algdata.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace amalgam {

Int BlockAlgebra::dimension() const {
  Int d = 0;
  for (Int n : blocks_) d = checked_add(d, checked_mul(n, n));
  return d;
}

bool BlockAlgebra::is_abelian() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](Int n) { return n == 1; });
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::EmptyAlgebra: return "empty_algebra";
    case ViolationKind::NonPositiveBlock: return "non_positive_block";
    case ViolationKind::ShapeMismatch: return "shape_mismatch";
    case ViolationKind::NegativeEntry: return "negative_entry";
    case ViolationKind::Unitality: return "unitality";
    case ViolationKind::Injectivity: return "injectivity";
  }
  return "unknown";
}

namespace {

const char* algebra_name(int side) {
  switch (side) {
    case 0: return "D";
    case 1: return "A1";
    default: return "A2";
  }
}

void check_blocks(const BlockAlgebra& alg, int side, std::vector<Violation>& out) {
  if (alg.size() == 0) {
    out.push_back({ViolationKind::EmptyAlgebra, side, 0, 0,
                   std::string(algebra_name(side)) + " has no blocks"});
    return;
  }
  for (std::size_t i = 0; i < alg.size(); ++i) {
    if (alg[i] < 1) {
      std::ostringstream os;
      os << algebra_name(side) << " block " << i + 1 << " has size " << alg[i] << " < 1";
      out.push_back({ViolationKind::NonPositiveBlock, side, i, 0, os.str()});
    }
  }
}

void check_side(const AmalgamInstance& inst, int side, std::vector<Violation>& out) {
  const auto& alg = inst.factor(side);
  const auto& mu = inst.mu(side);
  const std::string mu_name = side == 1 ? "mu1" : "mu2";
  if (mu.rows() != alg.size() || mu.cols() != inst.base.size()) {
    std::ostringstream os;
    os << mu_name << " is " << mu.rows() << "x" << mu.cols() << ", expected " << alg.size() << "x"
       << inst.base.size() << " (blocks of " << algebra_name(side) << " x blocks of D)";
    out.push_back({ViolationKind::ShapeMismatch, side, mu.rows(), mu.cols(), os.str()});
    return;
  }
  bool negative = false;
  for (std::size_t i = 0; i < mu.rows(); ++i) {
    for (std::size_t j = 0; j < mu.cols(); ++j) {
      if (mu(i, j) < 0) {
        negative = true;
        std::ostringstream os;
        os << mu_name << "(" << i + 1 << "," << j + 1 << ") = " << mu(i, j) << " is negative";
        out.push_back({ViolationKind::NegativeEntry, side, i, j, os.str()});
      }
    }
  }
  if (negative) return;
  for (std::size_t i = 0; i < mu.rows(); ++i) {
    Int total = 0;
    for (std::size_t j = 0; j < mu.cols(); ++j) total = checked_add(total, checked_mul(mu(i, j), inst.base[j]));
    if (total != alg[i]) {
      std::ostringstream os;
      os << "unitality fails in row " << i + 1 << " of " << mu_name << ": sum_j mu(i,j)*d(j) = " << total
         << " but " << algebra_name(side) << " block is " << alg[i];
      out.push_back({ViolationKind::Unitality, side, i, 0, os.str()});
    }
  }
  for (std::size_t j = 0; j < mu.cols(); ++j) {
    if (mu.column_is_zero(j)) {
      std::ostringstream os;
      os << "injectivity fails: column " << j + 1 << " of " << mu_name << " is zero";
      out.push_back({ViolationKind::Injectivity, side, 0, j, os.str()});
    }
  }
}

}  // namespace

std::vector<Violation> validate(const AmalgamInstance& instance) {
  std::vector<Violation> out;
  check_blocks(instance.base, 0, out);
  check_blocks(instance.a1, 1, out);
  check_blocks(instance.a2, 2, out);
  check_side(instance, 1, out);
  check_side(instance, 2, out);
  return out;
}

namespace {
std::string join_messages(const std::vector<Violation>& v) {
  std::string s = "invalid instance:";
  for (const auto& x : v) s += "\n  - " + x.message;
  return s;
}
}  // namespace

InvalidInstance::InvalidInstance(std::vector<Violation> violations)
    : Error(join_messages(violations)), violations_(std::move(violations)) {}

void require_valid(const AmalgamInstance& instance) {
  auto v = validate(instance);
  if (!v.empty()) throw InvalidInstance(std::move(v));
}

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm) {
  std::vector<std::size_t> inv(perm.size(), perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) {
    if (perm[j] >= perm.size() || inv[perm[j]] != perm.size())
      throw PreconditionError("not a permutation of [" + std::to_string(perm.size()) + "]");
    inv[perm[j]] = j;
  }
  return inv;
}

AmalgamInstance permute_base(const AmalgamInstance& instance, std::span<const std::size_t> perm) {
  const std::size_t l0 = instance.base.size();
  if (perm.size() != l0)
    throw PreconditionError("permutation has length " + std::to_string(perm.size()) + ", D has " +
                            std::to_string(l0) + " blocks");
  (void)inverse_permutation(perm);  // bijectivity check

  std::vector<Int> blocks(l0);
  for (std::size_t j = 0; j < l0; ++j) blocks[perm[j]] = instance.base[j];

  auto permute = [&](const MultiplicityMatrix& mu) {
    return mu.cols() == l0 ? mu.with_columns_permuted(perm) : mu;
  };
  return {BlockAlgebra(std::move(blocks)), instance.a1, instance.a2, permute(instance.mu1),
          permute(instance.mu2)};
}

namespace {

// Sorts the rows of one side by (block size desc, row desc).
void sort_rows(BlockAlgebra& alg, MultiplicityMatrix& mu) {
  std::vector<std::size_t> order(alg.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (alg[x] != alg[y]) return alg[x] > alg[y];
    auto rx = mu.row(x), ry = mu.row(y);
    return std::lexicographical_compare(ry.begin(), ry.end(), rx.begin(), rx.end());
  });
  std::vector<Int> blocks;
  MultiplicityMatrix sorted(mu.rows(), mu.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    blocks.push_back(alg[order[k]]);
    for (std::size_t c = 0; c < mu.cols(); ++c) sorted(k, c) = mu(order[k], c);
  }
  alg = BlockAlgebra(std::move(blocks));
  mu = std::move(sorted);
}

}  // namespace

AmalgamInstance canonical_form(const AmalgamInstance& instance) {
  require_valid(instance);
  AmalgamInstance cur = instance;
  for (int round = 0; round < 8; ++round) {
    AmalgamInstance prev = cur;
    sort_rows(cur.a1, cur.mu1);
    sort_rows(cur.a2, cur.mu2);
    const std::size_t l0 = cur.base.size();
    std::vector<std::size_t> order(l0);
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](std::size_t j) {
      return std::make_tuple(-cur.base[j], cur.mu1.column(j), cur.mu2.column(j));
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return key(x) < key(y); });
    std::vector<std::size_t> perm(l0);
    for (std::size_t k = 0; k < l0; ++k) perm[order[k]] = k;
    cur = permute_base(cur, perm);
    if (cur == prev) break;
  }
  return cur;
}

}  // namespace amalgam
