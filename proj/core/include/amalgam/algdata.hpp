#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "amalgam/errors.hpp"
#include "amalgam/matrix.hpp"

namespace amalgam {

/// A finite-dimensional C*-algebra up to isomorphism: the ordered list of
/// matrix block sizes n(1..l), i.e. the algebra M_{n(1)} + ... + M_{n(l)}.
class BlockAlgebra {
 public:
  BlockAlgebra() = default;
  explicit BlockAlgebra(std::vector<Int> blocks) : blocks_(std::move(blocks)) {}
  BlockAlgebra(std::initializer_list<Int> blocks) : blocks_(blocks) {}

  const std::vector<Int>& blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  Int operator[](std::size_t i) const { return blocks_[i]; }

  /// Sum of squared block sizes.
  Int dimension() const;
  bool is_abelian() const;

  friend bool operator==(const BlockAlgebra&, const BlockAlgebra&) = default;

 private:
  std::vector<Int> blocks_;
};

using MultiplicityMatrix = IntMatrix;

/// The full datum of A1 *_D A2: the base D, the two factors, and the
/// partial-multiplicity matrices mu_s (rows = blocks of A_s, cols = blocks of D).
struct AmalgamInstance {
  BlockAlgebra base;
  BlockAlgebra a1;
  BlockAlgebra a2;
  MultiplicityMatrix mu1;
  MultiplicityMatrix mu2;

  const BlockAlgebra& factor(int side) const { return side == 1 ? a1 : a2; }
  const MultiplicityMatrix& mu(int side) const { return side == 1 ? mu1 : mu2; }

  /// Exchanges (A1, mu1) with (A2, mu2).
  AmalgamInstance swapped() const { return {base, a2, a1, mu2, mu1}; }

  friend bool operator==(const AmalgamInstance&, const AmalgamInstance&) = default;
};

enum class ViolationKind {
  EmptyAlgebra,
  NonPositiveBlock,
  ShapeMismatch,
  NegativeEntry,
  Unitality,
  Injectivity,
};

struct Violation {
  ViolationKind kind;
  int side = 0;  // 0 = D, 1 or 2 = A_s
  std::size_t row = 0;
  std::size_t col = 0;
  std::string message;
};

std::string to_string(ViolationKind kind);

/// Every violated unitality / injectivity / shape constraint; empty iff valid.
std::vector<Violation> validate(const AmalgamInstance& instance);
inline bool is_valid(const AmalgamInstance& instance) { return validate(instance).empty(); }

class InvalidInstance : public Error {
 public:
  explicit InvalidInstance(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Throws InvalidInstance listing the violations, if any.
void require_valid(const AmalgamInstance& instance);

/// Reorders the summands of D: column j moves to position perm[j] in both
/// mu matrices and D's blocks are moved alongside. Throws PreconditionError
/// unless perm is a bijection on [l0].
AmalgamInstance permute_base(const AmalgamInstance& instance, std::span<const std::size_t> perm);

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm);

/// Dedup key for corpora: blocks sorted descending, columns sorted by
/// (mu1 column, mu2 column). Not a full isomorphism invariant.
AmalgamInstance canonical_form(const AmalgamInstance& instance);

}  // namespace amalgam
