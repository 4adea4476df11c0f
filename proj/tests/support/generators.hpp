#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "amalgam/algdata.hpp"

namespace amalgam::testing {

struct RandomInstanceOptions {
  std::size_t max_l0 = 3;
  std::size_t max_rows = 3;
  Int max_entry = 3;
  Int max_base_block = 1;
  double zero_probability = 0.4;
};

inline Int uniform(std::mt19937_64& rng, Int lo, Int hi) {
  return std::uniform_int_distribution<Int>(lo, hi)(rng);
}

/// Random multiplicity matrix with no zero row and no zero column.
inline IntMatrix random_mu(std::mt19937_64& rng, std::size_t rows, std::size_t cols, Int max_entry, double zero_p) {
  std::bernoulli_distribution zero(zero_p);
  for (;;) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = zero(rng) ? 0 : uniform(rng, 1, max_entry);
    bool ok = true;
    for (std::size_t i = 0; i < rows && ok; ++i) ok = m.row_sum(i) > 0;
    for (std::size_t j = 0; j < cols && ok; ++j) ok = !m.column_is_zero(j);
    if (ok) return m;
  }
}

/// A valid instance: block sizes of A_s are forced by unitality.
inline AmalgamInstance random_instance(std::mt19937_64& rng, const RandomInstanceOptions& o = {}) {
  const auto l0 = static_cast<std::size_t>(uniform(rng, 1, static_cast<Int>(o.max_l0)));
  const auto l1 = static_cast<std::size_t>(uniform(rng, 1, static_cast<Int>(o.max_rows)));
  const auto l2 = static_cast<std::size_t>(uniform(rng, 1, static_cast<Int>(o.max_rows)));
  std::vector<Int> d(l0);
  for (auto& x : d) x = uniform(rng, 1, o.max_base_block);
  AmalgamInstance inst;
  inst.base = BlockAlgebra(d);
  inst.mu1 = random_mu(rng, l1, l0, o.max_entry, o.zero_probability);
  inst.mu2 = random_mu(rng, l2, l0, o.max_entry, o.zero_probability);
  auto blocks = [&](const IntMatrix& mu) {
    std::vector<Int> n(mu.rows(), 0);
    for (std::size_t i = 0; i < mu.rows(); ++i)
      for (std::size_t j = 0; j < l0; ++j) n[i] += mu(i, j) * d[j];
    return BlockAlgebra(n);
  };
  inst.a1 = blocks(inst.mu1);
  inst.a2 = blocks(inst.mu2);
  return inst;
}

/// Builds a valid instance from multiplicity matrices over the given base.
inline AmalgamInstance instance_from_mu(std::vector<Int> d, IntMatrix mu1, IntMatrix mu2) {
  auto blocks = [&](const IntMatrix& mu) {
    std::vector<Int> n(mu.rows(), 0);
    for (std::size_t i = 0; i < mu.rows(); ++i)
      for (std::size_t j = 0; j < mu.cols(); ++j) n[i] += mu(i, j) * d[j];
    return BlockAlgebra(n);
  };
  AmalgamInstance inst{BlockAlgebra(d), blocks(mu1), blocks(mu2), std::move(mu1), std::move(mu2)};
  return inst;
}

inline std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = k;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace amalgam::testing
