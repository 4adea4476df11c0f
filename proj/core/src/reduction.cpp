#include "amalgam/reduction.hpp"

namespace amalgam {

namespace {
BlockAlgebra compressed_factor(const MultiplicityMatrix& mu) {
  std::vector<Int> blocks(mu.rows());
  for (std::size_t i = 0; i < mu.rows(); ++i) blocks[i] = mu.row_sum(i);
  return BlockAlgebra(std::move(blocks));
}
}  // namespace

AmalgamInstance compress(const AmalgamInstance& instance) {
  require_valid(instance);
  if (instance.base.is_abelian()) return instance;
  AmalgamInstance out{BlockAlgebra(std::vector<Int>(instance.base.size(), 1)),
                      compressed_factor(instance.mu1), compressed_factor(instance.mu2),
                      instance.mu1, instance.mu2};
  if (!is_valid(out)) throw InvariantBreach("compress produced an invalid instance");
  return out;
}

}  // namespace amalgam
