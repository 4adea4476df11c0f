#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "amalgam/algdata.hpp"

namespace amalgam::oracle {

/// Every side mu (l0 columns, 1..max_rows rows, entries 0..max_entry) up to
/// row order: rows nonzero and sorted decreasingly, every column nonzero.
inline std::vector<IntMatrix> enumerate_sides(std::size_t l0, std::size_t max_rows, Int max_entry) {
  std::vector<std::vector<Int>> rows;
  std::vector<Int> r(l0, 0);
  for (;;) {
    std::size_t k = l0;
    while (k > 0 && r[k - 1] == max_entry) r[--k] = 0;
    if (k == 0) break;
    ++r[k - 1];
    rows.push_back(r);
  }
  std::sort(rows.begin(), rows.end(), std::greater<>());
  std::vector<IntMatrix> out;
  std::vector<std::size_t> pick;
  auto emit = [&] {
    IntMatrix m(pick.size(), l0);
    for (std::size_t i = 0; i < pick.size(); ++i)
      for (std::size_t j = 0; j < l0; ++j) m(i, j) = rows[pick[i]][j];
    for (std::size_t j = 0; j < l0; ++j)
      if (m.column_is_zero(j)) return;
    out.push_back(std::move(m));
  };
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (!pick.empty()) emit();
    if (pick.size() == max_rows) return;
    for (std::size_t i = from; i < rows.size(); ++i) {
      pick.push_back(i);
      self(self, i);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// mu with its columns permuted and rows re-sorted decreasingly.
inline IntMatrix permuted_side(const IntMatrix& mu, const std::vector<std::size_t>& perm) {
  std::vector<std::vector<Int>> rows(mu.rows(), std::vector<Int>(mu.cols()));
  for (std::size_t i = 0; i < mu.rows(); ++i)
    for (std::size_t j = 0; j < mu.cols(); ++j) rows[i][perm[j]] = mu(i, j);
  std::sort(rows.begin(), rows.end(), std::greater<>());
  IntMatrix out(mu.rows(), mu.cols());
  for (std::size_t i = 0; i < mu.rows(); ++i)
    for (std::size_t j = 0; j < mu.cols(); ++j) out(i, j) = rows[i][j];
  return out;
}

/// Decides whether positive p1, p2 <= bound with mu1^T p1 = mu2^T p2 exist,
/// by tabulating mu2^T p2 in a generation-stamped table. Reusable across
/// instances with at most max_l0 columns and entries of mu^T p below limit.
class BoundedRfdOracle {
 public:
  BoundedRfdOracle(Int bound, std::size_t max_l0, Int limit) : bound_(bound), radix_(limit + 1) {
    std::size_t size = 1;
    for (std::size_t k = 0; k < max_l0; ++k) size *= static_cast<std::size_t>(radix_);
    stamp_.assign(size, 0);
  }

  bool exists(const IntMatrix& mu1, const IntMatrix& mu2) {
    if (++generation_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      generation_ = 1;
    }
    for_each_code(mu2, [&](std::size_t c) {
      stamp_[c] = generation_;
      return false;
    });
    return for_each_code(mu1, [&](std::size_t c) { return stamp_[c] == generation_; });
  }

 private:
  // Visits the packed mu^T p for every p in [1,bound]^rows; stops early when fn returns true.
  template <class Fn>
  bool for_each_code(const IntMatrix& mu, Fn&& fn) const {
    const std::size_t l = mu.rows(), l0 = mu.cols();
    std::vector<std::size_t> weight(l, 0);
    for (std::size_t i = 0; i < l; ++i) {
      std::size_t w = 0, scale = 1;
      for (std::size_t j = 0; j < l0; ++j, scale *= static_cast<std::size_t>(radix_))
        w += static_cast<std::size_t>(mu(i, j)) * scale;
      weight[i] = w;
    }
    std::vector<Int> p(l, 1);
    std::size_t code = std::accumulate(weight.begin(), weight.end(), std::size_t{0});
    for (;;) {
      if (fn(code)) return true;
      std::size_t k = l;
      while (k > 0 && p[k - 1] == bound_) {
        code -= static_cast<std::size_t>(bound_ - 1) * weight[k - 1];
        p[--k] = 1;
      }
      if (k == 0) return false;
      ++p[k - 1];
      code += weight[k - 1];
    }
  }

  Int bound_;
  Int radix_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

}  // namespace amalgam::oracle
