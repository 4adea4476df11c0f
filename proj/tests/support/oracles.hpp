#pragma once

// Brute-force reference implementations. They share no code with the
// library beyond the data types, and are only meant for small inputs.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "amalgam/algdata.hpp"
#include "amalgam/density.hpp"

namespace amalgam::oracle {

struct Witness {
  std::vector<Int> p1, p2;
};

inline bool next_in_box(std::vector<Int>& v, Int lo, Int hi) {
  for (std::size_t k = v.size(); k-- > 0;) {
    if (v[k] < hi) {
      ++v[k];
      return true;
    }
    v[k] = lo;
  }
  return false;
}

inline std::vector<Int> mu_t_p(const IntMatrix& mu, const std::vector<Int>& p) {
  std::vector<Int> d(mu.cols(), 0);
  for (std::size_t i = 0; i < mu.rows(); ++i)
    for (std::size_t j = 0; j < mu.cols(); ++j) d[j] += mu(i, j) * p[i];
  return d;
}

inline bool half_column_ok(const IntMatrix& mu, const std::vector<Int>& p, const std::vector<Int>& d) {
  for (std::size_t i = 0; i < mu.rows(); ++i)
    for (std::size_t j = 0; j < mu.cols(); ++j)
      if (mu(i, j) != 0 && 2 * p[i] > d[j]) return false;
  return true;
}

/// Any (p1, p2) in [1,bound]^{l1} x [1,bound]^{l2} with mu1^T p1 = mu2^T p2,
/// optionally also requiring the half-column bound on both sides.
inline std::optional<Witness> positive_witness(const AmalgamInstance& inst, Int bound, bool half_column = false) {
  std::map<std::vector<Int>, std::vector<std::vector<Int>>> second;
  std::vector<Int> p2(inst.mu2.rows(), 1);
  do {
    const auto d = mu_t_p(inst.mu2, p2);
    if (!half_column || half_column_ok(inst.mu2, p2, d)) second[d].push_back(p2);
  } while (next_in_box(p2, 1, bound));
  std::vector<Int> p1(inst.mu1.rows(), 1);
  do {
    const auto d = mu_t_p(inst.mu1, p1);
    if (half_column && !half_column_ok(inst.mu1, p1, d)) continue;
    auto it = second.find(d);
    if (it != second.end()) return Witness{p1, it->second.front()};
  } while (next_in_box(p1, 1, bound));
  return std::nullopt;
}

inline bool linked(const AmalgamInstance& inst, std::size_t a, std::size_t b) {
  for (const IntMatrix* mu : {&inst.mu1, &inst.mu2})
    for (std::size_t i = 0; i < mu->rows(); ++i)
      if ((*mu)(i, a) != 0 && (*mu)(i, b) != 0) return true;
  return false;
}

/// Lexicographically first order of the base blocks with consecutive blocks linked.
inline std::optional<std::vector<std::size_t>> first_linked_order(const AmalgamInstance& inst) {
  std::vector<std::size_t> order(inst.base.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  do {
    bool ok = true;
    for (std::size_t k = 0; k + 1 < order.size() && ok; ++k) ok = linked(inst, order[k], order[k + 1]);
    if (ok) return order;
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

/// Connected components by repeated relaxation of labels.
inline std::vector<std::set<std::size_t>> components(const AmalgamInstance& inst) {
  const std::size_t l0 = inst.base.size();
  std::vector<std::size_t> label(l0);
  for (std::size_t j = 0; j < l0; ++j) label[j] = j;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < l0; ++a)
      for (std::size_t b = 0; b < l0; ++b)
        if (linked(inst, a, b) && label[b] > label[a]) label[b] = label[a], changed = true;
  }
  std::map<std::size_t, std::set<std::size_t>> groups;
  for (std::size_t j = 0; j < l0; ++j) groups[label[j]].insert(j);
  std::vector<std::set<std::size_t>> out;
  for (auto& [k, g] : groups) out.push_back(g);
  return out;
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative integers.
inline std::vector<std::vector<Int>> compositions(Int total, std::size_t parts) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur(parts, 0);
  auto rec = [&](auto&& self, std::size_t k, Int left) -> void {
    if (k + 1 == parts) {
      cur[k] = left;
      out.push_back(cur);
      return;
    }
    for (Int v = 0; v <= left; ++v) {
      cur[k] = v;
      self(self, k + 1, left - v);
    }
  };
  rec(rec, 0, total);
  return out;
}

/// Column-multiset key of a profile, for comparison up to column order.
using ProfileKey = std::vector<std::vector<Int>>;

inline ProfileKey key_of(const SubalgebraProfile& p) {
  ProfileKey cols;
  for (std::size_t r = 0; r < p.m.size(); ++r) {
    std::vector<Int> c{p.m[r]};
    for (std::size_t i = 0; i < p.a.rows(); ++i) c.push_back(p.a(i, r));
    for (std::size_t i = 0; i < p.b.rows(); ++i) c.push_back(p.b(i, r));
    cols.push_back(c);
  }
  std::sort(cols.begin(), cols.end());
  return cols;
}

/// Every profile with l columns, by enumerating row compositions of a and b.
inline std::set<ProfileKey> profiles(const DensityScene& s, std::size_t l) {
  std::vector<std::vector<std::vector<Int>>> rows_a, rows_b;
  for (Int p : s.p1) rows_a.push_back(compositions(p, l));
  for (Int p : s.p2) rows_b.push_back(compositions(p, l));
  std::set<ProfileKey> out;
  auto each_matrix = [](const std::vector<std::vector<std::vector<Int>>>& rows, auto&& fn) {
    std::vector<std::size_t> pick(rows.size(), 0);
    for (;;) {
      std::vector<std::vector<Int>> m;
      for (std::size_t i = 0; i < rows.size(); ++i) m.push_back(rows[i][pick[i]]);
      fn(m);
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == rows[k].size()) pick[k++] = 0;
      if (k == pick.size()) return;
    }
  };
  each_matrix(rows_a, [&](const std::vector<std::vector<Int>>& a) {
    std::vector<Int> m(l, 0);
    for (std::size_t r = 0; r < l; ++r)
      for (std::size_t i = 0; i < a.size(); ++i) m[r] += s.m1[i] * a[i][r];
    if (std::count(m.begin(), m.end(), 0) != 0) return;
    each_matrix(rows_b, [&](const std::vector<std::vector<Int>>& b) {
      for (std::size_t r = 0; r < l; ++r) {
        Int mb = 0;
        for (std::size_t i = 0; i < b.size(); ++i) mb += s.m2[i] * b[i][r];
        if (mb != m[r]) return;
      }
      SubalgebraProfile p{IntMatrix(a.size(), l), IntMatrix(b.size(), l), m};
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t r = 0; r < l; ++r) p.a(i, r) = a[i][r];
      for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t r = 0; r < l; ++r) p.b(i, r) = b[i][r];
      out.insert(key_of(p));
    });
  });
  return out;
}

/// Complex dimension of the commutant of a family of real N x N matrices:
/// the null space of X -> (GX - XG) over all generators G.
inline Eigen::Index commutant_dimension(const std::vector<Eigen::MatrixXd>& gens, Eigen::Index n) {
  if (gens.empty()) return n * n;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd system(static_cast<Eigen::Index>(gens.size()) * n * n, n * n);
  Eigen::Index row = 0;
  for (const auto& g : gens) {
    // vec(GX - XG) = (I (x) G - G^T (x) I) vec(X), column-major vec.
    for (Eigen::Index c = 0; c < n * n; ++c) {
      Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
      x(c % n, c / n) = 1;
      const Eigen::MatrixXd y = g * x - x * g;
      system.block(row, c, n * n, 1) = Eigen::Map<const Eigen::VectorXd>(y.data(), n * n);
    }
    row += n * n;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  lu.setThreshold(1e-9);
  return n * n - lu.rank();
}

}  // namespace amalgam::oracle
