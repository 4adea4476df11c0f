#include "amalgam/density.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "amalgam/errors.hpp"
#include "amalgam/parallel.hpp"

namespace amalgam {

namespace {

Int sum_of_squares(const std::vector<Int>& v) {
  Int s = 0;
  for (Int x : v) s = checked_add(s, checked_mul(x, x));
  return s;
}

Int weighted_sum(const std::vector<Int>& m, const std::vector<Int>& p) {
  Int s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s = checked_add(s, checked_mul(m[i], p[i]));
  return s;
}

std::string join(const std::vector<Int>& v) { return to_string(std::span<const Int>(v)); }

}  // namespace

std::optional<std::string> check_scene(const DensityScene& s) {
  if (s.N < 1) return "N must be positive";
  if (s.p1.empty() || s.p2.empty()) return "each side needs at least one block";
  if (s.p1.size() != s.m1.size() || s.p2.size() != s.m2.size()) return "p and m lengths differ";
  for (const auto* v : {&s.p1, &s.m1, &s.p2, &s.m2})
    for (Int x : *v)
      if (x < 1) return "block sizes and multiplicities must be at least 1";
  if (weighted_sum(s.m1, s.p1) != s.N) return "sum m1(i) p1(i) differs from N";
  if (weighted_sum(s.m2, s.p2) != s.N) return "sum m2(i) p2(i) differs from N";
  return std::nullopt;
}

std::optional<std::string> check_profile(const DensityScene& scene, const SubalgebraProfile& pr) {
  if (auto e = check_scene(scene)) return "scene: " + *e;
  const std::size_t l = pr.size();
  if (l == 0) return "profile has no columns";
  if (pr.a.rows() != scene.p1.size() || pr.a.cols() != l) return "a has the wrong shape";
  if (pr.b.rows() != scene.p2.size() || pr.b.cols() != l) return "b has the wrong shape";
  for (const auto* mat : {&pr.a, &pr.b})
    for (std::size_t i = 0; i < mat->rows(); ++i)
      for (Int x : mat->row(i))
        if (x < 0) return "negative entry";
  for (std::size_t i = 0; i < scene.p1.size(); ++i)
    if (pr.a.row_sum(i) != scene.p1[i]) return "row " + std::to_string(i) + " of a does not sum to p1";
  for (std::size_t i = 0; i < scene.p2.size(); ++i)
    if (pr.b.row_sum(i) != scene.p2[i]) return "row " + std::to_string(i) + " of b does not sum to p2";
  for (std::size_t r = 0; r < l; ++r) {
    if (pr.a.column_is_zero(r)) return "column " + std::to_string(r) + " of a is zero";
    if (pr.b.column_is_zero(r)) return "column " + std::to_string(r) + " of b is zero";
    Int ma = 0, mb = 0;
    for (std::size_t i = 0; i < scene.p1.size(); ++i) ma += scene.m1[i] * pr.a(i, r);
    for (std::size_t i = 0; i < scene.p2.size(); ++i) mb += scene.m2[i] * pr.b(i, r);
    if (ma != pr.m[r] || mb != pr.m[r]) return "column " + std::to_string(r) + " breaks m consistency";
  }
  return std::nullopt;
}

Int d_value(const DensityScene& scene, const SubalgebraProfile& pr) {
  if (auto e = check_profile(scene, pr)) throw PreconditionError("inconsistent profile: " + *e);
  Int d = sum_of_squares(scene.p1) + sum_of_squares(scene.p2) + sum_of_squares(pr.m);
  for (const auto* mat : {&pr.a, &pr.b})
    for (std::size_t i = 0; i < mat->rows(); ++i)
      for (Int x : mat->row(i)) d -= x * x;
  return d;
}

SubalgebraProfile merge_columns(const SubalgebraProfile& pr, std::size_t r, std::size_t s) {
  const std::size_t l = pr.size();
  if (r == s) throw PreconditionError("merge_columns needs two distinct columns");
  if (r >= l || s >= l) throw PreconditionError("merge_columns index out of range");
  const std::size_t keep = std::min(r, s), drop = std::max(r, s);
  auto merge = [&](const IntMatrix& in) {
    IntMatrix out = in;
    for (std::size_t i = 0; i < in.rows(); ++i) out(i, keep) = in(i, r) + in(i, s);
    return out.without_column(drop);
  };
  SubalgebraProfile out{merge(pr.a), merge(pr.b), pr.m};
  out.m[keep] = pr.m[r] + pr.m[s];
  out.m.erase(out.m.begin() + static_cast<std::ptrdiff_t>(drop));
  return out;
}

Int merge_delta(const SubalgebraProfile& pr, std::size_t r, std::size_t s) {
  const std::size_t l = pr.size();
  if (r == s) throw PreconditionError("merge_delta needs two distinct columns");
  if (r >= l || s >= l) throw PreconditionError("merge_delta index out of range");
  Int v = pr.m[r] * pr.m[s];
  for (std::size_t i = 0; i < pr.a.rows(); ++i) v -= pr.a(i, r) * pr.a(i, s);
  for (std::size_t i = 0; i < pr.b.rows(); ++i) v -= pr.b(i, r) * pr.b(i, s);
  return 2 * v;
}

std::string to_string(DensityHypothesis h) {
  switch (h) {
    case DensityHypothesis::DimensionInequality: return "dimension_inequality";
    case DensityHypothesis::BlockBound: return "block_bound";
    case DensityHypothesis::MultiplicityTwo: return "multiplicity_two";
  }
  return "unknown";
}

DensityCheck general_position_check(const DensityScene& scene) {
  if (auto e = check_scene(scene)) throw PreconditionError("invalid scene: " + *e);
  DensityCheck out;
  if (sum_of_squares(scene.p1) + sum_of_squares(scene.p2) >= checked_mul(scene.N, scene.N))
    out.failed.push_back(DensityHypothesis::DimensionInequality);
  const Int biggest = std::max(*std::max_element(scene.p1.begin(), scene.p1.end()),
                               *std::max_element(scene.p2.begin(), scene.p2.end()));
  if (2 * biggest > scene.N) out.failed.push_back(DensityHypothesis::BlockBound);
  out.dense = out.failed.empty();
  return out;
}

DensityCheck multiplicity_two_check(const DensityScene& scene) {
  if (auto e = check_scene(scene)) throw PreconditionError("invalid scene: " + *e);
  DensityCheck out;
  auto at_least_two = [](const std::vector<Int>& m) {
    return std::all_of(m.begin(), m.end(), [](Int x) { return x >= 2; });
  };
  if (!at_least_two(scene.m1) || !at_least_two(scene.m2)) out.failed.push_back(DensityHypothesis::MultiplicityTwo);
  out.dense = out.failed.empty();
  return out;
}

namespace {

struct Column {
  Int m;
  std::vector<Int> a;
  std::vector<Int> b;
  auto key() const { return std::tie(m, a, b); }
};

// Calls fn(v) for every v with 0 <= v(i) <= cap(i).
template <class Fn>
void for_each_box_point(const std::vector<Int>& cap, Fn&& fn) {
  std::vector<Int> v(cap.size(), 0);
  for (;;) {
    fn(v);
    std::size_t k = 0;
    while (k < v.size() && v[k] == cap[k]) v[k++] = 0;
    if (k == v.size()) return;
    ++v[k];
  }
}

std::vector<Column> candidate_columns(const DensityScene& s) {
  // Index b columns by their m value to pair them with a columns.
  std::vector<std::vector<std::vector<Int>>> b_by_m(static_cast<std::size_t>(s.N) + 1);
  for_each_box_point(s.p2, [&](const std::vector<Int>& b) {
    const Int m = weighted_sum(s.m2, b);
    if (m >= 1 && m <= s.N) b_by_m[static_cast<std::size_t>(m)].push_back(b);
  });
  std::vector<Column> cols;
  for_each_box_point(s.p1, [&](const std::vector<Int>& a) {
    const Int m = weighted_sum(s.m1, a);
    if (m < 1 || m > s.N) return;
    for (const auto& b : b_by_m[static_cast<std::size_t>(m)]) cols.push_back({m, a, b});
  });
  std::sort(cols.begin(), cols.end(), [](const Column& x, const Column& y) { return x.key() < y.key(); });
  return cols;
}

struct ProfileSearch {
  const DensityScene& scene;
  const std::vector<Column>& cols;
  const ProfileVisitor& visit;
  std::size_t l;
  std::vector<Int> rem1, rem2;
  Int rem_n;
  std::vector<std::size_t> chosen;

  bool fits(const Column& c) const {
    for (std::size_t i = 0; i < c.a.size(); ++i)
      if (c.a[i] > rem1[i]) return false;
    for (std::size_t i = 0; i < c.b.size(); ++i)
      if (c.b[i] > rem2[i]) return false;
    return true;
  }

  void apply(const Column& c, Int sign) {
    for (std::size_t i = 0; i < c.a.size(); ++i) rem1[i] -= sign * c.a[i];
    for (std::size_t i = 0; i < c.b.size(); ++i) rem2[i] -= sign * c.b[i];
    rem_n -= sign * c.m;
  }

  void emit() {
    SubalgebraProfile p{IntMatrix(scene.p1.size(), l), IntMatrix(scene.p2.size(), l), {}};
    for (std::size_t r = 0; r < l; ++r) {
      const Column& c = cols[chosen[r]];
      for (std::size_t i = 0; i < c.a.size(); ++i) p.a(i, r) = c.a[i];
      for (std::size_t i = 0; i < c.b.size(); ++i) p.b(i, r) = c.b[i];
      p.m.push_back(c.m);
    }
    visit(p);
  }

  void run(std::size_t start) {
    const std::size_t left = l - chosen.size();
    if (left == 0) {
      if (rem_n == 0) emit();
      return;
    }
    for (std::size_t idx = start; idx < cols.size(); ++idx) {
      const Column& c = cols[idx];
      if (c.m * static_cast<Int>(left) > rem_n) break;
      if (left == 1 && c.m != rem_n) continue;
      if (!fits(c)) continue;
      chosen.push_back(idx);
      apply(c, 1);
      run(idx);
      apply(c, -1);
      chosen.pop_back();
    }
  }
};

}  // namespace

void for_each_profile(const DensityScene& scene, std::size_t l, const ProfileVisitor& visit) {
  if (auto e = check_scene(scene)) throw PreconditionError("invalid scene: " + *e);
  if (l < 2 || static_cast<Int>(l) > scene.N) throw PreconditionError("profile size must satisfy 2 <= l <= N");
  const auto cols = candidate_columns(scene);
  ProfileSearch search{scene, cols, visit, l, scene.p1, scene.p2, scene.N, {}};
  search.run(0);
}

std::vector<SubalgebraProfile> enumerate_profiles(const DensityScene& scene, std::size_t l) {
  std::vector<SubalgebraProfile> out;
  for_each_profile(scene, l, [&](const SubalgebraProfile& p) { out.push_back(p); });
  return out;
}

namespace {

using Side = std::vector<std::pair<Int, Int>>;  // (p, m), nonincreasing

void extend_side(Int remaining, std::size_t max_blocks, std::pair<Int, Int> ceiling, Side& cur,
                 std::vector<Side>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  if (cur.size() == max_blocks) return;
  for (Int p = std::min(remaining, ceiling.first); p >= 1; --p) {
    const Int m_cap = p == ceiling.first ? ceiling.second : remaining;
    for (Int m = std::min(m_cap, remaining / p); m >= 1; --m) {
      cur.emplace_back(p, m);
      extend_side(remaining - p * m, max_blocks, {p, m}, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace

std::vector<DensityScene> enumerate_scenes(Int N, std::size_t max_blocks) {
  std::vector<Side> sides;
  Side cur;
  extend_side(N, max_blocks, {N, N}, cur, sides);
  std::vector<DensityScene> out;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    for (std::size_t j = i; j < sides.size(); ++j) {
      DensityScene s{N, {}, {}, {}, {}};
      for (auto [p, m] : sides[i]) s.p1.push_back(p), s.m1.push_back(m);
      for (auto [p, m] : sides[j]) s.p2.push_back(p), s.m2.push_back(m);
      out.push_back(std::move(s));
    }
  }
  return out;
}

namespace {

void merge_into(ExhaustiveReport& into, const ExhaustiveReport& part) {
  into.scenes_total += part.scenes_total;
  into.scenes_checked += part.scenes_checked;
  into.scenes_skipped += part.scenes_skipped;
  into.profiles_checked += part.profiles_checked;
  into.merge_identity_checks += part.merge_identity_checks;
  into.merge_identity_failures += part.merge_identity_failures;
  into.bound_counterexamples += part.bound_counterexamples;
  into.monotonicity_counterexamples += part.monotonicity_counterexamples;
  for (const auto& f : part.failures)
    if (into.failures.size() < 20) into.failures.push_back(f);
}

ExhaustiveReport check_scene_profiles(const DensityScene& scene, bool two_columns_only) {
  ExhaustiveReport r;
  r.scenes_total = 1;
  const bool hypotheses = general_position_check(scene).dense;
  if (hypotheses) r.scenes_checked = 1; else r.scenes_skipped = 1;
  if (two_columns_only && !hypotheses) return r;
  const Int n2 = scene.N * scene.N;
  const std::size_t max_l = two_columns_only ? std::min<std::size_t>(2, scene.N) : static_cast<std::size_t>(scene.N);
  auto note = [&](const std::string& what, const SubalgebraProfile& p) {
    if (r.failures.size() < 20) r.failures.push_back(what + " at " + to_string(scene) + " " + to_string(p));
  };
  for (std::size_t l = 2; l <= max_l; ++l) {
    for_each_profile(scene, l, [&](const SubalgebraProfile& p) {
      const Int d = d_value(scene, p);
      if (hypotheses) {
        ++r.profiles_checked;
        if (d >= n2) {
          ++r.bound_counterexamples;
          note("d >= N^2", p);
        }
      }
      if (two_columns_only || l < 3) return;
      bool some_nonnegative = false;
      for (std::size_t a = 0; a < l; ++a) {
        for (std::size_t b = a + 1; b < l; ++b) {
          const Int delta = merge_delta(p, a, b);
          ++r.merge_identity_checks;
          if (d_value(scene, merge_columns(p, a, b)) - d != delta || merge_delta(p, b, a) != delta) {
            ++r.merge_identity_failures;
            note("merge identity", p);
          }
          some_nonnegative = some_nonnegative || delta >= 0;
        }
      }
      if (hypotheses && !some_nonnegative) {
        ++r.monotonicity_counterexamples;
        note("no nonnegative merge", p);
      }
    });
  }
  return r;
}

ExhaustiveReport run_exhaustive(Int n_max, std::size_t max_blocks, std::size_t threads, bool two_columns_only) {
  if (n_max < 2) throw PreconditionError("n_max must be at least 2");
  std::vector<DensityScene> scenes;
  for (Int n = 2; n <= n_max; ++n) {
    auto more = enumerate_scenes(n, max_blocks);
    scenes.insert(scenes.end(), more.begin(), more.end());
  }
  ExhaustiveReport total;
  total.n_max = n_max;
  std::mutex mutex;
  parallel_for(scenes.size(), threads, [&](std::size_t i) {
    const auto part = check_scene_profiles(scenes[i], two_columns_only);
    std::lock_guard lock(mutex);
    merge_into(total, part);
  });
  return total;
}

}  // namespace

ExhaustiveReport verify_general_position_exhaustive(Int n_max, std::size_t max_blocks, std::size_t threads) {
  return run_exhaustive(n_max, max_blocks, threads, false);
}

ExhaustiveReport verify_two_column_bound(Int n_max, std::size_t max_blocks, std::size_t threads) {
  return run_exhaustive(n_max, max_blocks, threads, true);
}

std::string to_string(const DensityScene& s) {
  std::ostringstream os;
  os << "{N=" << s.N << ", p1=" << join(s.p1) << ", m1=" << join(s.m1) << ", p2=" << join(s.p2)
     << ", m2=" << join(s.m2) << "}";
  return os.str();
}

std::string to_string(const SubalgebraProfile& p) {
  std::ostringstream os;
  os << "{a=" << to_string(p.a) << ", b=" << to_string(p.b) << ", m=" << join(p.m) << "}";
  return os.str();
}

}  // namespace amalgam
