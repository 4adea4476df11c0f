#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "amalgam/matrix.hpp"

namespace amalgam {

/// Two subalgebras B1, B2 of M_N given by block sizes and embedding
/// multiplicities: sum_i m1(i) p1(i) = N = sum_i m2(i) p2(i).
struct DensityScene {
  Int N = 0;
  std::vector<Int> p1;
  std::vector<Int> m1;
  std::vector<Int> p2;
  std::vector<Int> m2;

  friend bool operator==(const DensityScene&, const DensityScene&) = default;
};

/// Empty when the scene is well formed, otherwise a description of the defect.
std::optional<std::string> check_scene(const DensityScene& scene);

/// Multiplicity data of an abelian C = C^l sitting in B1 (matrix a, l1 x l)
/// and in a unitary conjugate of B2 (matrix b, l2 x l); m(r) is the
/// multiplicity of the r-th minimal projection of C in M_N.
struct SubalgebraProfile {
  IntMatrix a;
  IntMatrix b;
  std::vector<Int> m;

  std::size_t size() const noexcept { return m.size(); }
  friend bool operator==(const SubalgebraProfile&, const SubalgebraProfile&) = default;
};

/// Empty when the profile is consistent with the scene. Profiles with a
/// single column are accepted here so the trivial-subalgebra anchor can be
/// evaluated; enumeration only produces l >= 2.
std::optional<std::string> check_profile(const DensityScene& scene, const SubalgebraProfile& profile);

/// sum p1^2 - sum a^2 + sum p2^2 - sum b^2 + sum m^2. Throws PreconditionError
/// on an inconsistent profile.
Int d_value(const DensityScene& scene, const SubalgebraProfile& profile);

/// Sums columns r and s (0-based) into position min(r, s).
SubalgebraProfile merge_columns(const SubalgebraProfile& profile, std::size_t r, std::size_t s);

/// 2 (m(r) m(s) - sum_i a(i,r) a(i,s) - sum_i b(i,r) b(i,s)), which equals
/// d_value(merge_columns(P, r, s)) - d_value(P).
Int merge_delta(const SubalgebraProfile& profile, std::size_t r, std::size_t s);

enum class DensityHypothesis {
  DimensionInequality,  // sum p1^2 + sum p2^2 < N^2
  BlockBound,           // every block size <= N/2
  MultiplicityTwo,      // every m_s(i) >= 2
};

std::string to_string(DensityHypothesis h);

struct DensityCheck {
  bool dense = false;
  std::vector<DensityHypothesis> failed;
};

/// Dense iff sum p1^2 + sum p2^2 < N^2 and no block exceeds N/2. The bound is
/// N/2 rather than N^2/2: the half-size bound is what the merging argument
/// actually consumes, and N^2/2 would admit B1 = M_N.
DensityCheck general_position_check(const DensityScene& scene);

/// Dense iff every embedding multiplicity on both sides is at least 2. This
/// implies the hypotheses of general_position_check.
DensityCheck multiplicity_two_check(const DensityScene& scene);

using ProfileVisitor = std::function<void(const SubalgebraProfile&)>;

/// Visits every profile with exactly l columns once up to column order.
/// Columns come out sorted by (m, a column, b column). Throws
/// PreconditionError unless 2 <= l <= N.
void for_each_profile(const DensityScene& scene, std::size_t l, const ProfileVisitor& visit);
std::vector<SubalgebraProfile> enumerate_profiles(const DensityScene& scene, std::size_t l);

/// Every scene with the given N whose sides have between 1 and max_blocks
/// blocks, each side a sorted multiset of (p, m) pairs, unordered side pairs.
std::vector<DensityScene> enumerate_scenes(Int N, std::size_t max_blocks = 3);

struct ExhaustiveReport {
  Int n_max = 0;
  std::size_t scenes_total = 0;
  std::size_t scenes_checked = 0;  // satisfy general_position_check
  std::size_t scenes_skipped = 0;
  std::size_t profiles_checked = 0;      // d < N^2 tested
  std::size_t merge_identity_checks = 0; // all scenes, l >= 3, all pairs
  std::size_t merge_identity_failures = 0;
  std::size_t bound_counterexamples = 0;        // d >= N^2 under the hypotheses
  std::size_t monotonicity_counterexamples = 0; // l >= 3 with every merge_delta < 0
  std::vector<std::string> failures;            // first few, human readable

  bool clean() const {
    return merge_identity_failures == 0 && bound_counterexamples == 0 && monotonicity_counterexamples == 0;
  }
};

/// For 2 <= N <= n_max: checks d < N^2 on every profile of every scene that
/// passes general_position_check, checks the merge identity on every profile
/// with l >= 3 of every scene, and that some pair of columns has
/// merge_delta >= 0 under the hypotheses. Runs scenes on `threads` workers
/// (0 = hardware concurrency).
ExhaustiveReport verify_general_position_exhaustive(Int n_max, std::size_t max_blocks = 3,
                                                     std::size_t threads = 0);

/// The two-column case alone: d < N^2 for every l = 2 profile of every scene
/// satisfying the hypotheses, 2 <= N <= n_max.
ExhaustiveReport verify_two_column_bound(Int n_max, std::size_t max_blocks = 3, std::size_t threads = 0);

std::string to_string(const DensityScene& scene);
std::string to_string(const SubalgebraProfile& profile);

}  // namespace amalgam
