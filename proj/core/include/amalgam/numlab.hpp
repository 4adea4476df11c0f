#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "amalgam/algdata.hpp"
#include "amalgam/density.hpp"

namespace amalgam {

/// A finite-dimensional representation of A1 *_D A2 described by block
/// multiplicities: A_s block i appears q_s(i) times. The base must be abelian
/// (compress first) and mu1^T q1 = mu2^T q2.
struct RepSpec {
  AmalgamInstance instance;
  std::vector<Int> q1;
  std::vector<Int> q2;
};

std::optional<std::string> check_repspec(const RepSpec& rep);
void require_repspec(const RepSpec& rep);

/// d(j) = sum_i mu1(i,j) q1(i).
std::vector<Int> base_block_sizes(const RepSpec& rep);
/// N = sum_j d(j).
Int ambient_size(const RepSpec& rep);

/// Commutants B_s = pi(A_s)' and B0 = pi(D)' as abstract block algebras.
struct CommutantStructure {
  std::vector<Int> b0_blocks;  // d(j)
  std::vector<Int> b1_blocks;  // q1(i)
  std::vector<Int> b2_blocks;  // q2(i)
  /// Multiplicity of B_s's block i inside B0's block j: the transpose of mu_s.
  IntMatrix b1_in_b0;
  IntMatrix b2_in_b0;
  Int dim_b0 = 0;
  Int dim_b1 = 0;
  Int dim_b2 = 0;
  /// For each base block j: N = d(j), B_s blocks {q_s(i) : mu_s(i,j) != 0}
  /// with multiplicities mu_s(i,j).
  std::vector<DensityScene> block_scenes;
};

CommutantStructure commutant_structure(const RepSpec& rep);

struct CompletionPlan {
  std::vector<Int> hat_q1;
  std::vector<Int> hat_q2;
  /// "rank_one" or "m2_abelian_family".
  std::string method;
  std::string target;
  /// Rank-one branch: every block ends at k q_s^unif.
  Int k = 0;
  /// Family branch, indexed by base block: lcm q(j), level Q(j) q(j).
  Int Q = 0;
  std::vector<Int> lcm;
  std::vector<Int> levels;
  Int p_hat = 0;
};

/// Completes rep to a uniform one (all multiplicities equal per side for
/// rank-one matrices) or, for M2 over C^2 against an abelian factor, to the
/// balanced one with equal multiplicity per base block on the abelian side.
/// All completion multiplicities are >= 1. Throws PreconditionError for other
/// shapes.
CompletionPlan uniform_completion(const RepSpec& rep);

/// rep with q_s replaced by q_s + hat_q_s.
RepSpec apply_completion(const RepSpec& rep, const CompletionPlan& plan);

/// Complex matrix as a pair of real matrices.
struct CMatrix {
  Eigen::MatrixXd re;
  Eigen::MatrixXd im;

  static CMatrix identity(Eigen::Index n);
  static CMatrix real(Eigen::MatrixXd m);
  Eigen::Index rows() const { return re.rows(); }
  CMatrix adjoint() const;
  CMatrix operator*(const CMatrix& other) const;
  CMatrix operator-(const CMatrix& other) const;
  /// Frobenius norm.
  double norm() const;
};

/// Concrete matrices on C^N. Slots are ordered by base block, then per side
/// by (block i of A_s, copy t < mu_s(i,j), repetition r < q_s(i)); both
/// sides therefore induce the same base projections.
struct RepMatrices {
  Int N = 0;
  std::vector<Int> d;
  std::vector<Int> offsets;
  std::vector<Eigen::MatrixXd> base_projections;
  /// Matrix units E^{(i)}_{ab} of every block of A_s.
  std::vector<Eigen::MatrixXd> generators1;
  std::vector<Eigen::MatrixXd> generators2;
  /// Basis F^{(i)}_{r r'} of the commutant B_s, dim = sum q_s(i)^2.
  std::vector<Eigen::MatrixXd> commutant1;
  std::vector<Eigen::MatrixXd> commutant2;
};

RepMatrices build_rep_matrices(const RepSpec& rep);

enum class SamplingMode { Haar, NearIdentity };

/// Block-diagonal unitary with one independent block of size d(j) per base
/// block. Haar blocks come from Gram-Schmidt on a complex Gaussian matrix;
/// near-identity blocks are exp(i epsilon H) with H Hermitian Gaussian scaled
/// to spectral radius 1. Deterministic in seed.
CMatrix sample_base_unitary(const std::vector<Int>& d, SamplingMode mode, double epsilon, std::uint64_t seed);

struct IntersectionResult {
  Int dimension = 0;
  bool unstable = false;
  double threshold = 0;
  std::vector<double> singular_values;
};

inline constexpr double kDefaultRankTolerance = 1e-8;

/// Complex dimension of B1 ∩ u B2 u*, as dim B1 + dim B2 minus the numerical
/// rank of the stacked bases. Singular values below tol * sigma_max count as
/// zero; a value within a factor 10 of the threshold marks the result
/// unstable. Throws PreconditionError when u is not unitary or does not
/// commute with the base projections (tolerance 1e-10).
IntersectionResult intersection_dimension(const RepMatrices& mats, const CMatrix& u,
                                          double tol = kDefaultRankTolerance);

/// dim(B1 ∩ B2) at u = I by exact rational rank of the 0/1 bases.
Int exact_intersection_dimension_at_identity(const RepMatrices& mats);

struct DpiOptions {
  std::size_t trials = 100;
  double epsilon = 0.3;
  std::uint64_t seed = 20240101;
  double tol = kDefaultRankTolerance;
  SamplingMode mode = SamplingMode::NearIdentity;
  std::size_t threads = 0;
};

struct DpiTrial {
  std::size_t index = 0;
  Int dimension = 0;
  bool unstable = false;
};

struct DpiReport {
  RepSpec start;
  RepSpec rep;
  /// "rank_one", "m2_abelian_family" or "witness_doubled".
  std::string completion_method;
  Int N = 0;
  std::vector<Int> d;
  DpiOptions options;
  std::vector<DpiTrial> trials;
  double fraction_trivial = 0;
  std::size_t unstable_count = 0;
  Int exact_identity_dimension = 0;
  /// sum q1^2 + sum q2^2 against sum d^2 (dim U(B1) + dim U(B2) < dim U(B0)).
  Int commutant_dimension_sum = 0;
  Int base_commutant_dimension = 0;
  bool strict_dimension_inequality = false;
  std::vector<DensityCheck> block_general_position;
  std::vector<DensityCheck> block_multiplicity_two;
};

/// Builds the completed representation of compress(instance) starting from
/// its RFD witness, samples unitaries of pi(D)' and records the intersection
/// dimension of each trial. Heuristic: samples can suggest but never certify
/// density. Throws PreconditionError when the instance is not RFD.
DpiReport dpi_experiment(const AmalgamInstance& instance, const DpiOptions& options = {});

}  // namespace amalgam
