#include "amalgam/numlab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "amalgam/exact.hpp"
#include "amalgam/feasibility.hpp"
#include "amalgam/parallel.hpp"
#include "amalgam/reduction.hpp"

namespace amalgam {

std::optional<std::string> check_repspec(const RepSpec& rep) {
  const auto& inst = rep.instance;
  if (!is_valid(inst)) return "instance is invalid";
  if (!inst.base.is_abelian()) return "base algebra must be abelian (compress first)";
  if (rep.q1.size() != inst.mu1.rows() || rep.q2.size() != inst.mu2.rows()) return "q has the wrong length";
  for (const auto* q : {&rep.q1, &rep.q2})
    for (Int x : *q)
      if (x < 1) return "multiplicities must be at least 1";
  if (inst.mu1.transpose_times(rep.q1) != inst.mu2.transpose_times(rep.q2))
    return "mu1^T q1 differs from mu2^T q2";
  for (std::size_t i = 0; i < inst.mu1.rows(); ++i)
    if (inst.a1[i] != inst.mu1.row_sum(i)) return "A1 block sizes are not the row sums of mu1";
  for (std::size_t i = 0; i < inst.mu2.rows(); ++i)
    if (inst.a2[i] != inst.mu2.row_sum(i)) return "A2 block sizes are not the row sums of mu2";
  return std::nullopt;
}

void require_repspec(const RepSpec& rep) {
  if (auto e = check_repspec(rep)) throw PreconditionError("invalid representation: " + *e);
}

std::vector<Int> base_block_sizes(const RepSpec& rep) {
  require_repspec(rep);
  return rep.instance.mu1.transpose_times(rep.q1);
}

Int ambient_size(const RepSpec& rep) {
  const auto d = base_block_sizes(rep);
  return std::accumulate(d.begin(), d.end(), Int{0}, checked_add);
}

CommutantStructure commutant_structure(const RepSpec& rep) {
  const auto d = base_block_sizes(rep);
  const auto& mu1 = rep.instance.mu1;
  const auto& mu2 = rep.instance.mu2;
  CommutantStructure out;
  out.b0_blocks = d;
  out.b1_blocks = rep.q1;
  out.b2_blocks = rep.q2;
  out.b1_in_b0 = mu1.transpose();
  out.b2_in_b0 = mu2.transpose();
  auto squares = [](const std::vector<Int>& v) {
    Int s = 0;
    for (Int x : v) s = checked_add(s, checked_mul(x, x));
    return s;
  };
  out.dim_b0 = squares(d);
  out.dim_b1 = squares(rep.q1);
  out.dim_b2 = squares(rep.q2);
  for (std::size_t j = 0; j < d.size(); ++j) {
    DensityScene s{d[j], {}, {}, {}, {}};
    for (std::size_t i = 0; i < mu1.rows(); ++i)
      if (mu1(i, j) != 0) s.p1.push_back(rep.q1[i]), s.m1.push_back(mu1(i, j));
    for (std::size_t i = 0; i < mu2.rows(); ++i)
      if (mu2(i, j) != 0) s.p2.push_back(rep.q2[i]), s.m2.push_back(mu2(i, j));
    out.block_scenes.push_back(std::move(s));
  }
  return out;
}

namespace {

Int max_of(const std::vector<Int>& v) { return *std::max_element(v.begin(), v.end()); }

void check_completion(const RepSpec& rep, const CompletionPlan& plan) {
  for (const auto* h : {&plan.hat_q1, &plan.hat_q2})
    for (Int x : *h)
      if (x < 1) throw InvariantBreach("completion multiplicity below 1");
  if (auto e = check_repspec(apply_completion(rep, plan))) throw InvariantBreach("completed representation: " + *e);
}

CompletionPlan rank_one_completion(const RepSpec& rep) {
  const Uniformizers u = rank_one_uniformizers(rep.instance);
  const Int current = std::max(max_of(rep.q1), max_of(rep.q2));
  const Int k = current / std::min(u.q1, u.q2) + 1;
  CompletionPlan plan;
  plan.method = "rank_one";
  plan.k = k;
  for (Int q : rep.q1) plan.hat_q1.push_back(k * u.q1 - q);
  for (Int q : rep.q2) plan.hat_q2.push_back(k * u.q2 - q);
  plan.target = "A1 blocks at multiplicity " + std::to_string(k * u.q1) + ", A2 blocks at " +
                std::to_string(k * u.q2);
  return plan;
}

// A1 = M2 over C^2 via [[1,1]]; A2 abelian with rows [1,0] and [0,1].
bool is_family_orientation(const AmalgamInstance& inst) {
  if (inst.base.size() != 2 || !(inst.mu1 == IntMatrix{{1, 1}})) return false;
  Int a = 0, b = 0;
  for (std::size_t i = 0; i < inst.mu2.rows(); ++i) {
    const Int x = inst.mu2(i, 0), y = inst.mu2(i, 1);
    if (x == 1 && y == 0) ++a;
    else if (x == 0 && y == 1) ++b;
    else return false;
  }
  return a > 0 && b > 0;
}

CompletionPlan family_completion(const RepSpec& rep) {
  const auto& mu2 = rep.instance.mu2;
  const Int p = rep.q1[0];
  std::array<Int, 2> lcm{1, 1}, count{0, 0}, biggest{0, 0};
  for (std::size_t i = 0; i < mu2.rows(); ++i) {
    const std::size_t j = mu2(i, 0) == 1 ? 0 : 1;
    lcm[j] = std::lcm(lcm[j], rep.q2[i]);
    ++count[j];
    biggest[j] = std::max(biggest[j], rep.q2[i]);
  }
  // Q(1) = Q q(2) N2(2), Q(2) = Q q(1) N2(1); hats are Q(j) q(j) - q_i(j).
  const Int unit = checked_mul(checked_mul(lcm[0], lcm[1]), checked_mul(count[0], count[1]));
  Int Q = 1;
  auto level = [&](std::size_t j, Int q) { return checked_mul(checked_mul(q, lcm[1 - j] * count[1 - j]), lcm[j]); };
  while (level(0, Q) <= biggest[0] || level(1, Q) <= biggest[1] || checked_mul(Q, unit) <= p) ++Q;

  CompletionPlan plan;
  plan.method = "m2_abelian_family";
  plan.Q = Q;
  plan.lcm = {lcm[0], lcm[1]};
  plan.levels = {level(0, Q), level(1, Q)};
  plan.p_hat = Q * unit - p;
  plan.hat_q1 = {plan.p_hat};
  for (std::size_t i = 0; i < mu2.rows(); ++i) {
    const std::size_t j = mu2(i, 0) == 1 ? 0 : 1;
    plan.hat_q2.push_back(plan.levels[j] - rep.q2[i]);
  }
  plan.target = "abelian blocks at " + std::to_string(plan.levels[0]) + " / " + std::to_string(plan.levels[1]) +
                ", M2 at " + std::to_string(Q * unit);
  return plan;
}

}  // namespace

CompletionPlan uniform_completion(const RepSpec& rep) {
  require_repspec(rep);
  const auto& inst = rep.instance;
  CompletionPlan plan;
  if (exact::rank(inst.mu1) == 1 && exact::rank(inst.mu2) == 1) {
    plan = rank_one_completion(rep);
  } else if (is_family_orientation(inst)) {
    plan = family_completion(rep);
  } else if (is_family_orientation(inst.swapped())) {
    plan = family_completion({inst.swapped(), rep.q2, rep.q1});
    std::swap(plan.hat_q1, plan.hat_q2);
  } else {
    throw PreconditionError("uniform completion needs rank-one multiplicities or M2 over C^2 with an abelian factor");
  }
  check_completion(rep, plan);
  return plan;
}

RepSpec apply_completion(const RepSpec& rep, const CompletionPlan& plan) {
  RepSpec out = rep;
  if (plan.hat_q1.size() != rep.q1.size() || plan.hat_q2.size() != rep.q2.size())
    throw PreconditionError("completion plan does not match the representation");
  for (std::size_t i = 0; i < out.q1.size(); ++i) out.q1[i] = checked_add(out.q1[i], plan.hat_q1[i]);
  for (std::size_t i = 0; i < out.q2.size(); ++i) out.q2[i] = checked_add(out.q2[i], plan.hat_q2[i]);
  return out;
}

CMatrix CMatrix::identity(Eigen::Index n) {
  return {Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Zero(n, n)};
}

CMatrix CMatrix::real(Eigen::MatrixXd m) {
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  return {std::move(m), std::move(zero)};
}

CMatrix CMatrix::adjoint() const { return {re.transpose(), -im.transpose()}; }

CMatrix CMatrix::operator*(const CMatrix& o) const {
  return {re * o.re - im * o.im, re * o.im + im * o.re};
}

CMatrix CMatrix::operator-(const CMatrix& o) const { return {re - o.re, im - o.im}; }

double CMatrix::norm() const { return std::sqrt(re.squaredNorm() + im.squaredNorm()); }

namespace {

struct SlotMap {
  std::vector<Int> offsets;
  // inner[i][j]: first slot of A-block i inside base block j, relative to offsets[j].
  std::vector<std::vector<Int>> inner;
  const MultiplicityMatrix& mu;
  const std::vector<Int>& q;

  SlotMap(const MultiplicityMatrix& m, const std::vector<Int>& mult, std::vector<Int> offs)
      : offsets(std::move(offs)), inner(m.rows(), std::vector<Int>(m.cols(), 0)), mu(m), q(mult) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Int acc = 0;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        inner[i][j] = acc;
        acc += m(i, j) * q[i];
      }
    }
  }

  Int slot(std::size_t i, std::size_t j, Int t, Int r) const { return offsets[j] + inner[i][j] + t * q[i] + r; }

  // (j, t) pairs indexing the basis of block i of A, ordered by j then t.
  std::vector<std::pair<std::size_t, Int>> block_basis(std::size_t i) const {
    std::vector<std::pair<std::size_t, Int>> out;
    for (std::size_t j = 0; j < mu.cols(); ++j)
      for (Int t = 0; t < mu(i, j); ++t) out.emplace_back(j, t);
    return out;
  }
};

void fill_side(const SlotMap& map, Int N, std::vector<Eigen::MatrixXd>& generators,
               std::vector<Eigen::MatrixXd>& commutant) {
  for (std::size_t i = 0; i < map.mu.rows(); ++i) {
    const auto basis = map.block_basis(i);
    const Int q = map.q[i];
    for (const auto& [ja, ta] : basis) {
      for (const auto& [jb, tb] : basis) {
        Eigen::MatrixXd e = Eigen::MatrixXd::Zero(N, N);
        for (Int r = 0; r < q; ++r) e(map.slot(i, ja, ta, r), map.slot(i, jb, tb, r)) = 1;
        generators.push_back(std::move(e));
      }
    }
    for (Int r = 0; r < q; ++r) {
      for (Int r2 = 0; r2 < q; ++r2) {
        Eigen::MatrixXd f = Eigen::MatrixXd::Zero(N, N);
        for (const auto& [j, t] : basis) f(map.slot(i, j, t, r), map.slot(i, j, t, r2)) = 1;
        commutant.push_back(std::move(f));
      }
    }
  }
}

}  // namespace

RepMatrices build_rep_matrices(const RepSpec& rep) {
  RepMatrices out;
  out.d = base_block_sizes(rep);
  out.N = std::accumulate(out.d.begin(), out.d.end(), Int{0});
  out.offsets.resize(out.d.size());
  std::exclusive_scan(out.d.begin(), out.d.end(), out.offsets.begin(), Int{0});
  for (std::size_t j = 0; j < out.d.size(); ++j) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(out.N, out.N);
    for (Int k = 0; k < out.d[j]; ++k) p(out.offsets[j] + k, out.offsets[j] + k) = 1;
    out.base_projections.push_back(std::move(p));
  }
  fill_side(SlotMap(rep.instance.mu1, rep.q1, out.offsets), out.N, out.generators1, out.commutant1);
  fill_side(SlotMap(rep.instance.mu2, rep.q2, out.offsets), out.N, out.generators2, out.commutant2);
  return out;
}

namespace {

CMatrix haar_block(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  CMatrix z{Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) z.re(r, c) = g(rng), z.im(r, c) = g(rng);
  // Modified Gram-Schmidt over C: the implied R has a positive real
  // diagonal, which is the phase normalization that makes Q Haar distributed.
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index k = 0; k < c; ++k) {
      // <q_k, v> = sum conj(q_k) v
      const double pr = z.re.col(k).dot(z.re.col(c)) + z.im.col(k).dot(z.im.col(c));
      const double pi = z.re.col(k).dot(z.im.col(c)) - z.im.col(k).dot(z.re.col(c));
      z.re.col(c) -= pr * z.re.col(k) - pi * z.im.col(k);
      z.im.col(c) -= pr * z.im.col(k) + pi * z.re.col(k);
    }
    const double norm = std::sqrt(z.re.col(c).squaredNorm() + z.im.col(c).squaredNorm());
    z.re.col(c) /= norm;
    z.im.col(c) /= norm;
  }
  return z;
}

CMatrix near_identity_block(Eigen::Index n, double epsilon, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd a(n, n), b(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) a(r, c) = g(rng), b(r, c) = g(rng);
  // H = (G + G*)/2: symmetric real part, antisymmetric imaginary part.
  a = 0.5 * (a + a.transpose()).eval();
  b = 0.5 * (b - b.transpose()).eval();
  // Real symmetric embedding [[A, -B], [B, A]] shares H's spectrum (doubled).
  Eigen::MatrixXd emb(2 * n, 2 * n);
  emb << a, -b, b, a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(emb);
  const Eigen::VectorXd lambda = eig.eigenvalues();
  const double radius = lambda.cwiseAbs().maxCoeff();
  const double scale = radius > 0 ? epsilon / radius : 0.0;
  const Eigen::MatrixXd& v = eig.eigenvectors();
  const Eigen::MatrixXd c = v * (scale * lambda).array().cos().matrix().asDiagonal() * v.transpose();
  const Eigen::MatrixXd s = v * (scale * lambda).array().sin().matrix().asDiagonal() * v.transpose();
  // exp(iX) = cos X + i sin X, reading complex entries off the embedding.
  const Eigen::MatrixXd cos_re = c.topLeftCorner(n, n), cos_im = c.bottomLeftCorner(n, n);
  const Eigen::MatrixXd sin_re = s.topLeftCorner(n, n), sin_im = s.bottomLeftCorner(n, n);
  return {cos_re - sin_im, cos_im + sin_re};
}

}  // namespace

CMatrix sample_base_unitary(const std::vector<Int>& d, SamplingMode mode, double epsilon, std::uint64_t seed) {
  if (epsilon < 0) throw PreconditionError("epsilon must be nonnegative");
  const Int N = std::accumulate(d.begin(), d.end(), Int{0});
  CMatrix u = CMatrix::identity(N);
  if (mode == SamplingMode::NearIdentity && epsilon == 0) return u;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  Int offset = 0;
  for (Int n : d) {
    const CMatrix block = mode == SamplingMode::Haar ? haar_block(n, rng) : near_identity_block(n, epsilon, rng);
    u.re.block(offset, offset, n, n) = block.re;
    u.im.block(offset, offset, n, n) = block.im;
    offset += n;
  }
  return u;
}

IntersectionResult intersection_dimension(const RepMatrices& mats, const CMatrix& u, double tol) {
  const Eigen::Index N = mats.N;
  if (u.rows() != N || u.re.cols() != N) throw PreconditionError("unitary has the wrong size");
  if ((u.adjoint() * u - CMatrix::identity(N)).norm() > 1e-10 * std::max<double>(1.0, N))
    throw PreconditionError("u is not unitary");
  for (const auto& p : mats.base_projections) {
    const CMatrix pc = CMatrix::real(p);
    if ((u * pc - pc * u).norm() > 1e-10) throw PreconditionError("u does not commute with the base projections");
  }

  const std::size_t k1 = mats.commutant1.size(), k2 = mats.commutant2.size();
  const Eigen::Index K = static_cast<Eigen::Index>(k1 + k2), N2 = N * N;
  Eigen::MatrixXd stacked(2 * N2, 2 * K);
  auto put = [&](Eigen::Index col, const CMatrix& x) {
    const Eigen::Map<const Eigen::VectorXd> re(x.re.data(), N2), im(x.im.data(), N2);
    stacked.col(2 * col) << re, im;
    stacked.col(2 * col + 1) << -im, re;
  };
  for (std::size_t k = 0; k < k1; ++k) put(static_cast<Eigen::Index>(k), CMatrix::real(mats.commutant1[k]));
  const CMatrix ustar = u.adjoint();
  for (std::size_t k = 0; k < k2; ++k)
    put(static_cast<Eigen::Index>(k1 + k), u * CMatrix::real(mats.commutant2[k]) * ustar);

  Eigen::BDCSVD<Eigen::MatrixXd> svd(stacked);
  const Eigen::VectorXd sv = svd.singularValues();
  IntersectionResult out;
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double sigma_max = sv.size() ? sv(0) : 0.0;
  out.threshold = tol * sigma_max;
  Eigen::Index real_rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > out.threshold) ++real_rank;
    if (sv(k) >= out.threshold / 10 && sv(k) <= out.threshold * 10) out.unstable = true;
  }
  if (real_rank % 2 != 0) out.unstable = true;
  out.dimension = K - real_rank / 2;
  return out;
}

Int exact_intersection_dimension_at_identity(const RepMatrices& mats) {
  const std::size_t k1 = mats.commutant1.size(), k2 = mats.commutant2.size();
  const std::size_t n2 = static_cast<std::size_t>(mats.N * mats.N);
  IntMatrix rows(k1 + k2, n2);
  auto put = [&](std::size_t r, const Eigen::MatrixXd& m) {
    for (std::size_t e = 0; e < n2; ++e) rows(r, e) = static_cast<Int>(std::lround(m.data()[e]));
  };
  for (std::size_t k = 0; k < k1; ++k) put(k, mats.commutant1[k]);
  for (std::size_t k = 0; k < k2; ++k) put(k1 + k, mats.commutant2[k]);
  return static_cast<Int>(k1 + k2) - static_cast<Int>(exact::rank(rows));
}

DpiReport dpi_experiment(const AmalgamInstance& instance, const DpiOptions& options) {
  if (options.epsilon < 0) throw PreconditionError("epsilon must be nonnegative");
  const AmalgamInstance c = compress(instance);
  const auto witness = rfd_decide(c);
  if (!witness) throw PreconditionError("instance is not RFD: no finite-dimensional representation exists");

  DpiReport report;
  report.options = options;
  report.start = {c, witness->p1, witness->p2};
  try {
    const CompletionPlan plan = uniform_completion(report.start);
    report.rep = apply_completion(report.start, plan);
    report.completion_method = plan.method;
  } catch (const PreconditionError&) {
    const WitnessPair doubled = witness->scaled(2);
    report.rep = {c, doubled.p1, doubled.p2};
    report.completion_method = "witness_doubled";
  }

  const auto mats = build_rep_matrices(report.rep);
  const auto structure = commutant_structure(report.rep);
  report.N = mats.N;
  report.d = mats.d;
  report.commutant_dimension_sum = structure.dim_b1 + structure.dim_b2;
  report.base_commutant_dimension = structure.dim_b0;
  report.strict_dimension_inequality = report.commutant_dimension_sum < report.base_commutant_dimension;
  for (const auto& scene : structure.block_scenes) {
    report.block_general_position.push_back(general_position_check(scene));
    report.block_multiplicity_two.push_back(multiplicity_two_check(scene));
  }
  report.exact_identity_dimension = exact_intersection_dimension_at_identity(mats);

  report.trials.resize(options.trials);
  parallel_for(options.trials, options.threads, [&](std::size_t t) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(t)};
    std::uint32_t derived[2];
    seq.generate(derived, derived + 2);
    const std::uint64_t trial_seed = (std::uint64_t{derived[0]} << 32) | derived[1];
    const CMatrix u = sample_base_unitary(mats.d, options.mode, options.epsilon, trial_seed);
    const auto r = intersection_dimension(mats, u, options.tol);
    report.trials[t] = {t, r.dimension, r.unstable};
  });
  std::size_t trivial = 0;
  for (const auto& t : report.trials) {
    if (t.dimension == 1) ++trivial;
    if (t.unstable) ++report.unstable_count;
  }
  report.fraction_trivial = options.trials ? static_cast<double>(trivial) / static_cast<double>(options.trials) : 0.0;
  return report;
}

}  // namespace amalgam
