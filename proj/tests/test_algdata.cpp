#include <gtest/gtest.h>

#include <random>

#include "amalgam/algdata.hpp"
#include "amalgam/reduction.hpp"
#include "support/generators.hpp"

using namespace amalgam;
using amalgam::testing::instance_from_mu;

namespace {

AmalgamInstance m2_c2_m2() { return {{1, 1}, {2}, {2}, {{1, 1}}, {{1, 1}}}; }

bool has_kind(const std::vector<Violation>& vs, ViolationKind k) {
  for (const auto& v : vs)
    if (v.kind == k) return true;
  return false;
}

}  // namespace

TEST(BlockAlgebra, DimensionAndAbelian) {
  const BlockAlgebra a{2, 3};
  EXPECT_EQ(a.dimension(), 13);
  EXPECT_FALSE(a.is_abelian());
  EXPECT_TRUE((BlockAlgebra{1, 1, 1}).is_abelian());
}

TEST(Validate, AcceptsWellFormedInstances) {
  EXPECT_TRUE(is_valid(m2_c2_m2()));
  const AmalgamInstance pedersen{{1, 1, 1}, {2, 3}, {2, 3}, {{1, 1, 0}, {0, 0, 3}}, {{1, 1, 0}, {0, 0, 3}}};
  EXPECT_TRUE(is_valid(pedersen));
  const AmalgamInstance nonabelian{{1, 2}, {5}, {5}, {{1, 2}}, {{1, 2}}};
  EXPECT_TRUE(is_valid(nonabelian));
}

TEST(Validate, ReportsUnitality) {
  AmalgamInstance bad = m2_c2_m2();
  bad.a1 = BlockAlgebra{3};
  const auto vs = validate(bad);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].kind, ViolationKind::Unitality);
  EXPECT_EQ(vs[0].side, 1);
  EXPECT_THROW(require_valid(bad), InvalidInstance);
}

TEST(Validate, ReportsInjectivity) {
  const AmalgamInstance bad{{1, 1}, {1}, {2}, {{1, 0}}, {{1, 1}}};
  EXPECT_TRUE(has_kind(validate(bad), ViolationKind::Injectivity));
}

TEST(Validate, ReportsShapeNegativeAndEmpty) {
  EXPECT_TRUE(has_kind(validate({{1, 1}, {2}, {2}, {{1, 1, 1}}, {{1, 1}}}), ViolationKind::ShapeMismatch));
  EXPECT_TRUE(has_kind(validate({{1, 1}, {2}, {0}, {{1, 1}}, {{1, -1}}}), ViolationKind::NegativeEntry));
  EXPECT_TRUE(has_kind(validate({{}, {2}, {2}, IntMatrix(1, 0), IntMatrix(1, 0)}), ViolationKind::EmptyAlgebra));
  EXPECT_TRUE(has_kind(validate({{0, 1}, {1}, {1}, {{0, 1}}, {{0, 1}}}), ViolationKind::NonPositiveBlock));
}

TEST(Validate, InvalidInstanceCarriesViolations) {
  AmalgamInstance bad = m2_c2_m2();
  bad.a2 = BlockAlgebra{7};
  try {
    require_valid(bad);
    FAIL() << "expected InvalidInstance";
  } catch (const InvalidInstance& e) {
    EXPECT_EQ(e.violations().size(), 1u);
    EXPECT_NE(std::string(e.what()).find("unitality"), std::string::npos);
  }
}

TEST(PermuteBase, MovesColumnsAndBlocks) {
  const AmalgamInstance inst = instance_from_mu({1, 2, 3}, {{1, 0, 1}, {0, 1, 0}}, {{1, 1, 1}});
  const std::vector<std::size_t> perm{2, 0, 1};
  const auto p = permute_base(inst, perm);
  EXPECT_EQ(p.base.blocks(), (std::vector<Int>{2, 3, 1}));
  EXPECT_EQ(p.mu1, (IntMatrix{{0, 1, 1}, {1, 0, 0}}));
  EXPECT_TRUE(is_valid(p));
  EXPECT_EQ(permute_base(p, inverse_permutation(perm)), inst);
  const std::vector<std::size_t> bad{0, 0, 1};
  EXPECT_THROW(permute_base(inst, bad), PreconditionError);
}

TEST(CanonicalForm, IgnoresBaseOrderAndRowOrder) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = amalgam::testing::random_instance(rng);
    const auto perm = amalgam::testing::random_permutation(rng, inst.base.size());
    const auto canon = canonical_form(inst);
    EXPECT_TRUE(is_valid(canon));
    EXPECT_EQ(canonical_form(canon), canon);
    EXPECT_EQ(canonical_form(permute_base(inst, perm)).base.blocks(), canon.base.blocks());
  }
}

TEST(Compress, MakesBaseAbelianAndKeepsMu) {
  const AmalgamInstance inst{{1, 2}, {5}, {5}, {{1, 2}}, {{1, 2}}};
  const auto c = compress(inst);
  EXPECT_EQ(c.base.blocks(), (std::vector<Int>{1, 1}));
  EXPECT_EQ(c.a1.blocks(), (std::vector<Int>{3}));
  EXPECT_EQ(c.mu1, inst.mu1);
  EXPECT_EQ(c.mu2, inst.mu2);
  EXPECT_EQ(compress(c), c);
}

TEST(Compress, FixesAbelianInstances) {
  EXPECT_EQ(compress(m2_c2_m2()), m2_c2_m2());
  const AmalgamInstance m4{{2}, {4}, {4}, {{2}}, {{2}}};
  const auto c = compress(m4);
  EXPECT_EQ(c.a1.blocks(), (std::vector<Int>{2}));
  AmalgamInstance bad = m2_c2_m2();
  bad.a1 = BlockAlgebra{5};
  EXPECT_THROW(compress(bad), InvalidInstance);
}

TEST(Compress, IdempotentOnRandomInstances) {
  std::mt19937_64 rng(5);
  amalgam::testing::RandomInstanceOptions opt;
  opt.max_base_block = 3;
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = amalgam::testing::random_instance(rng, opt);
    const auto c = compress(inst);
    ASSERT_TRUE(is_valid(c));
    EXPECT_TRUE(c.base.is_abelian());
    EXPECT_EQ(c.mu1, inst.mu1);
    EXPECT_EQ(c.mu2, inst.mu2);
    EXPECT_EQ(compress(c), c);
  }
}
