#include <gtest/gtest.h>

#include <random>
#include <set>

#include "amalgam/structure.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace amalgam;
using amalgam::testing::instance_from_mu;

namespace {

AmalgamInstance pair(IntMatrix mu1, IntMatrix mu2) {
  return instance_from_mu(std::vector<Int>(mu1.cols(), 1), std::move(mu1), std::move(mu2));
}

AmalgamInstance star() {
  const IntMatrix mu{{1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}};
  return pair(mu, mu);
}

AmalgamInstance reorderable() { return pair({{1, 0, 1}, {0, 1, 0}}, {{1, 1, 0}, {0, 0, 1}}); }

}  // namespace

TEST(ColumnComponents, DirectSumSplitsIntoTwo) {
  const auto c = column_components(pair({{1, 1, 0}, {0, 0, 3}}, {{1, 1, 0}, {0, 0, 3}}));
  ASSERT_EQ(c.count(), 2u);
  EXPECT_EQ(c.columns[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(c.columns[1], (std::vector<std::size_t>{2}));
  EXPECT_EQ(c.rows1[0], (std::vector<std::size_t>{0}));
  EXPECT_EQ(c.rows1[1], (std::vector<std::size_t>{1}));
  EXPECT_EQ(c.rows2[1], (std::vector<std::size_t>{1}));
}

TEST(ColumnComponents, ConnectedExamples) {
  EXPECT_EQ(column_components(pair({{1, 1}}, {{1, 1}})).count(), 1u);
  EXPECT_EQ(column_components(pair({{1, 1, 0}, {0, 0, 1}}, {{1, 0, 1}, {0, 1, 0}})).count(), 1u);
}

TEST(ColumnComponents, MatchesOracle) {
  std::mt19937_64 rng(41);
  amalgam::testing::RandomInstanceOptions opt;
  opt.max_l0 = 6;
  opt.zero_probability = 0.7;
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = amalgam::testing::random_instance(rng, opt);
    const auto c = column_components(inst);
    const auto expected = oracle::components(inst);
    ASSERT_EQ(c.count(), expected.size());
    for (std::size_t k = 0; k < c.count(); ++k)
      EXPECT_EQ(std::set<std::size_t>(c.columns[k].begin(), c.columns[k].end()), expected[k]);
    std::size_t rows = 0;
    for (const auto& r : c.rows1) rows += r.size();
    EXPECT_EQ(rows, inst.mu1.rows());
  }
}

TEST(LpLiteral, CertificatesAndFailures) {
  const auto ok = lp_literal(pair({{1, 1}}, {{1, 1}}));
  ASSERT_TRUE(ok.certificate);
  ASSERT_EQ(ok.certificate->links.size(), 1u);
  EXPECT_EQ(ok.certificate->links[0], (Link{0, 1}));

  const auto fail = lp_literal(reorderable());
  EXPECT_FALSE(fail.certificate);
  EXPECT_EQ(fail.first_unlinked, 1u);

  const auto single = lp_literal(pair({{2}}, {{1}, {1}}));
  ASSERT_TRUE(single.certificate);
  EXPECT_TRUE(single.certificate->links.empty());
}

TEST(LpOrderSearch, FindsReorderedPath) {
  const auto inst = reorderable();
  const auto cert = lp_order_search(inst);
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->order, (std::vector<std::size_t>{1, 0, 2}));
  EXPECT_EQ(cert->links[0], (Link{0, 2}));
  EXPECT_EQ(cert->links[1], (Link{0, 1}));
  EXPECT_TRUE(verify_link_certificate(inst, *cert));
}

TEST(LpOrderSearch, StarIsConnectedButUnorderable) {
  EXPECT_EQ(column_components(star()).count(), 1u);
  EXPECT_FALSE(lp_order_search(star()));
  EXPECT_FALSE(oracle::first_linked_order(star()));
}

TEST(LpOrderSearch, DisconnectedHasNoOrder) {
  EXPECT_FALSE(lp_order_search(pair({{1, 1, 0}, {0, 0, 3}}, {{1, 1, 0}, {0, 0, 3}})));
}

TEST(LpOrderSearch, LimitIsEnforced) {
  const std::size_t l0 = 5;
  IntMatrix mu(1, l0, 1);
  EXPECT_THROW(lp_order_search(pair(mu, mu), 4), PreconditionError);
  EXPECT_TRUE(lp_order_search(pair(mu, mu), 5));
}

TEST(LpOrderSearch, MatchesPermutationOracle) {
  std::mt19937_64 rng(43);
  amalgam::testing::RandomInstanceOptions opt;
  opt.max_l0 = 6;
  opt.max_rows = 4;
  opt.zero_probability = 0.65;
  int found = 0, missing = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = amalgam::testing::random_instance(rng, opt);
    const auto cert = lp_order_search(inst);
    const auto expected = oracle::first_linked_order(inst);
    ASSERT_EQ(cert.has_value(), expected.has_value());
    if (cert) {
      ++found;
      EXPECT_EQ(cert->order, *expected);
      EXPECT_TRUE(verify_link_certificate(inst, *cert));
      EXPECT_EQ(column_components(inst).count(), 1u);
    } else {
      ++missing;
    }
    if (lp_literal(inst).certificate) EXPECT_TRUE(cert);
  }
  EXPECT_GT(found, 50);
  EXPECT_GT(missing, 10);
}

TEST(LpOrderSearch, InvariantUnderBasePermutation) {
  std::mt19937_64 rng(47);
  amalgam::testing::RandomInstanceOptions opt;
  opt.max_l0 = 5;
  opt.zero_probability = 0.6;
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = amalgam::testing::random_instance(rng, opt);
    const auto perm = amalgam::testing::random_permutation(rng, inst.base.size());
    const auto moved = permute_base(inst, perm);
    EXPECT_EQ(lp_order_search(inst).has_value(), lp_order_search(moved).has_value());
    EXPECT_EQ(column_components(inst).count(), column_components(moved).count());
    if (auto lit = lp_literal(inst); lit.certificate) {
      // The identity order, carried along by the permutation, stays linked.
      LinkCertificate carried = *lit.certificate;
      for (auto& j : carried.order) j = perm[j];
      EXPECT_TRUE(verify_link_certificate(moved, carried));
    }
  }
}

TEST(VerifyLinkCertificate, RejectsBadCertificates) {
  const auto inst = reorderable();
  EXPECT_FALSE(verify_link_certificate(inst, {{0, 1, 2}, {{0, 1}, {0, 1}}}));
  EXPECT_FALSE(verify_link_certificate(inst, {{1, 1, 2}, {{0, 2}, {0, 1}}}));
  EXPECT_FALSE(verify_link_certificate(inst, {{1, 0, 2}, {{0, 2}}}));
  EXPECT_TRUE(verify_link_certificate(inst, {{1, 0, 2}, {{0, 2}, {0, 1}}}));
}
