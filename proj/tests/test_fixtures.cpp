#include <gtest/gtest.h>

#include "support.hpp"

using namespace ksforge;

TEST(Fixtures, Table2PureRow) {
  const auto& rows = fixtures::table2_rows();
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows.front().first, 5);
  EXPECT_EQ(rows.front().second, (std::array<int, 8>{33, 34, 35, 36, 37, 38, 39, 40}));
}

TEST(Fixtures, Table2ItalicRaysHaveMultiplicityFour) {
  std::vector<int> fours;
  for (const auto& [p, m] : fixtures::table2().multiplicities())
    if (m == 4) fours.push_back(p.first());
  std::vector<int> italic(fixtures::kItalicRays.begin(), fixtures::kItalicRays.end());
  std::sort(italic.begin(), italic.end());
  EXPECT_EQ(fours, italic);
}

TEST(Fixtures, Table1BasisSizes) {
  std::vector<int> sizes;
  for (const auto& b : fixtures::table1().bases) sizes.push_back(static_cast<int>(b.size()));
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<int>{4, 5, 5, 5, 5, 6, 6, 6, 6, 6, 6}));
}

TEST(Fixtures, Table1EveryProjectorTwice) {
  const auto s = fixtures::table1();
  EXPECT_EQ(s.slot_count(), 60);
  for (const auto& [p, m] : s.multiplicities()) EXPECT_EQ(m, 2) << p.str();
}

TEST(Fixtures, Table1UsesTheSameRaysAsTable2) {
  EXPECT_EQ(fixtures::table1().rays(), fixtures::table2().rays());
  EXPECT_EQ(fixtures::table1().rays().size(), 36u);
}

TEST(Fixtures, LoadedThroughFixtureData) {
  const auto t1 = fixtures::fixture_data("table1");
  EXPECT_EQ(t1.provenance.parent, "fixture:table1");
  EXPECT_TRUE(fixtures::uses_fixture_numbering(t1));
  EXPECT_EQ(fixtures::fixture_data("table2").bases.size(), 11u);
  EXPECT_THROW(fixtures::fixture_data("table3"), std::invalid_argument);
  EXPECT_FALSE(fixtures::uses_fixture_numbering(KSSet{}));
}

TEST(Fixtures, ConsistencyCheckCatchesDamage) {
  auto s = fixtures::table1();
  s.bases[0].pop_back();
  EXPECT_THROW(fixtures::check_fixture(s, "table1"), Error);
  auto t = fixtures::table2();
  t.bases[0][0] = Projector::rank1(1);
  EXPECT_THROW(fixtures::check_fixture(t, "table2"), Error);
}

TEST(Fixtures, Table2AsParent) {
  const auto p = fixtures::table2_parent();
  EXPECT_EQ(p.bases.size(), 11u);
  EXPECT_EQ(p.basis(5).kind, BasisKind::Pure);
  EXPECT_EQ(p.basis(10).kind, BasisKind::Hybrid);
  EXPECT_EQ(signature_of(p).str(), kParentSignature);
}

TEST(Fixtures, Table1RealizedSumsToIdentity) {
  EXPECT_TRUE(all_bases_sum_to_identity(fixtures::table1(), testing_support::fixture_geometry()));
  EXPECT_TRUE(all_bases_sum_to_identity(fixtures::table2(), testing_support::fixture_geometry()));
}

TEST(Fixtures, Table1FirstBasisRank2Sum) {
  const auto& geo = testing_support::fixture_geometry();
  const auto realized = geo.realize(fixtures::table1().bases[0]);
  ASSERT_EQ(realized.size(), 4u);
  EXPECT_TRUE(projector_sum_check(std::span<const RealizedProjector>(realized)));
}

TEST(Fixtures, Table1RelabeledRank2PairsAreOrthogonal) {
  const auto& geo = testing_support::fixture_geometry();
  for (const auto& b : fixtures::table1().bases)
    for (const auto& p : b)
      if (p.rank() == 2) {
        EXPECT_TRUE(geo.orthogonal(p.first(), p.second())) << p.str();
      }
}
