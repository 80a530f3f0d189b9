#include <gtest/gtest.h>

#include "support.hpp"

using namespace ksforge;
using testing_support::fixture_geometry;
using testing_support::sys;

namespace {

KSSet split_t1() { return split_rank2(fixtures::table1(), 25, 27); }

std::vector<Projector> rank1s(std::initializer_list<int> ids) {
  std::vector<Projector> out;
  for (int r : ids) out.push_back(Projector::rank1(r));
  return out;
}

// tr(8P * 8Q) = 64 |<p|q>|^2 / (<p|p><q|q>)
Rational trace_overlap(const Vec8& p, const Vec8& q) {
  const Mat8 prod = scaled_projector(p) * scaled_projector(q);
  return Rational::reduced(prod.trace().re, 64);
}

}  // namespace

TEST(Parity, Table1) {
  const auto r = parity_contradiction(fixtures::table1());
  EXPECT_TRUE(r.contradiction);
  EXPECT_EQ(r.witness, "even vs 11");
  EXPECT_EQ(r.used_projectors.size(), 30u);
}

TEST(Parity, Table2) {
  const auto r = parity_contradiction(fixtures::table2());
  EXPECT_TRUE(r.contradiction);
  EXPECT_EQ(r.used_projectors.size(), 36u);
}

TEST(Parity, NotParityForm) {
  auto s = fixtures::table1();
  s.bases.pop_back();
  try {
    (void)parity_contradiction(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotParityForm);
  }
  EXPECT_THROW(parity_contradiction(subset_ksset(sys(), BasisSubset::of({1, 6, 7}))), Error);
}

TEST(Exhaustive, FixturesAreUncolorable) {
  EXPECT_EQ(exhaustive_noncolorability(fixtures::table1()), 0);
  EXPECT_EQ(exhaustive_noncolorability(fixtures::table2()), 0);
  const auto r = exhaustive_report(fixtures::table1());
  EXPECT_TRUE(r.contradiction);
  EXPECT_EQ(r.satisfying_assignments, 0);
}

TEST(Exhaustive, SingleBasisHasEightColorings) {
  EXPECT_EQ(exhaustive_noncolorability(subset_ksset(sys(), BasisSubset::of({1}))), 8);
  EXPECT_EQ(exhaustive_noncolorability(KSSet{}), 1);
}

TEST(Exhaustive, AgreesWithBruteForceOnPairsOfBases) {
  for (int a = 1; a <= 25; ++a)
    for (int b = a + 1; b <= 25; ++b) {
      const auto s = subset_ksset(sys(), BasisSubset::of({a, b}));
      EXPECT_EQ(exhaustive_noncolorability(s), testing_support::brute_force_colorings(s)) << a << "," << b;
    }
}

TEST(Exhaustive, AgreesWithBruteForceOnRandomMixedRankSets) {
  auto& gen = testing_support::rng();
  const auto t1 = fixtures::table1();
  for (int t = 0; t < 40; ++t) {
    std::vector<std::size_t> idx(t1.bases.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), gen);
    KSSet s;
    for (int k = 0; k < 3; ++k) s.bases.push_back(t1.bases[idx[k]]);
    if (s.multiplicities().size() > 20) continue;
    EXPECT_EQ(exhaustive_noncolorability(s), testing_support::brute_force_colorings(s));
  }
}

TEST(Split, Table1Pair2527) {
  const auto s = split_t1();
  EXPECT_EQ(signature_of(s).str(), kSplitSignature);
  EXPECT_EQ(*s.provenance.split, (std::pair{25, 27}));
  EXPECT_EQ(merge_rank2(s, 27, 25).canonical(), fixtures::table1().canonical());
}

TEST(Split, AbsentPair) {
  try {
    (void)split_rank2(fixtures::table1(), 1, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPresent);
  }
  EXPECT_THROW(merge_rank2(fixtures::table1(), 1, 2), Error);
}

TEST(Overlap, Basics) {
  const auto& r = sys().rays;
  EXPECT_EQ(overlap_probability(r[0].v, r[0].v), (Rational{1, 1}));
  EXPECT_TRUE(overlap_probability(r[0].v, r[1].v).is_zero());
  EXPECT_EQ(Rational::reduced(2, -4), (Rational{-1, 2}));
  EXPECT_EQ((Rational{1, 4}).str(), "1/4");
}

TEST(Overlap, MatchesTraceOracle) {
  const auto& r = sys().rays;
  for (const auto& a : r)
    for (const auto& b : r) ASSERT_EQ(overlap_probability(a.v, b.v), trace_overlap(a.v, b.v)) << a.id << "," << b.id;
}

TEST(Overlap, FixtureRays33And12) {
  EXPECT_EQ(fixture_geometry().overlap(33, 12), (Rational{1, 4}));
}

TEST(StateDependent, PaperExample) {
  const auto r = state_dependent_proof(split_t1(), 33, 12, fixture_geometry());
  EXPECT_TRUE(r.contradiction);
  EXPECT_EQ(r.witness, "even vs 3");
  const std::vector<Equation> eq1{rank1s({4, 20}), rank1s({4, 27}), rank1s({20, 27})};
  EXPECT_EQ(r.residual, eq1);
  EXPECT_EQ(r.residual_projectors, rank1s({4, 20, 27}));
  EXPECT_EQ(r.orthogonal_to_pre, rank1s({3, 5, 10, 11, 21, 24, 25, 28, 31}));
  EXPECT_EQ(r.orthogonal_to_post, rank1s({6, 14, 15, 17, 26, 29}));
  EXPECT_EQ(r.used_projectors.size(), 20u);
  EXPECT_EQ(1 + r.orthogonal_to_pre.size() + 1 + r.orthogonal_to_post.size() + r.residual_projectors.size(), 20u);
  EXPECT_EQ(*r.probability, (Rational{1, 4}));
  EXPECT_EQ(r.satisfying_assignments, 0);
}

TEST(StateDependent, OrthogonalSetsMatchGeometry) {
  // Recompute the orthogonal-to-pre set straight from the realized vectors.
  const auto& geo = fixture_geometry();
  std::vector<Projector> expect;
  for (const auto& [p, m] : split_t1().multiplicities())
    if (p.rank() == 1 && inner(geo.vector(p.first()), geo.vector(33)).is_zero()) expect.push_back(p);
  EXPECT_EQ(state_dependent_proof(split_t1(), 33, 12, geo).orthogonal_to_pre, expect);
}

TEST(StateDependent, Preconditions) {
  const auto s = split_t1();
  try {
    (void)state_dependent_proof(s, 33, 35, fixture_geometry());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OverlapZero);
  }
  try {
    (void)state_dependent_proof(s, 1, 12, fixture_geometry());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPresent);
  }
}

TEST(StateDependent, SearchFindsPaperExample) {
  const auto hits = search_state_dependent({fixtures::table1()}, fixture_geometry(), 1);
  ASSERT_FALSE(hits.empty());
  const auto it = std::find_if(hits.begin(), hits.end(), [](const StateDependentHit& h) {
    return h.split == std::pair{25, 27} && h.pre == 33 && h.post == 12;
  });
  ASSERT_NE(it, hits.end());
  EXPECT_EQ(it->used, 20);
  int min_used = 1000;
  for (const auto& h : hits) {
    EXPECT_FALSE(h.probability.is_zero());
    min_used = std::min(min_used, h.used);
  }
  EXPECT_LE(min_used, 20);
  EXPECT_EQ(hits, search_state_dependent({fixtures::table1()}, fixture_geometry(), 4));
}

TEST(StateDependent, SearchRejectsEmptyCatalog) {
  EXPECT_THROW(search_state_dependent({}, fixture_geometry(), 1), std::invalid_argument);
}

TEST(Geometry, GeneratedAndRelabeledAgree) {
  const auto gen = RayGeometry::generated(sys());
  const auto& map = testing_support::fixture_map();
  for (auto [a, ga] : map.to)
    for (auto [b, gb] : map.to) EXPECT_EQ(fixture_geometry().orthogonal(a, b), gen.orthogonal(ga, gb));
  EXPECT_FALSE(fixture_geometry().has(1));
  EXPECT_THROW(fixture_geometry().vector(1), Error);
}
