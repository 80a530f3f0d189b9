#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace ksforge;
using testing_support::parents;
using testing_support::sys;

namespace {

// Independent scan: Gosper's hack over 25-bit masks with per-ray counters.
std::vector<std::uint32_t> brute_force_parent_masks() {
  std::vector<std::uint32_t> out;
  std::uint32_t m = (1u << 11) - 1;
  while (m < (1u << 25)) {
    int count[41] = {};
    for (int i = 0; i < 25; ++i)
      if ((m >> i) & 1u)
        for (int r : sys().bases[i].rays) ++count[r];
    int twos = 0, fours = 0, other = 0;
    for (int r = 1; r <= 40; ++r) {
      if (count[r] == 2) ++twos;
      else if (count[r] == 4) ++fours;
      else if (count[r] != 0) ++other;
    }
    if (twos == 28 && fours == 8 && other == 0) out.push_back(m);
    const std::uint32_t c = m & -m, r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return out;
}

}  // namespace

TEST(ParityProof, SmallSubsetsAreNot) {
  EXPECT_FALSE(is_parity_proof(sys(), BasisSubset::of({7})));
  EXPECT_FALSE(is_parity_proof(sys(), BasisSubset::of({1, 2, 3, 4, 5, 6, 7, 8, 9, 10})));
  EXPECT_FALSE(is_parity_proof(subset_ksset(sys(), BasisSubset::of({7}))));
}

TEST(ParityProof, FixtureTable2UnderRelabeling) {
  const auto relabeled = relabel(fixtures::table2(), testing_support::fixture_map());
  EXPECT_TRUE(is_parity_proof(relabeled));
  BasisSubset subset;
  for (const auto& b : relabeled.bases) {
    std::vector<int> rays;
    for (const auto& p : b) rays.push_back(p.first());
    const int id = sys().find_basis(ray_mask(rays));
    ASSERT_NE(id, 0);
    subset.mask |= 1u << (id - 1);
  }
  EXPECT_EQ(subset.size(), 11);
  EXPECT_TRUE(is_parity_proof(sys(), subset));
}

TEST(Parents, ExactlyThreeHundredTwenty) {
  const auto& ps = parents();
  ASSERT_EQ(ps.size(), 320u);
  for (const auto& p : ps) {
    EXPECT_EQ(signature_of(p).str(), kParentSignature);
    EXPECT_EQ(std::count_if(p.bases.begin(), p.bases.end(), [](const Basis& b) { return b.kind == BasisKind::Pure; }), 1);
    EXPECT_EQ(p.ray_multiplicity.size(), 36u);
  }
  EXPECT_TRUE(std::is_sorted(ps.begin(), ps.end(), [](const auto& a, const auto& b) { return a.mask < b.mask; }));
}

TEST(Parents, MatchBruteForceScan) {
  std::vector<std::uint32_t> masks;
  for (const auto& p : parents()) masks.push_back(p.mask);
  EXPECT_EQ(masks, brute_force_parent_masks());
}

TEST(Parents, EachPureBasisEquallyOften) {
  std::map<int, int> by_pure;
  for (const auto& p : parents())
    for (const auto& b : p.bases)
      if (b.kind == BasisKind::Pure) ++by_pure[b.id];
  EXPECT_EQ(by_pure, (std::map<int, int>{{1, 64}, {2, 64}, {3, 64}, {4, 64}, {5, 64}}));
}

TEST(Parents, Table2AmongThem) {
  const auto relabeled = relabel(fixtures::table2(), testing_support::fixture_map());
  std::uint32_t mask = 0;
  for (const auto& b : relabeled.bases) {
    std::vector<int> rays;
    for (const auto& p : b) rays.push_back(p.first());
    mask |= 1u << (sys().find_basis(ray_mask(rays)) - 1);
  }
  EXPECT_TRUE(std::any_of(parents().begin(), parents().end(), [&](const auto& p) { return p.mask == mask; }));
}

TEST(Parents, WorkerCountDoesNotMatter) {
  const auto a = enumerate_parents(sys(), 1);
  const auto b = enumerate_parents(sys(), 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].mask, b[i].mask);
}

TEST(ParentKSSet, RejectsBadShapes) {
  std::vector<Basis> ten(sys().bases.begin(), sys().bases.begin() + 10);
  EXPECT_THROW(ParentKSSet::from_bases(ten), Error);
  try {
    (void)ParentKSSet::from_subset(sys(), BasisSubset{(1u << 11) - 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StructureError);
  }
}

TEST(Signature, ArithmeticIdentities) {
  const auto check = [](const KSSet& s) {
    const auto sig = signature_of(s);
    EXPECT_EQ(sig.weighted_projector_total(), s.slot_count());
    EXPECT_EQ(sig.slot_total(), s.slot_count());
  };
  check(fixtures::table1());
  check(fixtures::table2());
  check(parents().front().as_ksset());
  EXPECT_EQ(signature_of(fixtures::table2()).str(), "28_2 8_4 - 11_8");
  EXPECT_EQ(signature_of(fixtures::table1()).str(), "16_2 [14_2] - 1_4 4_5 6_6");
}

TEST(Classify, ElevenBases) {
  const auto counts = classify_parity_proofs(sys(), 11, 1);
  EXPECT_EQ(counts.at(kParentSignature), 320);
  long total = 0;
  for (const auto& [sig, n] : counts) total += n;
  EXPECT_GE(total, 320);
}

TEST(Classify, UpToFifteenMatchesGrayCodeScan) {
  // Independent total: walk all 2^25 subsets in Gray-code order, keeping the
  // running XOR of basis masks.
  std::vector<RayMask> masks;
  for (const auto& b : sys().bases) masks.push_back(b.mask());
  std::map<int, long> by_size;
  RayMask odd = 0;
  int size = 0;
  for (std::uint32_t i = 1; i < (1u << 25); ++i) {
    const int bit = std::countr_zero(i);
    odd ^= masks[bit];
    const std::uint32_t gray = i ^ (i >> 1);
    size += ((gray >> bit) & 1u) ? 1 : -1;
    if (odd == 0 && size % 2 == 1 && size <= 15) ++by_size[size];
  }
  const auto counts = classify_parity_proofs(sys(), 15, 1);
  long total = 0;
  for (const auto& [sig, n] : counts) total += n;
  long expect = 0;
  for (auto [k, n] : by_size) expect += n;
  EXPECT_EQ(total, expect);
  EXPECT_EQ(counts.at("28_2 8_4 - 11_8"), 320);
  EXPECT_EQ(counts.at("24_2 14_4 - 13_8"), 640);
  EXPECT_EQ(counts.at("20_2 20_4 - 15_8"), 64);
}

TEST(Classify, RejectsUnsupportedSizes) { EXPECT_THROW(classify_parity_proofs(sys(), 12, 1), std::invalid_argument); }
