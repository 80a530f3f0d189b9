#include <gtest/gtest.h>

#include "support.hpp"

using namespace ksforge;
using io::json;
using testing_support::sys;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Overflow;
}

}  // namespace

TEST(Json, RaysRoundTripByteIdentical) {
  const std::string first = io::rays_to_json(sys().rays).dump();
  const auto back = io::rays_from_json(io::parse(first));
  ASSERT_EQ(back.size(), 40u);
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].id, sys().rays[i].id);
    EXPECT_EQ(back[i].v, sys().rays[i].v);
  }
  EXPECT_EQ(io::rays_to_json(back).dump(), first);
}

TEST(Json, BasesRoundTrip) {
  const auto j = io::bases_to_json(sys().bases);
  EXPECT_EQ(j[0]["kind"], "pure");
  EXPECT_EQ(j[5]["kind"], "hybrid");
  EXPECT_EQ(io::bases_from_json(j), sys().bases);
  json bad = j;
  bad[3]["kind"] = "mixed";
  EXPECT_EQ(kind_of([&] { io::bases_from_json(bad); }), ErrorKind::ParseError);
}

TEST(Json, ProjectorShapes) {
  EXPECT_EQ(io::projector_from_json(json::parse(R"({"rays":[7]})")), Projector::rank1(7));
  EXPECT_EQ(io::projector_from_json(json::parse(R"({"rays":[2,8]})")), Projector::rank2(2, 8));
  EXPECT_EQ(io::to_json(Projector::rank2(8, 2)).dump(), R"({"rays":[2,8]})");
  for (const char* bad : {R"({"rays":[1,2,3]})", R"({"rays":[8,2]})", R"({"rays":[3,3]})", R"({"rays":[]})",
                          R"({"rays":[0]})", R"({"rays":[41]})", R"({"ray":[1]})", R"({"rays":["1"]})", "[1]"})
    EXPECT_EQ(kind_of([&] { io::projector_from_json(json::parse(bad)); }), ErrorKind::ParseError) << bad;
}

TEST(Json, ErrorsCarryLocation) {
  try {
    io::ksset_from_json(json::parse(R"({"bases":[[{"rays":[1]}],[{"rays":[1,2,3]}]]})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("/bases/1/0/rays"), std::string::npos) << e.what();
  }
  try {
    io::parse("{\"bases\": [");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("at byte"), std::string::npos);
  }
}

TEST(Json, KSSetRoundTrip) {
  auto s = split_rank2(fixtures::fixture_data("table1"), 25, 27);
  s.provenance.config = fixtures::table1_config();
  const auto j = io::to_json(s);
  EXPECT_EQ(j["signature"], kSplitSignature);
  EXPECT_EQ(j["provenance"]["parent"], "fixture:table1");
  EXPECT_EQ(j["provenance"]["split"], json::parse("[25,27]"));
  const auto back = io::ksset_from_json(j);
  EXPECT_EQ(back.canonical(), s.canonical());
  EXPECT_EQ(back.provenance, s.provenance);
  EXPECT_EQ(io::to_json(back).dump(), j.dump());
}

TEST(Json, KSSetBasesAreCanonical) {
  const auto a = fixtures::table1();
  auto b = a;
  std::reverse(b.bases.begin(), b.bases.end());
  for (auto& row : b.bases) std::reverse(row.begin(), row.end());
  EXPECT_EQ(io::to_json(a).dump(), io::to_json(b).dump());
  EXPECT_TRUE(io::to_json(KSSet{})["provenance"].is_null());
}

TEST(Json, SignatureMismatchRejected) {
  auto j = io::to_json(fixtures::table1());
  j["signature"] = "28_2 8_4 - 11_8";
  EXPECT_EQ(kind_of([&] { io::ksset_from_json(j); }), ErrorKind::ParseError);
}

TEST(Json, ReportRoundTrip) {
  const auto s = split_rank2(fixtures::table1(), 25, 27);
  const auto rep = state_dependent_proof(s, 33, 12, testing_support::fixture_geometry());
  const auto j = io::to_json(rep);
  const auto back = io::report_from_json(j);
  EXPECT_EQ(back.residual, rep.residual);
  EXPECT_EQ(back.orthogonal_to_pre, rep.orthogonal_to_pre);
  EXPECT_EQ(back.used_projectors, rep.used_projectors);
  EXPECT_EQ(*back.probability, (Rational{1, 4}));
  EXPECT_EQ(io::to_json(back).dump(), j.dump());

  const auto parity = parity_contradiction(fixtures::table1());
  EXPECT_EQ(io::to_json(io::report_from_json(io::to_json(parity))).dump(), io::to_json(parity).dump());
}

TEST(Json, CertificateRoundTrip) {
  const auto run = enumerate_children(fixtures::table2_parent(), "fixture:table2");
  const auto j = io::to_json(run.certificate);
  EXPECT_EQ(j["claims"]["children"], 567);
  EXPECT_EQ(j["matches_claims"], false);
  const auto back = io::certificate_from(io::Reader(j));
  EXPECT_EQ(back.failures.size(), run.certificate.failures.size());
  EXPECT_EQ(io::to_json(back).dump(), j.dump());
}

TEST(Json, CatalogRoundTrip) {
  std::vector<ParentKSSet> two(testing_support::parents().begin(), testing_support::parents().begin() + 2);
  CatalogOptions opt;
  opt.keep_children = true;
  opt.workers = 1;
  const auto cat = enumerate_all_children(two, opt);
  const auto j = io::to_json(cat);
  EXPECT_EQ(io::to_json(io::catalog_from_json(j)).dump(), j.dump());
  EXPECT_EQ(j["children"].size(), 486u);
}

TEST(Json, ParentsListing) {
  const auto j = io::parents_to_json(testing_support::parents());
  EXPECT_EQ(j["count"], 320);
  EXPECT_EQ(j["parents"][0]["signature"], kParentSignature);
  EXPECT_EQ(j["parents"][0]["bases"].size(), 11u);
}

TEST(Text, Table1Row11) {
  const auto text = io::to_text(fixtures::table1());
  EXPECT_NE(text.find("signature: 16_2 [14_2] - 1_4 4_5 6_6"), std::string::npos);
  EXPECT_NE(text.find("  11 | (2,8) (25,27) 4 6 26 28\n"), std::string::npos) << text;
  EXPECT_NE(text.find("   5 | (33,35) (34,40) (36,37) (38,39)\n"), std::string::npos) << text;
}

TEST(Text, RaysAndBases) {
  const auto rays = io::to_text(sys().rays);
  EXPECT_EQ(std::count(rays.begin(), rays.end(), '\n'), 40);
  const auto bases = io::to_text(sys().bases);
  EXPECT_EQ(std::count(bases.begin(), bases.end(), '\n'), 25);
  EXPECT_NE(bases.find("pure"), std::string::npos);
}

TEST(Text, StateDependentReport) {
  const auto s = split_rank2(fixtures::table1(), 25, 27);
  const auto text = io::to_text(state_dependent_proof(s, 33, 12, testing_support::fixture_geometry()));
  EXPECT_NE(text.find("v(4) + v(20) = 1"), std::string::npos) << text;
  EXPECT_NE(text.find("probability 1/4"), std::string::npos);
  EXPECT_NE(text.find("used projectors: 20"), std::string::npos);
}
