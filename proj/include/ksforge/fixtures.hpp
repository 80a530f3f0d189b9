#pragma once

// The two published KS sets, entered over the original ray numbering 1..40.
// table2: the 28_2 8_4 - 11_8 parent, bases in canonical order.
// table1: the 16_2 [14_2] - 1_4 4_5 6_6 mixed-rank set derived from it.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ksforge/errors.hpp"
#include "ksforge/ksset.hpp"
#include "ksforge/parity.hpp"
#include "ksforge/ray_system.hpp"

namespace ksforge::fixtures {

struct Row {
  int label;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> singles;
};

inline const std::vector<std::pair<int, std::array<int, 8>>>& table2_rows() {
  static const std::vector<std::pair<int, std::array<int, 8>>> rows = {
      {5, {33, 34, 35, 36, 37, 38, 39, 40}},
      {10, {33, 34, 36, 35, 8, 2, 3, 5}},
      {22, {33, 34, 38, 40, 18, 19, 21, 24}},
      {24, {33, 36, 38, 37, 25, 28, 30, 31}},
      {16, {34, 36, 38, 39, 12, 9, 14, 15}},
      {11, {8, 25, 2, 28, 4, 6, 26, 27}},
      {12, {8, 18, 3, 19, 4, 7, 17, 20}},
      {13, {8, 12, 5, 9, 6, 7, 10, 11}},
      {18, {12, 25, 14, 30, 10, 16, 26, 29}},
      {19, {12, 18, 15, 21, 11, 16, 17, 22}},
      {23, {18, 25, 24, 31, 20, 22, 27, 29}},
  };
  return rows;
}

inline const std::vector<Row>& table1_rows() {
  static const std::vector<Row> rows = {
      {5, {{33, 35}, {34, 40}, {36, 37}, {38, 39}}, {}},
      {10, {{34, 36}, {33, 35}, {8, 2}}, {3, 5}},
      {22, {{33, 38}, {34, 40}, {18, 19}}, {21, 24}},
      {24, {{33, 38}, {36, 37}, {25, 30}}, {28, 31}},
      {16, {{34, 36}, {38, 39}, {12, 9}}, {14, 15}},
      {11, {{8, 2}, {25, 27}}, {4, 6, 26, 28}},
      {12, {{18, 19}, {8, 7}}, {3, 4, 17, 20}},
      {13, {{12, 9}, {8, 7}}, {5, 6, 10, 11}},
      {18, {{25, 30}, {12, 16}}, {10, 14, 26, 29}},
      {19, {{12, 16}, {18, 22}}, {11, 15, 17, 21}},
      {23, {{18, 22}, {25, 27}}, {20, 24, 29, 31}},
  };
  return rows;
}

/// Rays typeset in italics in both tables (multiplicity 4 in table 2).
inline constexpr std::array<int, 8> kItalicRays{33, 34, 36, 38, 8, 12, 18, 25};

/// Table 1's merge choices relative to table 2.
inline MergeConfig table1_config() {
  return MergeConfig{{{33, 35}, {34, 40}, {36, 37}, {38, 39}}, {{8, 2}, {12, 9}, {18, 19}, {25, 30}}};
}

inline FixtureBases table2_bases() {
  FixtureBases out;
  for (const auto& [label, rays] : table2_rows()) out.push_back(rays);
  return out;
}

/// True when a set is written in the fixture ray numbering.
inline bool uses_fixture_numbering(const KSSet& s) { return s.provenance.parent.rfind("fixture:", 0) == 0; }

/// Table 2 as a parent; bases 1..5 are pure in the original numbering.
inline ParentKSSet table2_parent() {
  std::vector<Basis> bases;
  for (const auto& [label, rays] : table2_rows()) {
    Basis b{label, label <= 5 ? BasisKind::Pure : BasisKind::Hybrid, rays};
    std::sort(b.rays.begin(), b.rays.end());
    bases.push_back(b);
  }
  return ParentKSSet::from_bases(std::move(bases));
}

inline KSSet table2() {
  KSSet s = table2_parent().as_ksset();
  // keep the published in-row order
  s.bases.clear();
  for (const auto& [label, rays] : table2_rows()) {
    s.bases.push_back({});
    for (int r : rays) s.bases.back().push_back(Projector::rank1(r));
  }
  return s;
}

inline KSSet table1() {
  KSSet s;
  for (const auto& row : table1_rows()) {
    ProjectorBasis b;
    for (auto [i, j] : row.pairs) b.push_back(Projector::rank2(i, j));
    for (int r : row.singles) b.push_back(Projector::rank1(r));
    s.bases.push_back(std::move(b));
    s.labels.push_back(row.label);
  }
  return s;
}

/// Load-time consistency checks; a failure here means the embedded data is wrong.
inline void check_fixture(const KSSet& s, std::string_view name) {
  const auto mult = s.multiplicities();
  if (name == "table2") {
    std::map<int, int> profile;
    for (auto [p, m] : mult) ++profile[m];
    if (s.bases.size() != 11 || profile != std::map<int, int>{{2, 28}, {4, 8}} || s.slot_count() != 88)
      throw Error(ErrorKind::StructureError, "table2 fixture is inconsistent");
  } else {
    const bool twice = std::all_of(mult.begin(), mult.end(), [](const auto& kv) { return kv.second == 2; });
    if (s.bases.size() != 11 || s.slot_count() != 60 || !twice)
      throw Error(ErrorKind::StructureError, "table1 fixture is inconsistent");
  }
}

inline KSSet fixture_data(std::string_view name) {
  KSSet s;
  if (name == "table1") s = table1();
  else if (name == "table2") s = table2();
  else throw std::invalid_argument("unknown fixture: " + std::string(name));
  check_fixture(s, name);
  s.provenance.parent = "fixture:" + std::string(name);
  return s;
}

}  // namespace ksforge::fixtures
