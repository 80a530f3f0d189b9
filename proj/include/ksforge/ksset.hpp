#pragma once

// Projectors, projector bases and KS sets over abstract ray ids.

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ksforge/errors.hpp"

namespace ksforge {

/// Rank-1 projector {i} or rank-2 projector {i, j} with i < j.
class Projector {
 public:
  Projector() = default;

  static Projector rank1(int r) { return Projector(r, 0); }

  static Projector rank2(int i, int j) {
    if (i == j) throw std::invalid_argument("rank-2 projector needs two distinct rays");
    return i < j ? Projector(i, j) : Projector(j, i);
  }

  int rank() const { return second_ == 0 ? 1 : 2; }
  int first() const { return first_; }
  int second() const { return second_; }

  bool contains(int r) const { return first_ == r || second_ == r; }

  std::vector<int> rays() const {
    if (second_ == 0) return {first_};
    return {first_, second_};
  }

  std::string str() const {
    if (second_ == 0) return std::to_string(first_);
    return "(" + std::to_string(first_) + "," + std::to_string(second_) + ")";
  }

  friend bool operator==(const Projector&, const Projector&) = default;
  friend auto operator<=>(const Projector&, const Projector&) = default;

 private:
  Projector(int a, int b) : first_(a), second_(b) {}
  int first_ = 0;
  int second_ = 0;  // 0 for rank 1
};

using ProjectorBasis = std::vector<Projector>;
using CanonicalForm = std::vector<ProjectorBasis>;

struct MergeConfig {
  std::vector<std::pair<int, int>> i_matching;  // (gamma ray, not-gamma ray), ascending by gamma
  std::vector<std::pair<int, int>> v_choice;    // (delta ray, V partner), ascending by delta

  friend bool operator==(const MergeConfig&, const MergeConfig&) = default;
  friend auto operator<=>(const MergeConfig&, const MergeConfig&) = default;
};

/// Where a set came from. `parent` names a fixture ("fixture:table2") or an
/// enumerated parent ("parent:17"); fixture-derived sets use fixture ray ids.
struct Provenance {
  std::string parent;                      // e.g. "fixture:table2" or "parent:17"
  std::optional<MergeConfig> config;
  std::optional<std::pair<int, int>> split;

  bool empty() const { return parent.empty() && !config && !split; }
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct KSSet {
  std::vector<ProjectorBasis> bases;
  std::vector<int> labels;  // optional per-basis ids, parallel to `bases`
  Provenance provenance;

  std::map<Projector, int> multiplicities() const {
    std::map<Projector, int> m;
    for (const auto& b : bases)
      for (const auto& p : b) ++m[p];
    return m;
  }

  int slot_count() const {
    int n = 0;
    for (const auto& b : bases) n += static_cast<int>(b.size());
    return n;
  }

  /// Sorted projectors within each basis, then sorted bases.
  CanonicalForm canonical() const {
    CanonicalForm c = bases;
    for (auto& b : c) std::sort(b.begin(), b.end());
    std::sort(c.begin(), c.end());
    return c;
  }

  /// Every ray mentioned by any projector, ascending.
  std::vector<int> rays() const {
    std::vector<int> out;
    for (const auto& b : bases)
      for (const auto& p : b)
        for (int r : p.rays()) out.push_back(r);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  static KSSet from_rank1(const std::vector<std::vector<int>>& rows, std::vector<int> labels = {}) {
    KSSet s;
    for (const auto& row : rows) {
      ProjectorBasis b;
      for (int r : row) b.push_back(Projector::rank1(r));
      s.bases.push_back(std::move(b));
    }
    s.labels = std::move(labels);
    return s;
  }
};

/// Applies a ray relabeling to every projector.
template <class Map>
KSSet relabel(const KSSet& s, const Map& map) {
  KSSet out = s;
  for (auto& b : out.bases)
    for (auto& p : b) p = p.rank() == 1 ? Projector::rank1(map(p.first())) : Projector::rank2(map(p.first()), map(p.second()));
  return out;
}

// ---------------------------------------------------------------------------
// Signatures such as "16_2 [14_2] - 1_4 4_5 6_6".

struct Signature {
  std::map<int, int> rank1;  // multiplicity -> number of rank-1 projectors
  std::map<int, int> rank2;  // multiplicity -> number of rank-2 projectors
  std::map<int, int> sizes;  // basis size -> number of bases

  std::string str() const {
    std::string s;
    auto term = [&](int count, int sub, bool bracket) {
      if (!s.empty()) s += ' ';
      const std::string t = std::to_string(count) + "_" + std::to_string(sub);
      s += bracket ? "[" + t + "]" : t;
    };
    for (auto [mult, count] : rank1) term(count, mult, false);
    for (auto [mult, count] : rank2) term(count, mult, true);
    s += s.empty() ? "-" : " -";
    for (auto [size, count] : sizes) {
      s += ' ';
      s += std::to_string(count) + "_" + std::to_string(size);
    }
    return s;
  }

  /// Sum of count * multiplicity over both projector profiles.
  int weighted_projector_total() const {
    int t = 0;
    for (auto [m, c] : rank1) t += m * c;
    for (auto [m, c] : rank2) t += m * c;
    return t;
  }

  int slot_total() const {
    int t = 0;
    for (auto [size, c] : sizes) t += size * c;
    return t;
  }

  friend bool operator==(const Signature&, const Signature&) = default;
};

inline Signature signature_of(const KSSet& s) {
  Signature sig;
  for (const auto& [p, mult] : s.multiplicities()) ++(p.rank() == 1 ? sig.rank1 : sig.rank2)[mult];
  for (const auto& b : s.bases) ++sig.sizes[static_cast<int>(b.size())];
  return sig;
}

inline constexpr const char* kParentSignature = "28_2 8_4 - 11_8";
inline constexpr const char* kChildSignature = "16_2 [14_2] - 1_4 4_5 6_6";
inline constexpr const char* kSplitSignature = "18_2 [13_2] - 1_4 4_5 4_6 2_7";

/// Odd basis count and every projector of even multiplicity.
inline bool is_parity_proof(const KSSet& s) {
  if (s.bases.size() % 2 == 0) return false;
  for (const auto& [p, m] : s.multiplicities())
    if (m % 2 != 0) return false;
  return true;
}

}  // namespace ksforge
