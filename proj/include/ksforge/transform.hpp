#pragma once

// Rank-1 parent (28_2 8_4 - 11_8) -> mixed-rank child (16_2 [14_2] - 1_4 4_5 6_6).
//
// A parent is put in canonical order [PB, HB_a, HB_b, HB_c, HB_d, rest]. The
// merge is fixed by two free choices: a matching of the four Gamma rays with
// the four not-Gamma rays of the pure basis (division I), and one V-row partner
// for each Delta ray (divisions IV-V). Every other pairing follows from those.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ksforge/errors.hpp"
#include "ksforge/ksset.hpp"
#include "ksforge/parallel.hpp"
#include "ksforge/parity.hpp"

namespace ksforge {

struct ParentAnalysis {
  int pb_id = 0;
  std::array<int, 4> gamma{};            // ascending
  std::array<int, 4> gamma_hosts{};      // HB hosting Gamma_a..Gamma_d
  std::array<int, 4> not_gamma{};        // ascending
  std::array<int, 4> not_gamma_hosts{};  // HB (one of gamma_hosts) holding each not-Gamma ray
  std::array<int, 4> delta{};            // ascending
  std::vector<int> hb_order;             // 11 basis ids

  /// Gamma_a = {g0,g1,g2}, Gamma_b = {g0,g1,g3}, Gamma_c = {g0,g2,g3}, Gamma_d = {g1,g2,g3}.
  std::array<int, 3> gamma_subset(int k) const {
    std::array<int, 3> s{};
    int n = 0;
    for (int j = 0; j < 4; ++j)
      if (j != 3 - k) s[n++] = gamma[j];
    return s;
  }

  bool in_gamma(int r) const { return std::find(gamma.begin(), gamma.end(), r) != gamma.end(); }
  bool in_not_gamma(int r) const { return std::find(not_gamma.begin(), not_gamma.end(), r) != not_gamma.end(); }
  bool in_delta(int r) const { return std::find(delta.begin(), delta.end(), r) != delta.end(); }
};

inline ParentAnalysis analyze_parent(const ParentKSSet& p) {
  ParentAnalysis a;
  std::vector<const Basis*> pure, hybrid;
  for (const auto& b : p.bases) (b.kind == BasisKind::Pure ? pure : hybrid).push_back(&b);
  if (pure.size() != 1) throw Error(ErrorKind::StructureError, "expected exactly one pure basis");
  const Basis& pb = *pure.front();
  a.pb_id = pb.id;

  std::vector<int> g, ng, d;
  int fours = 0;
  for (auto [r, m] : p.ray_multiplicity) {
    if (m != 4) continue;
    ++fours;
    const bool in_pb = std::find(pb.rays.begin(), pb.rays.end(), r) != pb.rays.end();
    (in_pb ? g : d).push_back(r);
  }
  if (fours != 8 || g.size() != 4 || d.size() != 4)
    throw Error(ErrorKind::StructureError, "multiplicity-4 rays do not split 4 + 4 across the pure basis");
  for (int r : pb.rays)
    if (std::find(g.begin(), g.end(), r) == g.end()) ng.push_back(r);
  std::copy(g.begin(), g.end(), a.gamma.begin());
  std::copy(ng.begin(), ng.end(), a.not_gamma.begin());
  std::copy(d.begin(), d.end(), a.delta.begin());

  auto has = [](const Basis& b, int r) { return std::find(b.rays.begin(), b.rays.end(), r) != b.rays.end(); };
  std::set<int> hosts;
  for (int k = 0; k < 4; ++k) {
    const auto sub = a.gamma_subset(k);
    std::vector<int> found;
    for (const Basis* b : hybrid)
      if (std::all_of(sub.begin(), sub.end(), [&](int r) { return has(*b, r); })) found.push_back(b->id);
    if (found.size() != 1)
      throw Error(ErrorKind::StructureError, "Gamma subset " + std::string(1, char('a' + k)) + " found in " +
                                                 std::to_string(found.size()) + " hybrid bases");
    a.gamma_hosts[k] = found.front();
    hosts.insert(found.front());
  }
  if (hosts.size() != 4) throw Error(ErrorKind::StructureError, "Gamma subsets share a hybrid basis");

  for (int j = 0; j < 4; ++j) {
    std::vector<int> found;
    for (int h : a.gamma_hosts)
      if (has(p.basis(h), a.not_gamma[j])) found.push_back(h);
    if (found.size() != 1)
      throw Error(ErrorKind::StructureError, "not-Gamma ray " + std::to_string(a.not_gamma[j]) + " not hosted once");
    a.not_gamma_hosts[j] = found.front();
  }

  a.hb_order.push_back(a.pb_id);
  a.hb_order.insert(a.hb_order.end(), a.gamma_hosts.begin(), a.gamma_hosts.end());
  std::vector<int> rest;
  for (const Basis* b : hybrid)
    if (!hosts.count(b->id)) rest.push_back(b->id);
  std::sort(rest.begin(), rest.end());
  a.hb_order.insert(a.hb_order.end(), rest.begin(), rest.end());
  return a;
}

// ---------------------------------------------------------------------------

enum Division { I = 0, II, III, IV, V, VI, VII, VIII };

inline const char* division_name(int d) {
  static const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII"};
  return names[d];
}

struct Slot {
  int basis = 0;
  int ray = 0;
  friend bool operator==(const Slot&, const Slot&) = default;
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

struct DeltaRow {
  int delta = 0;
  int host = 0;                  // the HB_a..d basis holding this Delta ray
  std::array<int, 3> v_rays{};   // multiplicity-2 rays of that basis in division V
};

struct DivisionPartition {
  std::array<std::vector<Slot>, 8> divisions;
  std::array<DeltaRow, 4> delta_rows{};  // parallel to ParentAnalysis::delta

  std::vector<int> distinct_rays(int d) const {
    std::set<int> s;
    for (const auto& slot : divisions[d]) s.insert(slot.ray);
    return {s.begin(), s.end()};
  }

  const DeltaRow& row_of(int delta) const {
    for (const auto& r : delta_rows)
      if (r.delta == delta) return r;
    throw Error(ErrorKind::NotPresent, "not a Delta ray: " + std::to_string(delta));
  }
};

inline constexpr std::array<int, 8> kDivisionSizes{8, 12, 4, 4, 12, 12, 12, 24};

inline DivisionPartition partition_divisions(const ParentKSSet& p, const ParentAnalysis& a) {
  DivisionPartition part;
  auto& div = part.divisions;
  for (int r : p.basis(a.pb_id).rays) div[I].push_back({a.pb_id, r});

  std::set<int> v_rays;
  for (int k = 1; k <= 4; ++k) {
    const int id = a.hb_order[k];
    std::vector<int> deltas, vs;
    for (int r : p.basis(id).rays) {
      if (a.in_gamma(r)) div[II].push_back({id, r});
      else if (a.in_not_gamma(r)) div[III].push_back({id, r});
      else if (a.in_delta(r)) {
        div[IV].push_back({id, r});
        deltas.push_back(r);
      } else {
        div[V].push_back({id, r});
        vs.push_back(r);
        v_rays.insert(r);
      }
    }
    if (deltas.size() != 1 || vs.size() != 3)
      throw Error(ErrorKind::StructureError, "HB " + std::to_string(id) + " does not hold one Delta ray and three V rays");
    const auto pos = std::find(a.delta.begin(), a.delta.end(), deltas.front()) - a.delta.begin();
    part.delta_rows[pos] = DeltaRow{deltas.front(), id, {vs[0], vs[1], vs[2]}};
  }

  std::map<int, int> tail_count;
  for (std::size_t k = 5; k < a.hb_order.size(); ++k) {
    const int id = a.hb_order[k];
    for (int r : p.basis(id).rays) {
      ++tail_count[r];
      if (a.in_delta(r)) div[VI].push_back({id, r});
      else if (v_rays.count(r)) div[VII].push_back({id, r});
      else div[VIII].push_back({id, r});
    }
  }
  for (int r : v_rays)
    if (tail_count[r] != 1)
      throw Error(ErrorKind::StructureError, "V ray " + std::to_string(r) + " recurs " + std::to_string(tail_count[r]) + " times");
  std::map<int, int> viii;
  for (const auto& s : div[VIII]) ++viii[s.ray];
  for (auto [r, c] : viii)
    if (c != 2) throw Error(ErrorKind::StructureError, "VIII ray " + std::to_string(r) + " occurs " + std::to_string(c) + " times");
  for (int d : a.delta)
    if (tail_count[d] != 3) throw Error(ErrorKind::StructureError, "Delta ray " + std::to_string(d) + " not thrice in VI");
  for (int d = 0; d < 8; ++d)
    if (static_cast<int>(div[d].size()) != kDivisionSizes[d])
      throw Error(ErrorKind::StructureError, std::string("division ") + division_name(d) + " has " +
                                                 std::to_string(div[d].size()) + " slots");
  return part;
}

/// The Gamma ray missing from the HB that hosts `not_gamma_ray`; pairing the
/// two in division I could never recur.
inline int forbidden_partner(const ParentAnalysis& a, int not_gamma_ray) {
  const auto j = std::find(a.not_gamma.begin(), a.not_gamma.end(), not_gamma_ray) - a.not_gamma.begin();
  if (j == 4) throw std::invalid_argument("not a not-Gamma ray: " + std::to_string(not_gamma_ray));
  const auto k = std::find(a.gamma_hosts.begin(), a.gamma_hosts.end(), a.not_gamma_hosts[j]) - a.gamma_hosts.begin();
  return a.gamma[3 - k];
}

// ---------------------------------------------------------------------------

/// Machine-checkable reason a merge configuration was rejected.
struct Violation {
  ErrorKind kind = ErrorKind::MultiplicityError;
  Projector projector;       // offending projector (Multiplicity, ForbiddenPair)
  int multiplicity = 0;      // its multiplicity in the assembled set
  int delta = 0;             // Ambiguity: the Delta ray
  std::vector<int> bases;    // Ambiguity: the two bases; ForbiddenPair: the host basis
  std::vector<int> common;   // Ambiguity: common multiplicity-2 rays found

  std::string str() const {
    switch (kind) {
      case ErrorKind::AmbiguityError: {
        std::string s = "Delta ray " + std::to_string(delta) + " has " + std::to_string(common.size()) + " common rays in bases";
        for (int b : bases) s += " " + std::to_string(b);
        return s;
      }
      case ErrorKind::ForbiddenPairError:
        return "pair " + projector.str() + " cannot recur: basis " + std::to_string(bases.at(0)) + " lacks " +
               std::to_string(projector.first()) + " or " + std::to_string(projector.second());
      default:
        return "projector " + projector.str() + " has multiplicity " + std::to_string(multiplicity);
    }
  }
};

class TransformError : public Error {
 public:
  explicit TransformError(Violation v) : Error(v.kind, v.str()), violation_(std::move(v)) {}
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

namespace detail {

inline void check_config(const ParentAnalysis& a, const DivisionPartition& part, const MergeConfig& cfg) {
  std::set<int> gs, ns, ds;
  for (auto [g, n] : cfg.i_matching) {
    if (!a.in_gamma(g) || !a.in_not_gamma(n)) throw std::invalid_argument("i_matching pair outside Gamma x not-Gamma");
    gs.insert(g);
    ns.insert(n);
  }
  if (cfg.i_matching.size() != 4 || gs.size() != 4 || ns.size() != 4)
    throw std::invalid_argument("i_matching is not a bijection Gamma -> not-Gamma");
  for (auto [d, v] : cfg.v_choice) {
    const auto& row = part.row_of(d);
    if (std::find(row.v_rays.begin(), row.v_rays.end(), v) == row.v_rays.end())
      throw std::invalid_argument("v_choice partner " + std::to_string(v) + " not in the V row of " + std::to_string(d));
    ds.insert(d);
  }
  if (cfg.v_choice.size() != 4 || ds.size() != 4) throw std::invalid_argument("v_choice must cover each Delta ray once");
}

}  // namespace detail

/// Assembles the projector bases for `cfg` without the final multiplicity
/// check. Throws TransformError for forbidden pairs and ambiguous VI-VIII
/// pairings. Bases follow `a.hb_order`.
inline KSSet assemble_child(const ParentKSSet& p, const ParentAnalysis& a, const DivisionPartition& part,
                            const MergeConfig& cfg) {
  detail::check_config(a, part, cfg);
  auto has = [&](int basis, int r) {
    const auto& rays = p.basis(basis).rays;
    return std::find(rays.begin(), rays.end(), r) != rays.end();
  };

  std::map<int, int> match;  // not-Gamma -> Gamma
  for (auto [g, n] : cfg.i_matching) {
    if (forbidden_partner(a, n) == g) {
      Violation v{ErrorKind::ForbiddenPairError, Projector::rank2(g, n), 1, 0, {a.not_gamma_hosts[std::find(a.not_gamma.begin(), a.not_gamma.end(), n) - a.not_gamma.begin()]}, {}};
      throw TransformError(std::move(v));
    }
    match[n] = g;
  }

  std::map<int, std::vector<std::pair<int, int>>> pairs;
  pairs[a.pb_id] = cfg.i_matching;

  std::map<int, int> partner;
  for (auto [d, v] : cfg.v_choice) partner[d] = v;

  for (int k = 0; k < 4; ++k) {
    const int hb = a.gamma_hosts[k];
    const auto sub = a.gamma_subset(k);
    const int n = *std::find_if(a.not_gamma.begin(), a.not_gamma.end(), [&](int r) { return has(hb, r); });
    const int g = match.at(n);
    pairs[hb].push_back({g, n});  // II-III
    std::vector<int> type_a;
    for (int r : sub)
      if (r != g) type_a.push_back(r);
    pairs[hb].push_back({type_a[0], type_a[1]});  // II type-A
  }
  for (const auto& row : part.delta_rows) pairs[row.host].push_back({row.delta, partner.at(row.delta)});  // IV-V

  const std::vector<int> tail(a.hb_order.begin() + 5, a.hb_order.end());
  for (int d : a.delta) {
    const int v = partner.at(d);
    std::vector<int> with_delta;
    int vii_base = 0;
    for (int b : tail) {
      if (has(b, d)) with_delta.push_back(b);
      if (has(b, v)) vii_base = b;
    }
    if (!has(vii_base, d)) {
      // (d, v) then occurs only in the V row.
      throw TransformError(Violation{ErrorKind::MultiplicityError, Projector::rank2(d, v), 1, 0, {}, {}});
    }
    pairs[vii_base].push_back({d, v});  // VI-VII
    std::vector<int> others;
    for (int b : with_delta)
      if (b != vii_base) others.push_back(b);
    std::vector<int> common;
    for (int r : p.basis(others[0]).rays)
      if (r != d && p.ray_multiplicity.at(r) == 2 && has(others[1], r)) common.push_back(r);
    if (common.size() != 1)
      throw TransformError(Violation{ErrorKind::AmbiguityError, Projector{}, 0, d, others, common});
    for (int b : others) pairs[b].push_back({d, common.front()});  // VI-VIII
  }

  KSSet child;
  for (int id : a.hb_order) {
    const auto& base_pairs = pairs[id];
    std::set<int> merged;
    ProjectorBasis pb;
    for (auto [x, y] : base_pairs) {
      if (!has(id, x) || !has(id, y) || merged.count(x) || merged.count(y))
        throw Error(ErrorKind::StructureError, "pairing conflict in basis " + std::to_string(id));
      merged.insert(x);
      merged.insert(y);
      pb.push_back(Projector::rank2(x, y));
    }
    for (int r : p.basis(id).rays)
      if (!merged.count(r)) pb.push_back(Projector::rank1(r));
    child.bases.push_back(std::move(pb));
    child.labels.push_back(id);
  }
  return child;
}

inline constexpr std::array<int, 11> kChildBasisSizes{4, 5, 5, 5, 5, 6, 6, 6, 6, 6, 6};

/// Builds and validates the child for one merge configuration.
inline KSSet derive_child(const ParentKSSet& p, const ParentAnalysis& a, const DivisionPartition& part,
                          const MergeConfig& cfg, std::string parent_name = {}) {
  KSSet child = assemble_child(p, a, part, cfg);
  for (const auto& [proj, m] : child.multiplicities())
    if (m != 2) throw TransformError(Violation{ErrorKind::MultiplicityError, proj, m, 0, {}, {}});

  std::vector<int> sizes;
  for (const auto& b : child.bases) sizes.push_back(static_cast<int>(b.size()));
  std::sort(sizes.begin(), sizes.end());
  if (!std::equal(sizes.begin(), sizes.end(), kChildBasisSizes.begin(), kChildBasisSizes.end()))
    throw Error(ErrorKind::StructureError, "child basis sizes are not {4, 5^4, 6^6}");
  child.provenance.parent = std::move(parent_name);
  child.provenance.config = cfg;
  return child;
}

inline KSSet derive_child(const ParentKSSet& p, const ParentAnalysis& a, const MergeConfig& cfg,
                          std::string parent_name = {}) {
  return derive_child(p, a, partition_divisions(p, a), cfg, std::move(parent_name));
}

// ---------------------------------------------------------------------------

struct FailureRecord {
  MergeConfig config;
  Violation violation;
};

/// Outcome of trying all 24 x 81 merge configurations on one parent.
struct CountCertificate {
  static constexpr int kClaimedDivisionIWays = 7;
  static constexpr int kClaimedIvVWays = 81;
  static constexpr int kClaimedChildren = 567;

  std::string parent;
  int total = 0;
  int successes = 0;
  std::map<std::string, int> failures_by_kind;
  int division_i_ways = 0;  // distinct i_matchings among successes
  int iv_v_ways = 0;        // distinct v_choices among successes
  std::vector<FailureRecord> failures;

  bool matches_claims() const {
    return division_i_ways == kClaimedDivisionIWays && iv_v_ways == kClaimedIvVWays && successes == kClaimedChildren;
  }
};

struct ChildEnumeration {
  std::vector<KSSet> children;
  CountCertificate certificate;
};

/// All 24 bijections Gamma -> not-Gamma (lexicographic over not-Gamma
/// permutations) x all 81 V-partner choices (odometer over Delta order).
inline std::vector<MergeConfig> candidate_configs(const ParentAnalysis& a, const DivisionPartition& part) {
  std::vector<MergeConfig> out;
  auto perm = a.not_gamma;
  do {
    MergeConfig base;
    for (int j = 0; j < 4; ++j) base.i_matching.push_back({a.gamma[j], perm[j]});
    for (int code = 0; code < 81; ++code) {
      MergeConfig cfg = base;
      int c = code;
      for (int j = 3; j >= 0; --j) {
        const auto& row = part.delta_rows[j];
        cfg.v_choice.insert(cfg.v_choice.begin(), {row.delta, row.v_rays[c % 3]});
        c /= 3;
      }
      out.push_back(std::move(cfg));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline ChildEnumeration enumerate_children(const ParentKSSet& p, std::string parent_name = {}) {
  const auto a = analyze_parent(p);
  const auto part = partition_divisions(p, a);
  ChildEnumeration out;
  auto& cert = out.certificate;
  cert.parent = parent_name;
  std::set<std::vector<std::pair<int, int>>> i_ways, v_ways;
  for (const auto& cfg : candidate_configs(a, part)) {
    ++cert.total;
    try {
      out.children.push_back(derive_child(p, a, part, cfg, parent_name));
      ++cert.successes;
      i_ways.insert(cfg.i_matching);
      v_ways.insert(cfg.v_choice);
    } catch (const TransformError& e) {
      ++cert.failures_by_kind[to_string(e.kind())];
      cert.failures.push_back({cfg, e.violation()});
    }
  }
  cert.division_i_ways = static_cast<int>(i_ways.size());
  cert.iv_v_ways = static_cast<int>(v_ways.size());
  return out;
}

/// Compact exact key of a canonical form, for deduplication.
inline std::vector<std::uint16_t> canonical_key(const KSSet& s) {
  std::vector<std::uint16_t> key;
  for (const auto& b : s.canonical()) {
    for (const auto& p : b) key.push_back(static_cast<std::uint16_t>(p.first() * 64 + p.second()));
    key.push_back(0xFFFF);
  }
  return key;
}

struct ChildCatalog {
  std::vector<int> per_parent;
  bool per_parent_equal = false;
  std::size_t distinct_children = 0;
  std::vector<CountCertificate> certificates;  // failure lists dropped unless requested
  std::vector<KSSet> children;                 // kept only when requested
};

struct CatalogOptions {
  bool keep_children = false;
  bool keep_failures = false;
  int workers = default_workers();
};

inline std::string parent_name(std::size_t index) { return "parent:" + std::to_string(index); }

inline ChildCatalog enumerate_all_children(const std::vector<ParentKSSet>& parents, const CatalogOptions& opt = {}) {
  std::vector<ChildEnumeration> runs(parents.size());
  std::vector<std::vector<std::vector<std::uint16_t>>> keys(parents.size());
  parallel_for(static_cast<int>(parents.size()), opt.workers, [&](int i) {
    runs[i] = enumerate_children(parents[i], parent_name(i));
    for (const auto& c : runs[i].children) keys[i].push_back(canonical_key(c));
    if (!opt.keep_children) runs[i].children.clear();
    if (!opt.keep_failures) runs[i].certificate.failures.clear();
  });
  ChildCatalog cat;
  std::vector<std::vector<std::uint16_t>> all;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    cat.per_parent.push_back(runs[i].certificate.successes);
    cat.certificates.push_back(std::move(runs[i].certificate));
    for (auto& c : runs[i].children) cat.children.push_back(std::move(c));
    for (auto& k : keys[i]) all.push_back(std::move(k));
  }
  std::sort(all.begin(), all.end());
  cat.distinct_children = static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
  cat.per_parent_equal = std::adjacent_find(cat.per_parent.begin(), cat.per_parent.end(), std::not_equal_to<>()) ==
                         cat.per_parent.end();
  return cat;
}

}  // namespace ksforge
