#pragma once

// Value-assignment arguments: parity counting, exhaustive exact-one search,
// and the pre/post-selected state-dependent argument on a split set.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ksforge/algebra.hpp"
#include "ksforge/errors.hpp"
#include "ksforge/ksset.hpp"
#include "ksforge/parallel.hpp"
#include "ksforge/ray_system.hpp"

namespace ksforge {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational reduced(std::int64_t n, std::int64_t d) {
    const std::int64_t g = std::gcd(n, d);
    if (g == 0) return {0, 1};
    if (d < 0) return {-n / g, -d / g};
    return {n / g, d / g};
  }
  bool is_zero() const { return num == 0; }
  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// |<q|p>|^2 / (<p|p><q|q>), exactly.
inline Rational overlap_probability(const Vec8& p, const Vec8& q) {
  return Rational::reduced(inner(q, p).norm(), detail::mul(norm2(p), norm2(q)));
}

/// Ray vectors and orthogonality for the ids a set is written in (either the
/// generated numbering or a fixture numbering bridged by a RelabelMap).
class RayGeometry {
 public:
  RayGeometry() = default;

  explicit RayGeometry(std::map<int, Vec8> rays) : rays_(std::move(rays)) {
    for (const auto& [a, va] : rays_) {
      if (a < 1 || a > kNumRays) throw std::invalid_argument("ray id out of range");
      for (const auto& [b, vb] : rays_)
        if (a != b && inner(va, vb).is_zero()) orth_[a] |= ray_bit(b);
    }
  }

  static RayGeometry generated(const RaySystem& sys) {
    std::map<int, Vec8> m;
    for (const auto& r : sys.rays) m[r.id] = r.v;
    return RayGeometry(std::move(m));
  }

  /// Fixture ids realized through `map`.
  static RayGeometry relabeled(const RaySystem& sys, const RelabelMap& map) {
    std::map<int, Vec8> m;
    for (const auto& [from, to] : map.to) m[from] = sys.ray(to).v;
    return RayGeometry(std::move(m));
  }

  bool has(int id) const { return rays_.count(id) != 0; }
  const Vec8& vector(int id) const {
    auto it = rays_.find(id);
    if (it == rays_.end()) throw Error(ErrorKind::NotPresent, "no geometry for ray " + std::to_string(id));
    return it->second;
  }
  RayMask orth_mask(int id) const { return orth_[id]; }
  bool orthogonal(int a, int b) const { return (orth_[a] & ray_bit(b)) != 0; }

  /// A projector is orthogonal to a ray iff each of its rays is.
  bool orthogonal(const Projector& p, int ray) const {
    for (int r : p.rays())
      if (!orthogonal(r, ray)) return false;
    return true;
  }

  Rational overlap(int a, int b) const { return overlap_probability(vector(a), vector(b)); }

  std::vector<RealizedProjector> realize(const ProjectorBasis& basis) const {
    std::vector<RealizedProjector> out;
    for (const auto& p : basis) {
      RealizedProjector rp;
      for (int r : p.rays()) rp.push_back(vector(r));
      out.push_back(std::move(rp));
    }
    return out;
  }

 private:
  std::map<int, Vec8> rays_;
  std::array<RayMask, kNumRays + 1> orth_{};
};

/// Exact identity-sum check on every basis of a set.
inline bool all_bases_sum_to_identity(const KSSet& s, const RayGeometry& geo) {
  for (const auto& b : s.bases) {
    const auto realized = geo.realize(b);
    if (!projector_sum_check(realized)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

enum class ProofKind { Parity, Exhaustive, StateDependent };

inline const char* to_string(ProofKind k) {
  switch (k) {
    case ProofKind::Parity: return "parity";
    case ProofKind::Exhaustive: return "exhaustive";
    case ProofKind::StateDependent: return "state-dependent";
  }
  return "?";
}

/// One surviving basis after pre/post-selection: sum of lhs values = 1.
using Equation = std::vector<Projector>;

struct ProofReport {
  ProofKind kind = ProofKind::Parity;
  bool contradiction = false;
  std::vector<Projector> used_projectors;
  std::string witness;

  // exhaustive
  long satisfying_assignments = -1;

  // state-dependent
  int pre = 0;
  int post = 0;
  std::vector<Projector> orthogonal_to_pre;   // rank-1 projectors valued 0 via pre
  std::vector<Projector> orthogonal_to_post;  // rank-1 projectors valued 0 via post only
  std::vector<Equation> residual;
  std::vector<Projector> residual_projectors;
  std::optional<Rational> probability;
};

/// Certifies the contradiction by counting: every projector has even
/// multiplicity, so the left-hand sides sum to an even number, while there is
/// an odd number of right-hand sides v(I) = 1.
inline ProofReport parity_contradiction(const KSSet& s) {
  const auto mult = s.multiplicities();
  if (s.bases.size() % 2 == 0) throw Error(ErrorKind::NotParityForm, std::to_string(s.bases.size()) + " bases (even)");
  for (const auto& [p, m] : mult)
    if (m % 2 != 0) throw Error(ErrorKind::NotParityForm, "projector " + p.str() + " occurs " + std::to_string(m) + " times");
  ProofReport r;
  r.kind = ProofKind::Parity;
  r.contradiction = true;
  for (const auto& [p, m] : mult) r.used_projectors.push_back(p);
  r.witness = "even vs " + std::to_string(s.bases.size());
  return r;
}

namespace detail {

/// Counts 0/1 assignments to `n` items such that every group has exactly one
/// item valued 1. Branches on the open group with fewest free items.
class ExactOneCounter {
 public:
  ExactOneCounter(int n, std::vector<std::vector<int>> groups) : groups_(std::move(groups)), groups_of_(n) {
    for (int g = 0; g < static_cast<int>(groups_.size()); ++g)
      for (int item : groups_[g]) groups_of_[item].push_back(g);
  }

  long count() {
    State st{std::vector<std::int8_t>(groups_of_.size(), -1), std::vector<bool>(groups_.size(), false)};
    return search(st);
  }

 private:
  struct State {
    std::vector<std::int8_t> value;
    std::vector<bool> done;
  };

  long search(const State& st) const {
    int best = -1;
    int best_free = 1 << 30;
    for (int g = 0; g < static_cast<int>(groups_.size()); ++g) {
      if (st.done[g]) continue;
      int free = 0;
      for (int item : groups_[g]) free += st.value[item] < 0;
      if (free == 0) return 0;
      if (free < best_free) {
        best_free = free;
        best = g;
      }
    }
    if (best < 0) {
      // every group has its 1; items outside all groups are unconstrained
      long free_items = 0;
      for (std::size_t i = 0; i < st.value.size(); ++i) free_items += groups_of_[i].empty();
      return 1L << free_items;
    }
    long total = 0;
    for (int item : groups_[best]) {
      if (st.value[item] >= 0) continue;
      State next = st;
      next.value[item] = 1;
      for (int g : groups_of_[item]) {
        next.done[g] = true;
        for (int other : groups_[g])
          if (other != item) next.value[other] = 0;
      }
      total += search(next);
    }
    return total;
  }

  std::vector<std::vector<int>> groups_;
  std::vector<std::vector<int>> groups_of_;
};

inline long count_exact_one(const std::vector<Equation>& equations) {
  std::map<Projector, int> index;
  for (const auto& e : equations)
    for (const auto& p : e) index.emplace(p, static_cast<int>(index.size()));
  std::vector<std::vector<int>> groups;
  for (const auto& e : equations) {
    groups.push_back({});
    for (const auto& p : e) groups.back().push_back(index.at(p));
  }
  return ExactOneCounter(static_cast<int>(index.size()), std::move(groups)).count();
}

}  // namespace detail

/// Number of noncontextual 0/1 assignments with exactly one 1 per basis.
inline long exhaustive_noncolorability(const KSSet& s) { return detail::count_exact_one(s.bases); }

inline ProofReport exhaustive_report(const KSSet& s) {
  ProofReport r;
  r.kind = ProofKind::Exhaustive;
  r.satisfying_assignments = exhaustive_noncolorability(s);
  r.contradiction = r.satisfying_assignments == 0;
  for (const auto& [p, m] : s.multiplicities()) r.used_projectors.push_back(p);
  r.witness = std::to_string(r.satisfying_assignments) + " consistent assignments";
  return r;
}

/// Replaces both occurrences of rank-2 (i, j) by rank-1 i and j.
inline KSSet split_rank2(const KSSet& s, int i, int j) {
  const Projector target = Projector::rank2(i, j);
  KSSet out = s;
  bool found = false;
  for (auto& b : out.bases) {
    auto it = std::find(b.begin(), b.end(), target);
    if (it == b.end()) continue;
    found = true;
    b.erase(it);
    b.push_back(Projector::rank1(target.first()));
    b.push_back(Projector::rank1(target.second()));
  }
  if (!found) throw Error(ErrorKind::NotPresent, "rank-2 projector " + target.str() + " not in set");
  out.provenance.split = std::pair{target.first(), target.second()};
  return out;
}

/// Inverse of split_rank2: merges rank-1 i and j wherever both occur.
inline KSSet merge_rank2(const KSSet& s, int i, int j) {
  const Projector pi = Projector::rank1(i), pj = Projector::rank1(j), merged = Projector::rank2(i, j);
  KSSet out = s;
  bool found = false;
  for (auto& b : out.bases) {
    auto a = std::find(b.begin(), b.end(), pi);
    auto c = std::find(b.begin(), b.end(), pj);
    if (a == b.end() || c == b.end()) continue;
    found = true;
    std::erase_if(b, [&](const Projector& p) { return p == pi || p == pj; });
    b.push_back(merged);
  }
  if (!found) throw Error(ErrorKind::NotPresent, "rays " + std::to_string(i) + "," + std::to_string(j) + " never co-occur");
  out.provenance.split.reset();
  return out;
}

namespace detail {

struct PreparedSet {
  std::vector<Projector> projectors;      // distinct, ascending
  std::vector<RayMask> masks;             // rays of each projector
  std::vector<std::vector<int>> bases;    // projector indices per basis
  RayMask all_rays = 0;

  explicit PreparedSet(const KSSet& s) {
    for (const auto& [p, m] : s.multiplicities()) {
      projectors.push_back(p);
      masks.push_back(ray_mask(p.rays()));
      all_rays |= masks.back();
    }
    for (const auto& b : s.bases) {
      bases.push_back({});
      for (const auto& p : b)
        bases.back().push_back(static_cast<int>(std::lower_bound(projectors.begin(), projectors.end(), p) - projectors.begin()));
    }
  }

  bool has_ray(int r) const { return (all_rays & ray_bit(r)) != 0; }
};

inline ProofReport run_state_dependent(const PreparedSet& ps, int pre, int post, const RayGeometry& geo,
                                       const Rational& probability) {
  ProofReport r;
  r.kind = ProofKind::StateDependent;
  r.pre = pre;
  r.post = post;
  r.probability = probability;

  const RayMask orth_pre = geo.orth_mask(pre), orth_post = geo.orth_mask(post);
  const std::size_t n = ps.projectors.size();
  std::vector<std::int8_t> value(n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& p = ps.projectors[k];
    // P|pre> = |pre> when pre is one of P's rays
    const bool one = p.contains(pre) || p.contains(post);
    const bool zero_pre = (ps.masks[k] & ~orth_pre) == 0;
    const bool zero_post = (ps.masks[k] & ~orth_post) == 0;
    if (one && (zero_pre || zero_post)) throw std::logic_error("projector assigned both 0 and 1");
    if (one) value[k] = 1;
    else if (zero_pre || zero_post) value[k] = 0;
    if (p.rank() == 1 && zero_pre) r.orthogonal_to_pre.push_back(p);
    else if (p.rank() == 1 && zero_post) r.orthogonal_to_post.push_back(p);
  }

  bool empty_equation = false;
  std::set<Projector> survivors;
  for (const auto& b : ps.bases) {
    bool has_one = false;
    Equation e;
    for (int k : b) {
      if (value[k] == 1) has_one = true;
      else if (value[k] < 0) e.push_back(ps.projectors[k]);
    }
    if (has_one) {
      if (!e.empty()) throw std::logic_error("basis holds a valued-1 projector and an undetermined one");
      continue;
    }
    if (e.empty()) empty_equation = true;
    std::sort(e.begin(), e.end());
    survivors.insert(e.begin(), e.end());
    r.residual.push_back(std::move(e));
  }
  std::sort(r.residual.begin(), r.residual.end());
  r.residual_projectors.assign(survivors.begin(), survivors.end());

  const long sat = empty_equation ? 0 : count_exact_one(r.residual);
  r.satisfying_assignments = sat;
  r.contradiction = sat == 0;

  std::map<Projector, int> mult;
  for (const auto& e : r.residual)
    for (const auto& p : e) ++mult[p];
  const bool parity_shaped = r.residual.size() % 2 == 1 && !mult.empty() &&
                             std::all_of(mult.begin(), mult.end(), [](const auto& kv) { return kv.second % 2 == 0; });
  if (!r.contradiction) r.witness = "residual satisfiable";
  else if (parity_shaped) r.witness = "even vs " + std::to_string(r.residual.size());
  else r.witness = "residual unsatisfiable";

  std::set<Projector> used{Projector::rank1(pre), Projector::rank1(post)};
  used.insert(r.orthogonal_to_pre.begin(), r.orthogonal_to_pre.end());
  used.insert(r.orthogonal_to_post.begin(), r.orthogonal_to_post.end());
  used.insert(survivors.begin(), survivors.end());
  r.used_projectors.assign(used.begin(), used.end());
  return r;
}

}  // namespace detail

/// Pre-selects `pre` and post-selects `post`: every projector having either
/// ray as a constituent is valued 1, every projector orthogonal to either is
/// valued 0, and the surviving equations are decided exhaustively. A
/// satisfiable residual is reported with contradiction=false.
inline ProofReport state_dependent_proof(const KSSet& s, int pre, int post, const RayGeometry& geo) {
  const detail::PreparedSet ps(s);
  if (!ps.has_ray(pre) || !ps.has_ray(post))
    throw Error(ErrorKind::NotPresent, "pre/post rays must occur in the set");
  const Rational prob = geo.overlap(pre, post);
  if (prob.is_zero()) throw Error(ErrorKind::OverlapZero, std::to_string(pre) + " and " + std::to_string(post) + " are orthogonal");
  return detail::run_state_dependent(ps, pre, post, geo, prob);
}

struct StateDependentHit {
  std::size_t child = 0;
  std::pair<int, int> split;
  int pre = 0;
  int post = 0;
  int used = 0;
  Rational probability;

  friend bool operator==(const StateDependentHit&, const StateDependentHit&) = default;
};

/// Every (child, rank-2 split, ordered non-orthogonal pre/post pair) whose
/// residual is unsatisfiable, ordered by child, split, pre, post.
inline std::vector<StateDependentHit> search_state_dependent(const std::vector<KSSet>& children, const RayGeometry& geo,
                                                             int workers = default_workers()) {
  if (children.empty()) throw std::invalid_argument("empty catalog");
  std::vector<std::vector<StateDependentHit>> per_child(children.size());
  parallel_for(static_cast<int>(children.size()), workers, [&](int c) {
    std::set<Projector> rank2;
    for (const auto& b : children[c].bases)
      for (const auto& p : b)
        if (p.rank() == 2) rank2.insert(p);
    for (const auto& pair : rank2) {
      const KSSet split = split_rank2(children[c], pair.first(), pair.second());
      const detail::PreparedSet ps(split);
      const auto rays = mask_rays(ps.all_rays);
      for (int pre : rays)
        for (int post : rays) {
          if (pre == post) continue;
          const Rational prob = geo.overlap(pre, post);
          if (prob.is_zero()) continue;
          const auto rep = detail::run_state_dependent(ps, pre, post, geo, prob);
          if (rep.contradiction)
            per_child[c].push_back({static_cast<std::size_t>(c), {pair.first(), pair.second()}, pre, post,
                                    static_cast<int>(rep.used_projectors.size()), prob});
        }
    }
  });
  std::vector<StateDependentHit> hits;
  for (auto& v : per_child) hits.insert(hits.end(), v.begin(), v.end());
  return hits;
}

}  // namespace ksforge
