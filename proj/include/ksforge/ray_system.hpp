#pragma once

// The 40-ray / 25-basis three-qubit system: joint eigenbases of the five
// Mermin pentagram lines plus the hybrid bases glued along shared operators.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ksforge/algebra.hpp"
#include "ksforge/errors.hpp"

namespace ksforge {

inline constexpr int kNumRays = 40;
inline constexpr int kNumBases = 25;
inline constexpr int kNumOctads = 5;

using RayMask = std::uint64_t;  // bit (id - 1) for ray id

inline RayMask ray_bit(int id) { return RayMask{1} << (id - 1); }

template <class Range>
RayMask ray_mask(const Range& ids) {
  RayMask m = 0;
  for (int id : ids) m |= ray_bit(id);
  return m;
}

inline std::vector<int> mask_rays(RayMask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

/// Octad (1..5) of a ray id under the block numbering 8(k-1)+1 .. 8k.
inline int octad_of(int ray_id) { return (ray_id - 1) / 8 + 1; }

struct Ray {
  int id = 0;
  Vec8 v{};
  int octad = 0;
};

enum class BasisKind { Pure, Hybrid };

struct Basis {
  int id = 0;
  BasisKind kind = BasisKind::Pure;
  std::array<int, 8> rays{};  // ascending

  RayMask mask() const { return ray_mask(rays); }
  friend bool operator==(const Basis&, const Basis&) = default;
};

struct PentagramLine {
  std::array<PauliWord, 4> members;

  /// Product of the four members' matrices (in member order).
  Mat8 product() const {
    Mat8 m = Mat8::identity();
    for (const auto& w : members) m = m * pauli_matrix(w);
    return m;
  }

  bool contains(const PauliWord& w) const {
    return std::find(members.begin(), members.end(), w) != members.end();
  }
};

/// The five lines of the three-qubit Mermin pentagram. Line k spans octad k.
inline std::vector<PentagramLine> pentagram_lines() {
  auto line = [](const char* a, const char* b, const char* c, const char* d) {
    return PentagramLine{{PauliWord::parse(a), PauliWord::parse(b), PauliWord::parse(c),
                          PauliWord::parse(d)}};
  };
  return {
      line("X11", "1X1", "11X", "XXX"),
      line("X11", "1Y1", "11Y", "XYY"),
      line("Y11", "1X1", "11Y", "YXY"),
      line("Y11", "1Y1", "11X", "YYX"),
      line("XXX", "XYY", "YXY", "YYX"),
  };
}

/// Orthogonality graph over ray ids 1..40 as adjacency bitmasks.
class OrthGraph {
 public:
  OrthGraph() = default;

  static OrthGraph from_rays(std::span<const Ray> rays) {
    OrthGraph g;
    for (const auto& a : rays) {
      g.active_ |= ray_bit(a.id);
      for (const auto& b : rays)
        if (a.id != b.id && inner(a.v, b.v).is_zero()) g.adj_[a.id - 1] |= ray_bit(b.id);
    }
    return g;
  }

  bool edge(int i, int j) const { return (adj_[i - 1] & ray_bit(j)) != 0; }
  RayMask neighbours(int i) const { return adj_[i - 1] & active_; }
  RayMask active() const { return active_; }

  /// The same graph with one ray deleted.
  OrthGraph without(int id) const {
    OrthGraph g = *this;
    g.active_ &= ~ray_bit(id);
    g.adj_[id - 1] = 0;
    for (auto& row : g.adj_) row &= ~ray_bit(id);
    return g;
  }

 private:
  std::array<RayMask, kNumRays> adj_{};
  RayMask active_ = 0;
};

namespace detail {

inline std::int64_t gcd_parts(const Vec8& v) {
  std::int64_t g = 0;
  for (const auto& z : v) g = std::gcd(g, std::gcd(z.re < 0 ? -z.re : z.re, z.im < 0 ? -z.im : z.im));
  return g;
}

/// Normalizes a nonzero vector: first nonzero component becomes a positive
/// integer, then the common integer content is divided out.
inline Vec8 normalize_ray(Vec8 v) {
  auto it = std::find_if(v.begin(), v.end(), [](const GaussInt& z) { return !z.is_zero(); });
  const GaussInt phase = it->conj();
  for (auto& z : v) z = z * phase;
  const std::int64_t g = gcd_parts(v);
  for (auto& z : v) {
    z.re /= g;
    z.im /= g;
  }
  return v;
}

inline int eigenvalue(const Mat8& m, const Vec8& v) {
  const Vec8 mv = m * v;
  if (mv == v) return +1;
  Vec8 neg = v;
  for (auto& z : neg) z = -z;
  if (mv == neg) return -1;
  return 0;
}

}  // namespace detail

/// Joint eigenvectors of each pentagram line, ids 8(k-1)+1..8k for line k.
inline std::vector<Ray> generate_rays() {
  const auto lines = pentagram_lines();
  std::vector<Ray> rays;
  rays.reserve(kNumRays);
  for (int k = 0; k < kNumOctads; ++k) {
    const auto& line = lines[k];
    std::array<Mat8, 3> ops;
    for (int j = 0; j < 3; ++j) ops[j] = pauli_matrix(line.members[j]);

    std::vector<Vec8> octad;
    for (int signs = 0; signs < 8; ++signs) {
      // 8 * (joint eigenprojector) = prod_j (I + s_j M_j)
      Mat8 p = Mat8::identity();
      for (int j = 0; j < 3; ++j) {
        const GaussInt s{(signs >> j) & 1 ? -1 : +1};
        p = p * (Mat8::identity() + s * ops[j]);
      }
      if (p.trace() != GaussInt{kProjectorScale})
        throw Error(ErrorKind::DegenerateEigenspace,
                    "line " + std::to_string(k + 1) + " sign pattern " + std::to_string(signs));
      int col = 0;
      while (is_zero(p.column(col))) ++col;
      Vec8 v = detail::normalize_ray(p.column(col));
      for (const auto& z : v)
        if (z.norm() > 1) throw Error(ErrorKind::DegenerateEigenspace, "non-unit ray component");
      octad.push_back(v);
    }
    std::sort(octad.begin(), octad.end());
    for (int j = 0; j < 8; ++j) rays.push_back(Ray{8 * k + j + 1, octad[j], k + 1});
  }
  return rays;
}

inline bool mutually_orthogonal(std::span<const Ray> rays, std::span<const int> ids) {
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = a + 1; b < ids.size(); ++b)
      if (!inner(rays[ids[a] - 1].v, rays[ids[b] - 1].v).is_zero()) return false;
  return true;
}

/// Pure bases 1..5 (the octads), then for every pair of lines sharing an
/// operator O and each sign s: octad-A rays with O = s joined to octad-B rays
/// with O = -s. Hybrid ids 6..25 in line-pair order, sign + before -.
inline std::vector<Basis> enumerate_bases_constructive(std::span<const Ray> rays) {
  const auto lines = pentagram_lines();
  std::vector<Basis> bases;
  for (int k = 0; k < kNumOctads; ++k) {
    Basis b{k + 1, BasisKind::Pure, {}};
    std::iota(b.rays.begin(), b.rays.end(), 8 * k + 1);
    bases.push_back(b);
  }
  for (int a = 0; a < kNumOctads; ++a)
    for (int b = a + 1; b < kNumOctads; ++b) {
      const auto shared = std::find_if(lines[a].members.begin(), lines[a].members.end(),
                                       [&](const PauliWord& w) { return lines[b].contains(w); });
      const Mat8 op = pauli_matrix(*shared);
      for (int s : {+1, -1}) {
        std::vector<int> ids;
        for (int j = 1; j <= 8; ++j)
          if (detail::eigenvalue(op, rays[8 * a + j - 1].v) == s) ids.push_back(8 * a + j);
        for (int j = 1; j <= 8; ++j)
          if (detail::eigenvalue(op, rays[8 * b + j - 1].v) == -s) ids.push_back(8 * b + j);
        if (ids.size() != 8 || !mutually_orthogonal(rays, ids))
          throw Error(ErrorKind::NotOrthogonal, "hybrid basis for lines " + std::to_string(a + 1) +
                                                    "," + std::to_string(b + 1));
        Basis h{static_cast<int>(bases.size()) + 1, BasisKind::Hybrid, {}};
        std::copy(ids.begin(), ids.end(), h.rays.begin());
        std::sort(h.rays.begin(), h.rays.end());
        bases.push_back(h);
      }
    }
  return bases;
}

namespace detail {

inline void extend_clique(const OrthGraph& g, RayMask clique, int size, RayMask candidates,
                          std::vector<std::array<int, 8>>& out) {
  if (size == 8) {
    std::array<int, 8> ids{};
    const auto v = mask_rays(clique);
    std::copy(v.begin(), v.end(), ids.begin());
    out.push_back(ids);
    return;
  }
  if (std::popcount(candidates) < 8 - size) return;
  while (candidates) {
    const int v = std::countr_zero(candidates) + 1;
    candidates &= candidates - 1;
    extend_clique(g, clique | ray_bit(v), size + 1, candidates & g.neighbours(v), out);
  }
}

}  // namespace detail

/// All 8-cliques of the orthogonality graph, ascending lexicographically.
inline std::vector<std::array<int, 8>> enumerate_bases_clique_oracle(const OrthGraph& graph) {
  std::vector<std::array<int, 8>> out;
  detail::extend_clique(graph, 0, 0, graph.active(), out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Immutable generated system shared by every search module.
struct RaySystem {
  std::vector<Ray> rays;
  std::vector<Basis> bases;
  OrthGraph graph;

  static RaySystem build() {
    RaySystem s;
    s.rays = generate_rays();
    s.bases = enumerate_bases_constructive(s.rays);
    s.graph = OrthGraph::from_rays(s.rays);
    return s;
  }

  const Ray& ray(int id) const { return rays.at(id - 1); }
  const Basis& basis(int id) const { return bases.at(id - 1); }

  /// Basis id whose ray set equals `mask`, or 0.
  int find_basis(RayMask mask) const {
    for (const auto& b : bases)
      if (b.mask() == mask) return b.id;
    return 0;
  }

  std::vector<Vec8> vectors(std::span<const int> ids) const {
    std::vector<Vec8> out;
    for (int id : ids) out.push_back(ray(id).v);
    return out;
  }
};

/// Fixture ray id -> generated ray id.
struct RelabelMap {
  std::map<int, int> to;

  int operator()(int fixture_id) const {
    auto it = to.find(fixture_id);
    if (it == to.end()) throw Error(ErrorKind::NotPresent, "ray " + std::to_string(fixture_id) + " not in relabel map");
    return it->second;
  }
  bool contains(int fixture_id) const { return to.count(fixture_id) != 0; }
};

using FixtureBases = std::vector<std::array<int, 8>>;

/// True iff `map` is injective, octad-preserving and sends every fixture basis
/// exactly onto a generated basis.
inline bool is_valid_relabeling(const FixtureBases& fixture, std::span<const Basis> system,
                                const RelabelMap& map) {
  RayMask images = 0;
  for (const auto& [from, to] : map.to) {
    if (octad_of(from) != octad_of(to) || (images & ray_bit(to))) return false;
    images |= ray_bit(to);
  }
  for (const auto& fb : fixture) {
    RayMask m = 0;
    for (int r : fb) {
      if (!map.contains(r)) return false;
      m |= ray_bit(map(r));
    }
    if (std::none_of(system.begin(), system.end(), [&](const Basis& b) { return b.mask() == m; })) return false;
  }
  return true;
}

namespace detail {

struct EmbeddingSearch {
  const FixtureBases& fixture;
  std::vector<RayMask> targets;
  std::vector<int> order;                       // fixture rays in assignment order
  std::vector<std::vector<int>> bases_of_ray;   // indexed by position in `order`
  std::array<int, kNumRays + 1> image{};        // fixture id -> generated id (0 = unset)
  RayMask used = 0;

  bool consistent(int fixture_basis) const {
    RayMask m = 0;
    for (int r : fixture[fixture_basis])
      if (image[r]) m |= ray_bit(image[r]);
    return std::any_of(targets.begin(), targets.end(), [&](RayMask t) { return (m & ~t) == 0; });
  }

  bool assign(std::size_t pos) {
    if (pos == order.size()) return true;
    const int r = order[pos];
    const int first = 8 * (octad_of(r) - 1) + 1;
    for (int cand = first; cand < first + 8; ++cand) {
      if (used & ray_bit(cand)) continue;
      image[r] = cand;
      used |= ray_bit(cand);
      const bool ok = std::all_of(bases_of_ray[pos].begin(), bases_of_ray[pos].end(),
                                  [&](int fb) { return consistent(fb); });
      if (ok && assign(pos + 1)) return true;
      used &= ~ray_bit(cand);
      image[r] = 0;
    }
    return false;
  }
};

}  // namespace detail

/// Finds an octad-preserving injective relabeling under which every fixture
/// basis is a generated basis. Backtracks over rays in first-appearance order,
/// trying candidates ascending, so the result is deterministic.
inline RelabelMap match_fixture(const FixtureBases& fixture, std::span<const Basis> system) {
  detail::EmbeddingSearch s{fixture, {}, {}, {}, {}, 0};
  for (const auto& b : system) s.targets.push_back(b.mask());
  std::array<bool, kNumRays + 1> seen{};
  for (const auto& fb : fixture)
    for (int r : fb) {
      if (r < 1 || r > kNumRays) throw Error(ErrorKind::NoEmbedding, "fixture ray id out of range: " + std::to_string(r));
      if (!seen[r]) {
        seen[r] = true;
        s.order.push_back(r);
      }
    }
  for (int r : s.order) {
    std::vector<int> hosts;
    for (std::size_t i = 0; i < fixture.size(); ++i)
      if (std::find(fixture[i].begin(), fixture[i].end(), r) != fixture[i].end()) hosts.push_back(static_cast<int>(i));
    s.bases_of_ray.push_back(std::move(hosts));
  }
  if (!s.assign(0)) throw Error(ErrorKind::NoEmbedding, "fixture does not embed in the generated system");
  RelabelMap map;
  for (int r : s.order) map.to[r] = s.image[r];
  return map;
}

}  // namespace ksforge
