#pragma once

// Parity-proof predicate and exhaustive searches over subsets of the 25 bases.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ksforge/errors.hpp"
#include "ksforge/ksset.hpp"
#include "ksforge/parallel.hpp"
#include "ksforge/ray_system.hpp"

namespace ksforge {

/// Subset of basis ids 1..25; bit (id - 1).
struct BasisSubset {
  std::uint32_t mask = 0;

  int size() const { return std::popcount(mask); }
  bool contains(int basis_id) const { return (mask >> (basis_id - 1)) & 1u; }

  std::vector<int> ids() const {
    std::vector<int> out;
    for (int i = 0; i < kNumBases; ++i)
      if ((mask >> i) & 1u) out.push_back(i + 1);
    return out;
  }

  static BasisSubset of(const std::vector<int>& ids) {
    BasisSubset s;
    for (int id : ids) s.mask |= 1u << (id - 1);
    return s;
  }
};

inline KSSet subset_ksset(const RaySystem& sys, BasisSubset subset) {
  KSSet s;
  for (int id : subset.ids()) {
    const auto& b = sys.basis(id);
    s.bases.push_back({});
    for (int r : b.rays) s.bases.back().push_back(Projector::rank1(r));
    s.labels.push_back(id);
  }
  return s;
}

/// Odd number of bases, each ray an even number of times.
inline bool is_parity_proof(const RaySystem& sys, BasisSubset subset) {
  if (subset.size() % 2 == 0) return false;
  RayMask odd = 0;
  for (int id : subset.ids()) odd ^= sys.basis(id).mask();
  return odd == 0;
}

/// An 11-basis rank-1 KS set of type 28_2 8_4 - 11_8.
struct ParentKSSet {
  std::uint32_t mask = 0;  // basis-id subset when drawn from the generated system
  std::vector<Basis> bases;
  std::map<int, int> ray_multiplicity;

  /// Validates the parent invariants; throws StructureError.
  static ParentKSSet from_bases(std::vector<Basis> bases, std::uint32_t mask = 0) {
    ParentKSSet p;
    p.mask = mask;
    p.bases = std::move(bases);
    for (const auto& b : p.bases)
      for (int r : b.rays) ++p.ray_multiplicity[r];
    if (p.bases.size() != 11) throw Error(ErrorKind::StructureError, "parent needs 11 bases");
    int twos = 0, fours = 0;
    for (auto [r, m] : p.ray_multiplicity) {
      if (m == 2) ++twos;
      else if (m == 4) ++fours;
      else throw Error(ErrorKind::StructureError, "ray " + std::to_string(r) + " has multiplicity " + std::to_string(m));
    }
    if (twos != 28 || fours != 8) throw Error(ErrorKind::StructureError, "multiplicity profile is not 28x2 + 8x4");
    const auto pure = std::count_if(p.bases.begin(), p.bases.end(), [](const Basis& b) { return b.kind == BasisKind::Pure; });
    if (pure != 1) throw Error(ErrorKind::StructureError, "parent has " + std::to_string(pure) + " pure bases");
    return p;
  }

  static ParentKSSet from_subset(const RaySystem& sys, BasisSubset subset) {
    std::vector<Basis> bases;
    for (int id : subset.ids()) bases.push_back(sys.basis(id));
    return from_bases(std::move(bases), subset.mask);
  }

  const Basis& basis(int id) const {
    for (const auto& b : bases)
      if (b.id == id) return b;
    throw Error(ErrorKind::NotPresent, "basis " + std::to_string(id) + " not in parent");
  }

  KSSet as_ksset() const {
    KSSet s;
    for (const auto& b : bases) {
      s.bases.push_back({});
      for (int r : b.rays) s.bases.back().push_back(Projector::rank1(r));
      s.labels.push_back(b.id);
    }
    return s;
  }
};

inline Signature signature_of(const ParentKSSet& p) { return signature_of(p.as_ksset()); }

namespace detail {

struct SubsetWalker {
  std::vector<RayMask> basis_masks;  // index = basis id - 1

  // Visits every subset of {first..24} with `remaining` more members, given
  // accumulated parity / union masks.
  template <class Visit>
  void choose(int next, int remaining, std::uint32_t chosen, RayMask odd, RayMask any, Visit& visit) const {
    if (remaining == 0) {
      visit(chosen, odd, any);
      return;
    }
    for (int i = next; i <= kNumBases - remaining; ++i)
      choose(i + 1, remaining - 1, chosen | (1u << i), odd ^ basis_masks[i], any | basis_masks[i], visit);
  }

  template <class Visit>
  void up_to(int next, int size, int max_size, std::uint32_t chosen, RayMask odd, Visit& visit) const {
    visit(chosen, size, odd);
    if (size == max_size) return;
    for (int i = next; i < kNumBases; ++i)
      up_to(i + 1, size + 1, max_size, chosen | (1u << i), odd ^ basis_masks[i], visit);
  }
};

inline SubsetWalker make_walker(const RaySystem& sys) {
  SubsetWalker w;
  for (const auto& b : sys.bases) w.basis_masks.push_back(b.mask());
  return w;
}

}  // namespace detail

/// Exhaustive scan of all C(25,11) subsets for sets of type 28_2 8_4 - 11_8,
/// sorted by subset mask. Work is split by the lowest chosen basis.
inline std::vector<ParentKSSet> enumerate_parents(const RaySystem& sys, int workers = default_workers()) {
  const auto walker = detail::make_walker(sys);
  constexpr int kPick = 11;
  const int tasks = kNumBases - kPick + 1;
  std::vector<std::vector<std::uint32_t>> found(tasks);
  parallel_for(tasks, workers, [&](int first) {
    auto visit = [&](std::uint32_t chosen, RayMask odd, RayMask any) {
      if (odd == 0 && std::popcount(any) == 36) found[first].push_back(chosen);
    };
    walker.choose(first + 1, kPick - 1, 1u << first, walker.basis_masks[first], walker.basis_masks[first], visit);
  });
  std::vector<std::uint32_t> masks;
  for (const auto& f : found) masks.insert(masks.end(), f.begin(), f.end());
  std::sort(masks.begin(), masks.end());

  std::vector<ParentKSSet> parents;
  for (auto m : masks) {
    const BasisSubset subset{m};
    if (signature_of(subset_ksset(sys, subset)).str() != kParentSignature) continue;
    parents.push_back(ParentKSSet::from_subset(sys, subset));
  }
  return parents;
}

/// Counts every odd-size parity proof with at most `max_bases` bases by
/// signature string.
inline std::map<std::string, long> classify_parity_proofs(const RaySystem& sys, int max_bases,
                                                          int workers = default_workers()) {
  if (max_bases != 11 && max_bases != 13 && max_bases != 15)
    throw std::invalid_argument("max_bases must be 11, 13 or 15");
  const auto walker = detail::make_walker(sys);
  std::vector<std::vector<std::uint32_t>> found(kNumBases);
  parallel_for(kNumBases, workers, [&](int first) {
    auto visit = [&](std::uint32_t chosen, int size, RayMask odd) {
      if (size % 2 == 1 && odd == 0) found[first].push_back(chosen);
    };
    walker.up_to(first + 1, 1, max_bases, 1u << first, walker.basis_masks[first], visit);
  });
  std::map<std::string, long> counts;
  for (const auto& f : found)
    for (auto m : f) ++counts[signature_of(subset_ksset(sys, BasisSubset{m})).str()];
  return counts;
}

}  // namespace ksforge
