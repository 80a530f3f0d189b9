#pragma once

#include <complex>
#include <random>

#include "ksforge/ksforge.hpp"

namespace testing_support {

inline const ksforge::RaySystem& sys() {
  static const ksforge::RaySystem s = ksforge::RaySystem::build();
  return s;
}

inline const std::vector<ksforge::ParentKSSet>& parents() {
  static const auto p = ksforge::enumerate_parents(sys(), 1);
  return p;
}

inline const ksforge::RelabelMap& fixture_map() {
  static const auto m = ksforge::match_fixture(ksforge::fixtures::table2_bases(), sys().bases);
  return m;
}

inline const ksforge::RayGeometry& fixture_geometry() {
  static const auto g = ksforge::RayGeometry::relabeled(sys(), fixture_map());
  return g;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20240611u);
  return gen;
}

// Floating-point Kronecker product of three 2x2 complex matrices.
using CMat = std::vector<std::vector<std::complex<double>>>;

inline CMat naive_pauli(char c) {
  using C = std::complex<double>;
  switch (c) {
    case 'X': return {{0, 1}, {1, 0}};
    case 'Y': return {{0, C(0, -1)}, {C(0, 1), 0}};
    case 'Z': return {{1, 0}, {0, -1}};
    default: return {{1, 0}, {0, 1}};
  }
}

inline CMat kron(const CMat& a, const CMat& b) {
  const std::size_t n = a.size(), m = b.size();
  CMat out(n * m, std::vector<std::complex<double>>(n * m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) out[i * m + k][j * m + l] = a[i][j] * b[k][l];
  return out;
}

/// Brute-force count of exactly-one-per-basis assignments; only for small sets.
inline long brute_force_colorings(const ksforge::KSSet& s) {
  std::vector<ksforge::Projector> items;
  for (const auto& [p, m] : s.multiplicities()) items.push_back(p);
  long count = 0;
  for (std::uint32_t bits = 0; bits < (1u << items.size()); ++bits) {
    bool ok = true;
    for (const auto& b : s.bases) {
      int ones = 0;
      for (const auto& p : b) {
        const auto k = std::lower_bound(items.begin(), items.end(), p) - items.begin();
        ones += (bits >> k) & 1u;
      }
      if (ones != 1) {
        ok = false;
        break;
      }
    }
    count += ok;
  }
  return count;
}

}  // namespace testing_support
