#pragma once

// Exact arithmetic over the Gaussian integers Z[i] for the 8-dimensional
// three-qubit state space. Nothing in ksforge touches floating point.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ksforge/errors.hpp"

namespace ksforge {

inline constexpr int kDim = 8;

namespace detail {

// Checked integer ops. Enabled when KSFORGE_CHECKED_ARITHMETIC is defined
// (the test targets define it); plain arithmetic otherwise.
inline std::int64_t add(std::int64_t a, std::int64_t b) {
#ifdef KSFORGE_CHECKED_ARITHMETIC
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer addition");
  return r;
#else
  return a + b;
#endif
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
#ifdef KSFORGE_CHECKED_ARITHMETIC
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer subtraction");
  return r;
#else
  return a - b;
#endif
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
#ifdef KSFORGE_CHECKED_ARITHMETIC
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "integer multiplication");
  return r;
#else
  return a * b;
#endif
}

}  // namespace detail

struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr GaussInt() = default;
  constexpr GaussInt(std::int64_t r, std::int64_t i = 0) : re(r), im(i) {}

  friend bool operator==(const GaussInt&, const GaussInt&) = default;
  friend auto operator<=>(const GaussInt&, const GaussInt&) = default;

  bool is_zero() const { return re == 0 && im == 0; }

  GaussInt conj() const { return {re, -im}; }

  /// |z|^2
  std::int64_t norm() const { return detail::add(detail::mul(re, re), detail::mul(im, im)); }

  GaussInt& operator+=(const GaussInt& o) {
    re = detail::add(re, o.re);
    im = detail::add(im, o.im);
    return *this;
  }
  GaussInt& operator-=(const GaussInt& o) {
    re = detail::sub(re, o.re);
    im = detail::sub(im, o.im);
    return *this;
  }
  friend GaussInt operator+(GaussInt a, const GaussInt& b) { return a += b; }
  friend GaussInt operator-(GaussInt a, const GaussInt& b) { return a -= b; }
  friend GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
  friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    return {detail::sub(detail::mul(a.re, b.re), detail::mul(a.im, b.im)),
            detail::add(detail::mul(a.re, b.im), detail::mul(a.im, b.re))};
  }
  GaussInt& operator*=(const GaussInt& o) { return *this = *this * o; }
};

inline constexpr GaussInt kI{0, 1};

using Vec8 = std::array<GaussInt, kDim>;

/// <a|b>, conjugate-linear in the first argument.
inline GaussInt inner(const Vec8& a, const Vec8& b) {
  GaussInt s;
  for (int k = 0; k < kDim; ++k) s += a[k].conj() * b[k];
  return s;
}

inline bool is_zero(const Vec8& v) {
  for (const auto& z : v)
    if (!z.is_zero()) return false;
  return true;
}

/// Squared norm <v|v>; always real.
inline std::int64_t norm2(const Vec8& v) { return inner(v, v).re; }

class Mat8 {
 public:
  Mat8() = default;

  static Mat8 identity(std::int64_t scale = 1) {
    Mat8 m;
    for (int k = 0; k < kDim; ++k) m(k, k) = GaussInt{scale};
    return m;
  }

  /// |a><b|
  static Mat8 outer(const Vec8& a, const Vec8& b) {
    Mat8 m;
    for (int r = 0; r < kDim; ++r)
      for (int c = 0; c < kDim; ++c) m(r, c) = a[r] * b[c].conj();
    return m;
  }

  GaussInt& operator()(int r, int c) { return e_[r][c]; }
  const GaussInt& operator()(int r, int c) const { return e_[r][c]; }

  friend bool operator==(const Mat8&, const Mat8&) = default;

  Mat8& operator+=(const Mat8& o) {
    for (int r = 0; r < kDim; ++r)
      for (int c = 0; c < kDim; ++c) e_[r][c] += o.e_[r][c];
    return *this;
  }
  Mat8& operator-=(const Mat8& o) {
    for (int r = 0; r < kDim; ++r)
      for (int c = 0; c < kDim; ++c) e_[r][c] -= o.e_[r][c];
    return *this;
  }
  friend Mat8 operator+(Mat8 a, const Mat8& b) { return a += b; }
  friend Mat8 operator-(Mat8 a, const Mat8& b) { return a -= b; }

  friend Mat8 operator*(const Mat8& a, const Mat8& b) {
    Mat8 m;
    for (int r = 0; r < kDim; ++r)
      for (int k = 0; k < kDim; ++k) {
        if (a.e_[r][k].is_zero()) continue;
        for (int c = 0; c < kDim; ++c) m.e_[r][c] += a.e_[r][k] * b.e_[k][c];
      }
    return m;
  }

  friend Mat8 operator*(const GaussInt& s, Mat8 a) {
    for (auto& row : a.e_)
      for (auto& z : row) z = s * z;
    return a;
  }

  friend Vec8 operator*(const Mat8& a, const Vec8& v) {
    Vec8 out{};
    for (int r = 0; r < kDim; ++r)
      for (int k = 0; k < kDim; ++k) out[r] += a.e_[r][k] * v[k];
    return out;
  }

  Mat8 adjoint() const {
    Mat8 m;
    for (int r = 0; r < kDim; ++r)
      for (int c = 0; c < kDim; ++c) m.e_[r][c] = e_[c][r].conj();
    return m;
  }

  GaussInt trace() const {
    GaussInt t;
    for (int k = 0; k < kDim; ++k) t += e_[k][k];
    return t;
  }

  bool is_hermitian() const { return *this == adjoint(); }

  bool is_real() const {
    for (const auto& row : e_)
      for (const auto& z : row)
        if (z.im != 0) return false;
    return true;
  }

  Vec8 column(int c) const {
    Vec8 v;
    for (int r = 0; r < kDim; ++r) v[r] = e_[r][c];
    return v;
  }

 private:
  std::array<std::array<GaussInt, kDim>, kDim> e_{};
};

inline bool commutes(const Mat8& a, const Mat8& b) { return a * b == b * a; }

// ---------------------------------------------------------------------------
// Three-qubit Pauli words.

enum class Pauli : std::uint8_t { I, X, Y, Z };

struct PauliWord {
  std::array<Pauli, 3> factors{Pauli::I, Pauli::I, Pauli::I};
  int sign = +1;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;
  friend auto operator<=>(const PauliWord&, const PauliWord&) = default;

  /// Parses "XYY", "1X1", "-ZZZ". '1' and 'I' both denote the identity factor.
  static PauliWord parse(std::string_view s) {
    PauliWord w;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      w.sign = s.front() == '-' ? -1 : +1;
      s.remove_prefix(1);
    }
    if (s.size() != 3) throw std::invalid_argument("pauli word needs 3 factors: " + std::string(s));
    for (int q = 0; q < 3; ++q) {
      switch (s[q]) {
        case '1':
        case 'I': w.factors[q] = Pauli::I; break;
        case 'X': w.factors[q] = Pauli::X; break;
        case 'Y': w.factors[q] = Pauli::Y; break;
        case 'Z': w.factors[q] = Pauli::Z; break;
        default: throw std::invalid_argument("bad pauli factor in: " + std::string(s));
      }
    }
    return w;
  }

  std::string str() const {
    std::string s = sign < 0 ? "-" : "";
    for (Pauli p : factors) s += "1XYZ"[static_cast<int>(p)];
    return s;
  }
};

namespace detail {

using Mat2 = std::array<std::array<GaussInt, 2>, 2>;

inline Mat2 pauli2(Pauli p) {
  switch (p) {
    case Pauli::I: return {{{GaussInt{1}, GaussInt{0}}, {GaussInt{0}, GaussInt{1}}}};
    case Pauli::X: return {{{GaussInt{0}, GaussInt{1}}, {GaussInt{1}, GaussInt{0}}}};
    case Pauli::Y: return {{{GaussInt{0}, GaussInt{0, -1}}, {GaussInt{0, 1}, GaussInt{0}}}};
    case Pauli::Z: return {{{GaussInt{1}, GaussInt{0}}, {GaussInt{0}, GaussInt{-1}}}};
  }
  return {};
}

}  // namespace detail

/// Kronecker realization, qubit 1 most significant: index = 4*b1 + 2*b2 + b3.
inline Mat8 pauli_matrix(const PauliWord& w) {
  const auto a = detail::pauli2(w.factors[0]);
  const auto b = detail::pauli2(w.factors[1]);
  const auto c = detail::pauli2(w.factors[2]);
  Mat8 m;
  for (int r = 0; r < kDim; ++r)
    for (int col = 0; col < kDim; ++col) {
      GaussInt z = a[r >> 2][col >> 2] * b[(r >> 1) & 1][(col >> 1) & 1] * c[r & 1][col & 1];
      m(r, col) = GaussInt{w.sign} * z;
    }
  return m;
}

// ---------------------------------------------------------------------------
// Projector sums at fixed scale 8.

inline constexpr std::int64_t kProjectorScale = 8;

/// 8 * |r><r| / <r|r>. Throws NonIntegerScale when <r|r> does not divide 8.
inline Mat8 scaled_projector(const Vec8& r) {
  const std::int64_t n = norm2(r);
  if (n <= 0 || kProjectorScale % n != 0)
    throw Error(ErrorKind::NonIntegerScale, "ray norm " + std::to_string(n) + " does not divide 8");
  return GaussInt{kProjectorScale / n} * Mat8::outer(r, r);
}

/// A projector realized geometrically: one ray (rank 1) or two orthogonal rays (rank 2).
using RealizedProjector = std::vector<Vec8>;

/// True iff the given projectors sum to the identity exactly.
inline bool projector_sum_check(std::span<const RealizedProjector> projectors) {
  Mat8 sum;
  for (const auto& p : projectors) {
    if (p.size() == 2 && !inner(p[0], p[1]).is_zero())
      throw Error(ErrorKind::NotOrthogonal, "rank-2 projector built from non-orthogonal rays");
    for (const auto& r : p) sum += scaled_projector(r);
  }
  return sum == Mat8::identity(kProjectorScale);
}

/// Rank-1 convenience overload: each ray is its own projector.
inline bool projector_sum_check(std::span<const Vec8> rays) {
  Mat8 sum;
  for (const auto& r : rays) sum += scaled_projector(r);
  return sum == Mat8::identity(kProjectorScale);
}

}  // namespace ksforge
