#pragma once

// Exact arithmetic in F_p and F_{p^n}, quadratic characters and conic
// point counting in odd characteristic.

#include <array>
#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace charzeta {

bool is_prime(std::uint64_t n) noexcept;
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

/// Legendre symbol (a/p) for an odd prime p, via Euler's criterion.
int legendre(std::int64_t a, std::uint64_t p);

class FieldElement;

/// A finite field F_q, q = p^n. Cheap to copy; all copies share one
/// immutable descriptor.
///
/// Elements are polynomials in a root x of the modulus with coefficients in
/// [0, p). Their integer code is sum c_i p^i, which makes 0..q-1 an
/// enumeration of the field with 0 and 1 at codes 0 and 1.
class FieldDesc {
 public:
  std::uint64_t p() const noexcept;
  unsigned n() const noexcept;
  std::uint64_t q() const noexcept;
  /// Monic modulus, coefficients of x^0..x^n. Empty for prime fields.
  std::span<const std::uint64_t> modulus() const noexcept;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(std::int64_t v) const;
  FieldElement from_code(std::uint64_t code) const;
  FieldElement from_coefficients(std::vector<std::uint64_t> coeffs) const;

  friend bool operator==(const FieldDesc& a, const FieldDesc& b) noexcept;

 private:
  struct Impl;
  explicit FieldDesc(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend FieldDesc make_field(std::uint64_t p, unsigned n);
  friend class FieldElement;
};

/// Builds F_{p^n}. The modulus is the first monic irreducible polynomial when
/// candidates x^n + c_{n-1}x^{n-1} + ... + c_0 are ordered by the integer
/// sum c_i p^i. Throws std::invalid_argument for a non-prime p and
/// std::out_of_range when n is outside [1, 24] or p^n exceeds 2^63.
FieldDesc make_field(std::uint64_t p, unsigned n = 1);

class FieldElement {
 public:
  const FieldDesc& field() const noexcept { return field_; }
  std::span<const std::uint64_t> coefficients() const noexcept { return coeffs_; }
  std::uint64_t code() const noexcept;
  bool is_zero() const noexcept;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);
  FieldElement& operator/=(const FieldElement& rhs);

  /// Throws std::domain_error on zero.
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  FieldElement(FieldDesc field, std::vector<std::uint64_t> coeffs)
      : field_(std::move(field)), coeffs_(std::move(coeffs)) {}
  void require_same_field(const FieldElement& other) const;

  FieldDesc field_;
  std::vector<std::uint64_t> coeffs_;  // always exactly n entries

  friend class FieldDesc;
};

/// a^((q-1)/2) read as -1, 0 or 1. Throws std::domain_error in
/// characteristic 2.
int quadratic_character(const FieldElement& a);

/// ax^2 + by^2 + cu^2 + dxy + exu + fyu, stored as (xx, yy, uu, xy, xu, yu).
template <class T>
struct TernaryForm {
  T xx, yy, uu, xy, xu, yu;
};

struct ConicClass {
  int rank = 0;
  bool split = false;  // meaningful for rank 2 only
  std::uint64_t point_count = 0;

  friend bool operator==(const ConicClass&, const ConicClass&) = default;
};

/// Arithmetic backend usable by the generic conic routines: FieldElement via
/// ElementOps, or the table-driven kernel in fieldtables.hpp.
template <class F>
concept FieldOps = requires(const F& f, typename F::value_type a, typename F::value_type b,
                            std::int64_t k) {
  { f.add(a, b) } -> std::same_as<typename F::value_type>;
  { f.sub(a, b) } -> std::same_as<typename F::value_type>;
  { f.mul(a, b) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.from_int(k) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.is_square(a) } -> std::convertible_to<bool>;
  { f.q() } -> std::convertible_to<std::uint64_t>;
};

class ElementOps {
 public:
  using value_type = FieldElement;
  explicit ElementOps(FieldDesc field) : field_(std::move(field)) {}

  FieldElement add(const FieldElement& a, const FieldElement& b) const { return a + b; }
  FieldElement sub(const FieldElement& a, const FieldElement& b) const { return a - b; }
  FieldElement mul(const FieldElement& a, const FieldElement& b) const { return a * b; }
  FieldElement neg(const FieldElement& a) const { return -a; }
  FieldElement inv(const FieldElement& a) const { return a.inverse(); }
  FieldElement from_int(std::int64_t k) const { return field_.from_int(k); }
  bool is_zero(const FieldElement& a) const { return a.is_zero(); }
  bool is_square(const FieldElement& a) const { return quadratic_character(a) >= 0; }
  std::uint64_t q() const { return field_.q(); }

 private:
  FieldDesc field_;
};

/// Point count of a conic of the given rank/splitting over F_q. Throws
/// std::overflow_error when q^2+q+1 does not fit 64 bits.
std::uint64_t conic_point_count(int rank, bool split, std::uint64_t q);

/// 4abc + def - af^2 - be^2 - cd^2. Vanishes exactly when the conic is
/// singular, in every characteristic.
template <FieldOps F>
typename F::value_type half_discriminant(const F& f, const TernaryForm<typename F::value_type>& Q) {
  auto t = f.mul(f.from_int(4), f.mul(Q.xx, f.mul(Q.yy, Q.uu)));
  t = f.add(t, f.mul(Q.xy, f.mul(Q.xu, Q.yu)));
  t = f.sub(t, f.mul(Q.xx, f.mul(Q.yu, Q.yu)));
  t = f.sub(t, f.mul(Q.yy, f.mul(Q.xu, Q.xu)));
  t = f.sub(t, f.mul(Q.uu, f.mul(Q.xy, Q.xy)));
  return t;
}

/// Rank and splitting of a ternary form by symmetric Gaussian elimination
/// (congruence diagonalisation). Odd characteristic only.
template <FieldOps F>
ConicClass classify_conic_with(const F& f, const TernaryForm<typename F::value_type>& Q) {
  using T = typename F::value_type;
  const T half = f.inv(f.from_int(2));
  const T xy = f.mul(Q.xy, half), xu = f.mul(Q.xu, half), yu = f.mul(Q.yu, half);
  std::array<std::array<T, 3>, 3> m{{{Q.xx, xy, xu}, {xy, Q.yy, yu}, {xu, yu, Q.uu}}};

  auto swap_index = [&m](int i, int j) {
    std::swap(m[i], m[j]);
    for (auto& row : m) std::swap(row[i], row[j]);
  };

  std::array<std::optional<T>, 3> diag;
  for (int k = 0; k < 3; ++k) {
    int pivot = -1;
    for (int i = k; i < 3 && pivot < 0; ++i)
      if (!f.is_zero(m[i][i])) pivot = i;
    if (pivot < 0) {
      // All remaining diagonal entries vanish; fold an off-diagonal entry in.
      for (int i = k; i < 3 && pivot < 0; ++i)
        for (int j = i + 1; j < 3 && pivot < 0; ++j)
          if (!f.is_zero(m[i][j])) {
            for (int c = 0; c < 3; ++c) m[i][c] = f.add(m[i][c], m[j][c]);
            for (int r = 0; r < 3; ++r) m[r][i] = f.add(m[r][i], m[r][j]);
            pivot = i;
          }
      if (pivot < 0) break;
    }
    swap_index(k, pivot);
    const T pinv = f.inv(m[k][k]);
    for (int i = k + 1; i < 3; ++i) {
      const T factor = f.mul(m[i][k], pinv);
      if (f.is_zero(factor)) continue;
      for (int c = 0; c < 3; ++c) m[i][c] = f.sub(m[i][c], f.mul(factor, m[k][c]));
      for (int r = 0; r < 3; ++r) m[r][i] = f.sub(m[r][i], f.mul(factor, m[r][k]));
    }
    diag[k] = m[k][k];
  }

  ConicClass out;
  std::vector<T> nonzero;
  for (auto& d : diag)
    if (d && !f.is_zero(*d)) nonzero.push_back(*d);
  out.rank = static_cast<int>(nonzero.size());
  if (out.rank == 2) out.split = f.is_square(f.neg(f.mul(nonzero[0], nonzero[1])));
  out.point_count = conic_point_count(out.rank, out.split, f.q());
  return out;
}

/// Throws std::domain_error in characteristic 2.
ConicClass classify_conic(const FieldDesc& field, const TernaryForm<FieldElement>& form);

/// Every x with x^2 = a, found by exhaustive search (q <= 2^22).
std::vector<FieldElement> square_roots(const FieldElement& a);

}  // namespace charzeta
