#pragma once

// Table-driven arithmetic on element codes for the counting kernels.
// Multiplication goes through discrete-log/antilog tables, addition through
// Zech logarithms, so every operation is a handful of lookups.

#include <cstdint>
#include <vector>

#include "charzeta/finfield.hpp"

namespace charzeta {

class FieldTables {
 public:
  using value_type = std::uint32_t;
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 21;

  /// Throws std::out_of_range when q > kMaxOrder.
  explicit FieldTables(FieldDesc field);

  const FieldDesc& field() const noexcept { return field_; }
  std::uint64_t p() const noexcept { return p_; }
  std::uint64_t q() const noexcept { return q_; }
  /// Code of the primitive element used for the log tables.
  value_type generator() const noexcept { return exp_[1]; }

  value_type from_int(std::int64_t k) const noexcept {
    std::int64_t r = k % static_cast<std::int64_t>(p_);
    return static_cast<value_type>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }
  value_type from_element(const FieldElement& e) const { return static_cast<value_type>(e.code()); }
  FieldElement to_element(value_type a) const { return field_.from_code(a); }

  bool is_zero(value_type a) const noexcept { return a == 0; }

  value_type mul(value_type a, value_type b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  value_type add(value_type a, value_type b) const noexcept {
    if (a == 0) return b;
    if (b == 0) return a;
    const value_type la = log_[a], lb = log_[b];
    const value_type d = lb >= la ? lb - la : lb + order_ - la;
    const value_type z = zech_[d];
    if (z == kNoLog) return 0;
    return exp_[la + z];
  }

  value_type neg(value_type a) const noexcept {
    if (a == 0 || p_ == 2) return a;
    return exp_[log_[a] + half_];
  }

  value_type sub(value_type a, value_type b) const noexcept { return add(a, neg(b)); }

  /// Inverse of a nonzero element; 0 maps to 0.
  value_type inv(value_type a) const noexcept {
    if (a == 0) return 0;
    return exp_[order_ - log_[a]];
  }

  value_type pow(value_type a, std::uint64_t e) const noexcept {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[static_cast<std::uint64_t>(log_[a]) * (e % order_) % order_];
  }

  /// Squares in F_q. Every element is a square in characteristic 2.
  bool is_square(value_type a) const noexcept {
    if (a == 0 || p_ == 2) return true;
    return (log_[a] & 1u) == 0;
  }

  int quadratic_character(value_type a) const noexcept {
    if (a == 0) return 0;
    return is_square(a) ? 1 : -1;
  }

  /// Absolute trace to F_p, returned as a prime-field residue.
  value_type trace(value_type a) const noexcept;

 private:
  static constexpr value_type kNoLog = ~value_type{0};

  FieldDesc field_;
  std::uint64_t p_ = 0;
  std::uint64_t q_ = 0;
  value_type order_ = 0;  // q - 1
  value_type half_ = 0;   // log(-1) in odd characteristic
  std::vector<value_type> exp_;   // g^i for i in [0, 2(q-1))
  std::vector<value_type> log_;   // log_g of each nonzero code
  std::vector<value_type> zech_;  // log_g(1 + g^i), kNoLog when that sum is 0
};

}  // namespace charzeta
