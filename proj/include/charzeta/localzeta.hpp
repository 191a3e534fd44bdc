#pragma once

// Local zeta functions Z(V/F_p, T) = exp(sum N_n T^n / n), kept as finite
// products of (1 - a T)^(-e) with integer a and e.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "charzeta/varieties.hpp"

namespace charzeta {

/// (1 - unit * T)^(-exponent): a positive exponent is a denominator factor.
struct ZetaFactor {
  std::int64_t unit;
  std::int64_t exponent;
  friend bool operator==(const ZetaFactor&, const ZetaFactor&) = default;
};

/// Invariant: units distinct, exponents nonzero, sorted by unit descending.
struct LocalZetaFactors {
  std::uint64_t p = 0;
  std::vector<ZetaFactor> factors;
  friend bool operator==(const LocalZetaFactors&, const LocalZetaFactors&) = default;
};

/// Recovery failed: the counts are not those of a product over the
/// candidate units {+-1, +-p, +-p^2}.
struct RecoveryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Merges equal units and restores the invariant.
LocalZetaFactors normalize(LocalZetaFactors z);

/// Both operands must share p; throws std::invalid_argument otherwise.
LocalZetaFactors multiply(const LocalZetaFactors& a, const LocalZetaFactors& b);
LocalZetaFactors divide(const LocalZetaFactors& a, const LocalZetaFactors& b);

/// N_n = sum e * a^n, for n >= 1.
mpz_class count(const LocalZetaFactors& z, unsigned n);

/// Coefficients c_0..c_k of the product, by binomial expansion.
std::vector<mpz_class> series(const LocalZetaFactors& z, unsigned k);

/// Coefficients c_0..c_k of exp(sum N_n T^n / n) from counts N_1..N_k,
/// by Newton's identity k c_k = sum_j N_j c_(k-j). Throws std::invalid_argument
/// when fewer than k counts are given, std::domain_error when a coefficient
/// is not integral.
std::vector<mpz_class> zeta_series_from_counts(const std::vector<mpz_class>& counts, unsigned k);

inline constexpr std::size_t kMinRecoveryCounts = 14;

/// Blind recovery from counts N_1..N_k (k >= kMinRecoveryCounts): the
/// minimal linear recurrence of the sequence, its roots matched against
/// {+-1, +-p, +-p^2}, exponents from a Vandermonde solve, and every count
/// re-checked. Throws std::invalid_argument for short input, RecoveryError
/// on any failure.
LocalZetaFactors recover_factors(const std::vector<mpz_class>& counts, std::uint64_t p);

/// The local factor read off the closed-form counts.
LocalZetaFactors local_zeta_closed_form(SurfaceId id, std::uint64_t p, Space space);

}  // namespace charzeta
