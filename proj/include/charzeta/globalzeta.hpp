#pragma once

// Global Hasse-Weil zeta functions as symbolic products of shifted Riemann,
// quadratic Dedekind and Dirichlet L-factors, with per-prime elementary
// corrections; Euler-factor extraction and verification against counts.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charzeta/localzeta.hpp"
#include "charzeta/varieties.hpp"

namespace charzeta {

/// Even quadratic character of conductor 8 (d = 2) or 5 (d = 5).
struct CharacterDesc {
  std::string_view label;
  std::uint64_t modulus;
  std::vector<int> values;  // values[a] = chi(a) for a in [0, modulus)

  int operator()(std::uint64_t n) const noexcept { return values[n % modulus]; }
};

const CharacterDesc& chi8();
const CharacterDesc& chi5();
/// The character of Q(sqrt d); throws std::invalid_argument unless d is 2 or 5.
const CharacterDesc& quadratic_character_of(int d);
/// Discriminant of Q(sqrt d): 8 or 5.
std::uint64_t quadratic_discriminant(int d);

enum class FactorKind { riemann, dedekind, dirichlet };
std::string_view to_string(FactorKind k);

/// kind(s - shift)^exponent. field is d for dedekind and dirichlet (the
/// character of Q(sqrt d)), 0 for riemann.
struct GlobalFactor {
  FactorKind kind;
  int field;
  int shift;
  int exponent;
  friend bool operator==(const GlobalFactor&, const GlobalFactor&) = default;
};

/// (1 - sign * prime^(shift - s))^(-exponent), sign = +1 or -1.
struct ElementaryFactor {
  std::uint64_t prime;
  int sign;
  int shift;
  int exponent;
  friend bool operator==(const ElementaryFactor&, const ElementaryFactor&) = default;
};

struct GlobalZetaExpr {
  std::vector<GlobalFactor> factors;
  std::vector<ElementaryFactor> elementary;
  friend bool operator==(const GlobalZetaExpr&, const GlobalZetaExpr&) = default;
};

GlobalZetaExpr global_expression(SurfaceId id, Space space);

/// The affine expression with elementary factors stripped.
GlobalZetaExpr main_term(SurfaceId id);

/// Local factor at p in T = p^(-s). Throws std::invalid_argument for
/// non-prime p.
LocalZetaFactors euler_factor(const GlobalZetaExpr& expr, std::uint64_t p);

/// Each Dedekind factor replaced by the Riemann and Dirichlet factors it
/// splits into; other factors kept in order.
GlobalZetaExpr dedekind_expand(const GlobalZetaExpr& expr);

enum class VerifyMode { recovery, series };
std::string_view to_string(VerifyMode m);

struct GlobalCheck {
  SurfaceId surface = SurfaceId::L0;
  Space space = Space::affine;
  std::uint64_t p = 0;
  VerifyMode mode = VerifyMode::series;
  unsigned terms = 0;            // counts N_1..N_terms compared
  unsigned fiberwise_terms = 0;  // of which counted fiber by fiber
  std::vector<std::uint64_t> counts;
  LocalZetaFactors expected;     // Euler factor of the global expression
  std::optional<LocalZetaFactors> recovered;
  bool closed_form_match = false;
  bool dedekind_match = false;
  bool formula_match = false;  // fiberwise counts agree with the closed-form counts
  std::optional<unsigned> first_divergence;
  std::string error;
  bool pass = false;
};

/// Blind recovery is used for these primes; truncated series elsewhere.
inline constexpr std::uint64_t kMaxRecoveryPrime = 3;

/// For each prime and surface, checks all three spaces. Counts N_n come from
/// the fiberwise kernel for p^n <= max_q (one pass per field serves all
/// spaces). Recovery needs kMinRecoveryCounts terms, so for p <= 3 the
/// missing high-degree counts come from the closed-form counts. Results are
/// ordered by prime, then surface, then space. Mismatches are reported,
/// never thrown.
std::vector<GlobalCheck> verify_global(const std::vector<SurfaceId>& surfaces, const std::vector<std::uint64_t>& primes,
                                       std::uint64_t max_q = 1'000'000);

}  // namespace charzeta
