#include "charzeta/globalzeta.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string>

#include "charzeta/fibercount.hpp"
#include "charzeta/fieldtables.hpp"
#include "charzeta/finfield.hpp"

namespace charzeta {

const CharacterDesc& chi8() {
  static const CharacterDesc c{"chi8", 8, {0, 1, 0, -1, 0, -1, 0, 1}};
  return c;
}

const CharacterDesc& chi5() {
  static const CharacterDesc c{"chi5", 5, {0, 1, -1, -1, 1}};
  return c;
}

const CharacterDesc& quadratic_character_of(int d) {
  if (d == 2) return chi8();
  if (d == 5) return chi5();
  throw std::invalid_argument("no quadratic character for d = " + std::to_string(d));
}

std::uint64_t quadratic_discriminant(int d) {
  if (d == 2) return 8;
  if (d == 5) return 5;
  throw std::invalid_argument("unsupported quadratic field d = " + std::to_string(d));
}

std::string_view to_string(FactorKind k) {
  switch (k) {
    case FactorKind::riemann: return "riemann";
    case FactorKind::dedekind: return "dedekind";
    case FactorKind::dirichlet: return "dirichlet";
  }
  return "?";
}

std::string_view to_string(VerifyMode m) { return m == VerifyMode::recovery ? "recovery" : "series"; }

GlobalZetaExpr global_expression(SurfaceId id, Space space) {
  using K = FactorKind;
  GlobalZetaExpr e;
  switch (space) {
    case Space::affine:
      switch (id) {
        case SurfaceId::L0:
          e.factors = {{K::dedekind, 2, 1, 1}, {K::riemann, 0, 0, 2}, {K::riemann, 0, 1, 2}, {K::riemann, 0, 2, 1}};
          e.elementary = {{2, 1, 1, -3}, {2, 1, 0, -1}};
          break;
        case SurfaceId::L1:
          e.factors = {{K::dedekind, 5, 1, 2}, {K::riemann, 0, 0, 3}, {K::riemann, 0, 2, 1}};
          e.elementary = {{2, 1, 1, -3}, {2, -1, 1, -1}, {2, 1, 0, -1}};
          break;
        case SurfaceId::L2:
          e.factors = {{K::riemann, 0, 0, 2}, {K::riemann, 0, 2, 1}};
          e.elementary = {{2, 1, 0, -1}};
          break;
      }
      break;
    case Space::biprojective:
      switch (id) {
        case SurfaceId::L0:
          e.factors = {{K::riemann, 0, 2, 1}, {K::riemann, 0, 1, 6}, {K::riemann, 0, 0, 1}, {K::dirichlet, 2, 1, 1}};
          e.elementary = {{2, 1, 1, -3}};
          break;
        case SurfaceId::L1:
          e.factors = {{K::riemann, 0, 2, 1}, {K::riemann, 0, 1, 6}, {K::riemann, 0, 0, 1}, {K::dirichlet, 5, 1, 2}};
          e.elementary = {{2, 1, 1, -3}, {2, -1, 1, -1}};
          break;
        case SurfaceId::L2:
          e.factors = {{K::riemann, 0, 2, 1}, {K::riemann, 0, 1, 3}, {K::riemann, 0, 0, 1}};
          break;
      }
      break;
    case Space::nonaffine:
      if (id == SurfaceId::L1) {
        e.factors = {{K::riemann, 0, 1, 4}, {K::riemann, 0, 0, -2}};
      } else {
        e.factors = {{K::riemann, 0, 1, 3}, {K::riemann, 0, 0, -1}};
      }
      e.elementary = {{2, 1, 0, 1}};
      break;
  }
  return e;
}

GlobalZetaExpr main_term(SurfaceId id) {
  GlobalZetaExpr e = global_expression(id, Space::affine);
  e.elementary.clear();
  return e;
}

namespace {

std::int64_t ipow(std::uint64_t p, int j) {
  std::int64_t r = 1;
  for (int i = 0; i < j; ++i) r *= static_cast<std::int64_t>(p);
  return r;
}

// Splitting of p in Q(sqrt d): 0 ramified, 1 split, -1 inert. Decided from
// the discriminant and quadratic residues, not from the character table.
int splitting(int d, std::uint64_t p) {
  if (quadratic_discriminant(d) % p == 0) return 0;
  if (p == 2) {
    // Odd discriminant: 2 splits iff disc = 1 mod 8.
    return quadratic_discriminant(d) % 8 == 1 ? 1 : -1;
  }
  return legendre(d, p);
}

}  // namespace

LocalZetaFactors euler_factor(const GlobalZetaExpr& expr, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("euler_factor: " + std::to_string(p) + " is not prime");
  LocalZetaFactors out{p, {}};
  for (const auto& f : expr.factors) {
    if (f.shift < 0 || f.shift > 2) throw std::invalid_argument("euler_factor: shift out of range");
    const std::int64_t pj = ipow(p, f.shift);
    switch (f.kind) {
      case FactorKind::riemann:
        out.factors.push_back({pj, f.exponent});
        break;
      case FactorKind::dirichlet:
        if (const int c = quadratic_character_of(f.field)(p); c != 0) out.factors.push_back({c * pj, f.exponent});
        break;
      case FactorKind::dedekind:
        switch (splitting(f.field, p)) {
          case 0: out.factors.push_back({pj, f.exponent}); break;
          case 1: out.factors.push_back({pj, 2 * f.exponent}); break;
          default:
            // 1 - p^(2j) T^2 = (1 - p^j T)(1 + p^j T)
            out.factors.push_back({pj, f.exponent});
            out.factors.push_back({-pj, f.exponent});
            break;
        }
        break;
    }
  }
  for (const auto& e : expr.elementary)
    if (e.prime == p) out.factors.push_back({e.sign * ipow(p, e.shift), e.exponent});
  return normalize(std::move(out));
}

GlobalZetaExpr dedekind_expand(const GlobalZetaExpr& expr) {
  GlobalZetaExpr out;
  out.elementary = expr.elementary;
  for (const auto& f : expr.factors) {
    if (f.kind != FactorKind::dedekind) {
      out.factors.push_back(f);
      continue;
    }
    out.factors.push_back({FactorKind::riemann, 0, f.shift, f.exponent});
    out.factors.push_back({FactorKind::dirichlet, f.field, f.shift, f.exponent});
  }
  return out;
}

namespace {

constexpr std::array<Space, 3> kSpaces{Space::affine, Space::biprojective, Space::nonaffine};

std::optional<unsigned> first_difference(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (a[i] != b[i]) return static_cast<unsigned>(i);
  if (a.size() != b.size()) return static_cast<unsigned>(std::min(a.size(), b.size()));
  return std::nullopt;
}

void check_one(GlobalCheck& c, const std::vector<mpz_class>& counts) {
  const GlobalZetaExpr expr = global_expression(c.surface, c.space);
  c.expected = euler_factor(expr, c.p);
  c.dedekind_match = euler_factor(dedekind_expand(expr), c.p) == c.expected;
  c.closed_form_match = local_zeta_closed_form(c.surface, c.p, c.space) == c.expected;
  c.terms = static_cast<unsigned>(counts.size());
  if (counts.empty()) {
    c.error = "no counts in range";
    return;
  }

  const auto expected_series = series(c.expected, c.terms);
  bool agree = false;
  try {
    if (c.mode == VerifyMode::recovery) {
      c.recovered = recover_factors(counts, c.p);
      agree = *c.recovered == c.expected;
    }
    if (!agree) {
      c.first_divergence = first_difference(zeta_series_from_counts(counts, c.terms), expected_series);
      agree = c.mode == VerifyMode::series && !c.first_divergence;
    }
  } catch (const RecoveryError& e) {
    c.error = e.what();
    c.first_divergence = first_difference(zeta_series_from_counts(counts, c.terms), expected_series);
  } catch (const std::domain_error& e) {
    c.error = e.what();
  }
  c.pass = agree && c.closed_form_match && c.dedekind_match && c.formula_match;
}

}  // namespace

std::vector<GlobalCheck> verify_global(const std::vector<SurfaceId>& surfaces, const std::vector<std::uint64_t>& primes,
                                       std::uint64_t max_q) {
  std::vector<std::uint64_t> ps = primes;
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  for (auto p : ps)
    if (!is_prime(p)) throw std::invalid_argument("verify_global: " + std::to_string(p) + " is not prime");

  std::vector<GlobalCheck> out;
  for (auto p : ps) {
    const std::uint64_t bound = std::min(max_q, p == 2 ? kMaxFiberwiseChar2 : kMaxFiberwise);
    unsigned fiber_n = 0;
    for (std::uint64_t q = p; q <= bound; q *= p) ++fiber_n;
    const bool recovery = p <= kMaxRecoveryPrime;
    const unsigned terms = recovery ? static_cast<unsigned>(kMinRecoveryCounts) : fiber_n;

    // tallies[n - 1][surface index]
    std::vector<std::vector<FiberTally>> tallies;
    for (unsigned n = 1; n <= std::min(fiber_n, terms); ++n) {
      const FieldTables t(make_field(p, n));
      auto& row = tallies.emplace_back();
      for (auto id : surfaces) row.push_back(tally_fibers(surface(id), t));
    }

    for (std::size_t si = 0; si < surfaces.size(); ++si) {
      for (auto space : kSpaces) {
        GlobalCheck c;
        c.surface = surfaces[si];
        c.space = space;
        c.p = p;
        c.mode = recovery ? VerifyMode::recovery : VerifyMode::series;
        c.fiberwise_terms = static_cast<unsigned>(tallies.size());
        c.formula_match = true;
        std::vector<mpz_class> counts;
        for (unsigned n = 1; n <= terms; ++n) {
          const auto formula = count_formula(surfaces[si], p, n, space).count;
          if (n <= tallies.size()) {
            const auto fiberwise = tallies[n - 1][si].in(space);
            c.formula_match = c.formula_match && fiberwise == formula;
            c.counts.push_back(fiberwise);
            counts.emplace_back(static_cast<unsigned long>(fiberwise));
          } else {
            c.counts.push_back(formula);
            counts.emplace_back(static_cast<unsigned long>(formula));
          }
        }
        check_one(c, counts);
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

}  // namespace charzeta
