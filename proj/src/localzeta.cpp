#include "charzeta/localzeta.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "charzeta/finfield.hpp"

namespace charzeta {

LocalZetaFactors normalize(LocalZetaFactors z) {
  std::map<std::int64_t, std::int64_t, std::greater<>> merged;
  for (const auto& f : z.factors) merged[f.unit] += f.exponent;
  z.factors.clear();
  for (auto [unit, e] : merged)
    if (e != 0) z.factors.push_back({unit, e});
  return z;
}

namespace {

LocalZetaFactors combine(const LocalZetaFactors& a, const LocalZetaFactors& b, std::int64_t sign) {
  if (a.p != b.p) throw std::invalid_argument("local zeta factors over different primes");
  LocalZetaFactors out = a;
  for (auto f : b.factors) out.factors.push_back({f.unit, sign * f.exponent});
  return normalize(std::move(out));
}

mpz_class binomial(std::uint64_t n, std::uint64_t k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class power(std::int64_t base, unsigned e) {
  mpz_class r;
  mpz_class b = static_cast<long>(base);
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

LocalZetaFactors multiply(const LocalZetaFactors& a, const LocalZetaFactors& b) { return combine(a, b, 1); }
LocalZetaFactors divide(const LocalZetaFactors& a, const LocalZetaFactors& b) { return combine(a, b, -1); }

mpz_class count(const LocalZetaFactors& z, unsigned n) {
  mpz_class total = 0;
  for (const auto& f : z.factors) total += mpz_class(static_cast<long>(f.exponent)) * power(f.unit, n);
  return total;
}

std::vector<mpz_class> series(const LocalZetaFactors& z, unsigned k) {
  std::vector<mpz_class> c(k + 1, 0);
  c[0] = 1;
  for (const auto& f : z.factors) {
    // Expansion of (1 - aT)^(-e), truncated at degree k.
    std::vector<mpz_class> g(k + 1, 0);
    for (unsigned j = 0; j <= k; ++j) {
      if (f.exponent > 0) {
        g[j] = binomial(static_cast<std::uint64_t>(f.exponent) + j - 1, j) * power(f.unit, j);
      } else {
        const auto m = static_cast<std::uint64_t>(-f.exponent);
        if (j > m) break;
        g[j] = binomial(m, j) * power(-f.unit, j);
      }
    }
    std::vector<mpz_class> prod(k + 1, 0);
    for (unsigned i = 0; i <= k; ++i) {
      if (c[i] == 0) continue;
      for (unsigned j = 0; i + j <= k; ++j) prod[i + j] += c[i] * g[j];
    }
    c = std::move(prod);
  }
  return c;
}

std::vector<mpz_class> zeta_series_from_counts(const std::vector<mpz_class>& counts, unsigned k) {
  if (counts.size() < k) throw std::invalid_argument("zeta_series_from_counts: need " + std::to_string(k) + " counts");
  std::vector<mpz_class> c(k + 1, 0);
  c[0] = 1;
  for (unsigned m = 1; m <= k; ++m) {
    mpz_class acc = 0;
    for (unsigned j = 1; j <= m; ++j) acc += counts[j - 1] * c[m - j];
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), m))
      throw std::domain_error("zeta_series_from_counts: coefficient " + std::to_string(m) + " is not integral");
    mpz_divexact_ui(c[m].get_mpz_t(), acc.get_mpz_t(), m);
  }
  return c;
}

namespace {

// Berlekamp-Massey over Q: the shortest C(x) = 1 + c_1 x + ... + c_L x^L with
// s_n + c_1 s_(n-1) + ... + c_L s_(n-L) = 0 for all L <= n < len(s).
std::vector<mpq_class> minimal_recurrence(const std::vector<mpq_class>& s) {
  std::vector<mpq_class> C{1}, B{1};
  std::size_t L = 0, m = 1;
  mpq_class b = 1;
  for (std::size_t n = 0; n < s.size(); ++n) {
    mpq_class d = s[n];
    for (std::size_t i = 1; i <= L && i < C.size(); ++i) d += C[i] * s[n - i];
    if (d == 0) {
      ++m;
      continue;
    }
    const mpq_class coef = d / b;
    std::vector<mpq_class> next = C;
    if (next.size() < B.size() + m) next.resize(B.size() + m, 0);
    for (std::size_t i = 0; i < B.size(); ++i) next[i + m] -= coef * B[i];
    if (2 * L <= n) {
      B = C;
      L = n + 1 - L;
      b = d;
      m = 1;
    } else {
      ++m;
    }
    C = std::move(next);
  }
  C.resize(L + 1, 0);
  return C;
}

std::vector<mpq_class> solve(std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) throw RecoveryError("recover_factors: singular Vandermonde system");
    std::swap(A[piv], A[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      const mpq_class f = A[r][col] / A[col][col];
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= A[i][i];
  return rhs;
}

}  // namespace

LocalZetaFactors recover_factors(const std::vector<mpz_class>& counts, std::uint64_t p) {
  if (counts.size() < kMinRecoveryCounts)
    throw std::invalid_argument("recover_factors: need at least " + std::to_string(kMinRecoveryCounts) + " counts");
  if (!is_prime(p)) throw std::invalid_argument("recover_factors: " + std::to_string(p) + " is not prime");

  // Candidate units: the recurrence has degree at most 6, and 2 * 6 < 14
  // makes it unique.
  std::vector<mpq_class> s;
  for (const auto& c : counts) s.emplace_back(c);
  const auto C = minimal_recurrence(s);
  const std::size_t L = C.size() - 1;
  if (2 * L >= counts.size()) throw RecoveryError("recover_factors: recurrence too long for the data");

  const auto ip = static_cast<std::int64_t>(p);
  std::vector<std::int64_t> roots;
  for (std::int64_t a : {ip * ip, ip, std::int64_t{1}, std::int64_t{-1}, -ip, -ip * ip}) {
    // Characteristic polynomial x^L + c_1 x^(L-1) + ... + c_L at a.
    mpq_class v = 0;
    for (std::size_t i = 0; i <= L; ++i) v = v * a + C[i];
    if (v == 0) roots.push_back(a);
  }
  if (roots.size() != L)
    throw RecoveryError("recover_factors: recurrence of degree " + std::to_string(L) + " has " +
                        std::to_string(roots.size()) + " roots among the candidate units");

  std::vector<std::vector<mpq_class>> A(L, std::vector<mpq_class>(L));
  std::vector<mpq_class> rhs(L);
  for (std::size_t n = 0; n < L; ++n) {
    for (std::size_t i = 0; i < L; ++i) A[n][i] = mpq_class(power(roots[i], static_cast<unsigned>(n + 1)));
    rhs[n] = s[n];
  }
  const auto e = solve(std::move(A), std::move(rhs));

  LocalZetaFactors out{p, {}};
  for (std::size_t i = 0; i < L; ++i) {
    if (e[i].get_den() != 1 || !e[i].get_num().fits_slong_p())
      throw RecoveryError("recover_factors: non-integral exponent for unit " + std::to_string(roots[i]));
    out.factors.push_back({roots[i], e[i].get_num().get_si()});
  }
  out = normalize(std::move(out));
  for (std::size_t n = 0; n < counts.size(); ++n)
    if (count(out, static_cast<unsigned>(n + 1)) != counts[n])
      throw RecoveryError("recover_factors: residual at n = " + std::to_string(n + 1));
  return out;
}

LocalZetaFactors local_zeta_closed_form(SurfaceId id, std::uint64_t p, Space space) {
  if (!is_prime(p)) throw std::invalid_argument("local_zeta_closed_form: " + std::to_string(p) + " is not prime");
  const auto a = static_cast<std::int64_t>(p);
  const std::int64_t a2 = a * a;

  LocalZetaFactors bi{p, {}};
  LocalZetaFactors na{p, {}};
  switch (id) {
    case SurfaceId::L0:
      if (p == 2)
        bi.factors = {{a2, 1}, {a, 3}, {1, 1}};
      else if (legendre(2, p) == 1)
        bi.factors = {{a2, 1}, {a, 7}, {1, 1}};
      else
        bi.factors = {{a2, 1}, {a, 6}, {1, 1}, {-a, 1}};
      na.factors = p == 2 ? std::vector<ZetaFactor>{{a, 3}} : std::vector<ZetaFactor>{{a, 3}, {1, -1}};
      break;
    case SurfaceId::L1:
      if (p == 2)
        bi.factors = {{a2, 1}, {a, 3}, {1, 1}, {-a, 1}};
      else if (p == 5)
        bi.factors = {{a2, 1}, {a, 6}, {1, 1}};
      else if (legendre(5, p) == 1)
        bi.factors = {{a2, 1}, {a, 8}, {1, 1}};
      else
        bi.factors = {{a2, 1}, {a, 6}, {1, 1}, {-a, 2}};
      na.factors = p == 2 ? std::vector<ZetaFactor>{{a, 4}, {1, -1}} : std::vector<ZetaFactor>{{a, 4}, {1, -2}};
      break;
    case SurfaceId::L2:
      bi.factors = {{a2, 1}, {a, 3}, {1, 1}};
      na.factors = p == 2 ? std::vector<ZetaFactor>{{a, 3}} : std::vector<ZetaFactor>{{a, 3}, {1, -1}};
      break;
  }
  switch (space) {
    case Space::biprojective: return normalize(bi);
    case Space::nonaffine: return normalize(na);
    case Space::affine: break;
  }
  return divide(bi, na);
}

}  // namespace charzeta
