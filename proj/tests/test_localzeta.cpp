#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "charzeta/fibercount.hpp"
#include "charzeta/localzeta.hpp"

using namespace charzeta;

namespace {

std::vector<mpz_class> to_mpz(const std::vector<long>& v) {
  std::vector<mpz_class> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

// term must return mpz_class by value: a gmpxx expression would dangle.
std::vector<mpz_class> sequence(std::size_t k, auto&& term) {
  std::vector<mpz_class> out;
  for (std::size_t n = 1; n <= k; ++n) out.push_back(term(static_cast<unsigned>(n)));
  return out;
}

mpz_class pw(long b, unsigned e) {
  mpz_class r;
  mpz_class base = b;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// N_1..N_k: fiberwise while q stays small, the closed form beyond.
std::vector<mpz_class> counts(SurfaceId id, std::uint64_t p, Space space, unsigned k) {
  std::vector<mpz_class> out;
  std::uint64_t q = 1;
  for (unsigned n = 1; n <= k; ++n) {
    q *= p;
    const auto formula = count_formula(id, p, n, space).count;
    if (q <= 2048) {
      const auto fib = tally_fibers(surface(id), FieldTables(make_field(p, n))).in(space);
      REQUIRE(fib == formula);
    }
    out.emplace_back(static_cast<unsigned long>(formula));
  }
  return out;
}

LocalZetaFactors Z(std::uint64_t p, std::vector<ZetaFactor> f) { return normalize({p, std::move(f)}); }

}  // namespace

TEST_CASE("zeta series from counts") {
  // exp(sum (4^n + 1) T^n / n) = 1 / ((1 - T)(1 - 4T))
  CHECK(zeta_series_from_counts(to_mpz({5, 17, 65}), 3) == to_mpz({1, 5, 21, 85}));
  CHECK(zeta_series_from_counts(to_mpz({0, 0, 0}), 3) == to_mpz({1, 0, 0, 0}));
  const auto n1 = count_affine_brute(surface(SurfaceId::L0), make_field(2)).count;
  CHECK(zeta_series_from_counts(to_mpz({static_cast<long>(n1)}), 1) == to_mpz({1, 5}));
  // 2 c_2 = N_1 c_1 + N_2 c_0 = 1 + 0 is odd.
  CHECK_THROWS_AS(zeta_series_from_counts(to_mpz({1, 0}), 2), std::domain_error);
  CHECK_THROWS_AS(zeta_series_from_counts(to_mpz({1}), 2), std::invalid_argument);
}

TEST_CASE("series of a factor product by binomial expansion") {
  // (1 - 2T)^(-2) = sum (j + 1) 2^j T^j
  CHECK(series(Z(2, {{2, 2}}), 4) == to_mpz({1, 4, 12, 32, 80}));
  // (1 - T)(1 + 3T) = 1 + 2T - 3T^2
  CHECK(series(Z(3, {{1, -1}, {-3, -1}}), 3) == to_mpz({1, 2, -3, 0}));
  CHECK(count(Z(3, {{9, 1}, {3, 3}, {1, 1}}), 2) == 81 + 27 + 1);
}

TEST_CASE("normalisation, product and quotient") {
  const auto a = Z(7, {{7, 3}, {49, 1}, {1, 1}, {7, -1}});
  CHECK(a.factors == std::vector<ZetaFactor>{{49, 1}, {7, 2}, {1, 1}});
  CHECK(divide(a, a).factors.empty());
  CHECK(multiply(a, a).factors == std::vector<ZetaFactor>{{49, 2}, {7, 4}, {1, 2}});
  CHECK_THROWS_AS(multiply(a, Z(5, {})), std::invalid_argument);
}

TEST_CASE("blind recovery on surface counts") {
  CHECK(recover_factors(sequence(14, [](unsigned n) -> mpz_class { return pw(4, n) + 1; }), 2) == Z(2, {{4, 1}, {1, 1}}));
  CHECK(recover_factors(counts(SurfaceId::L0, 2, Space::affine, 14), 2) == Z(2, {{4, 1}, {1, 1}}));
  CHECK(recover_factors(counts(SurfaceId::L0, 2, Space::biprojective, 14), 2) == Z(2, {{4, 1}, {2, 3}, {1, 1}}));
  CHECK(recover_factors(counts(SurfaceId::L1, 2, Space::biprojective, 14), 2) ==
        Z(2, {{4, 1}, {2, 3}, {1, 1}, {-2, 1}}));
  CHECK(recover_factors(counts(SurfaceId::L2, 3, Space::biprojective, 14), 3) == Z(3, {{9, 1}, {3, 3}, {1, 1}}));
  CHECK(recover_factors(counts(SurfaceId::L1, 3, Space::nonaffine, 14), 3) == Z(3, {{3, 4}, {1, -2}}));
}

TEST_CASE("recovery failures") {
  CHECK_THROWS_AS(recover_factors(sequence(13, [](unsigned n) -> mpz_class { return pw(4, n); }), 2), std::invalid_argument);
  CHECK_THROWS_AS(recover_factors(sequence(14, [](unsigned n) -> mpz_class { return pw(4, n); }), 4), std::invalid_argument);
  // 3 is not a candidate unit at p = 2.
  CHECK_THROWS_AS(recover_factors(sequence(14, [](unsigned n) -> mpz_class { return pw(3, n) + 1; }), 2), RecoveryError);
  // (4^n + 2^n) / 2 would need exponents 1/2.
  CHECK_THROWS_AS(recover_factors(sequence(14, [](unsigned n) -> mpz_class { return (pw(4, n) + pw(2, n)) / 2; }), 2), RecoveryError);
  // A single corrupted count.
  auto bad = sequence(14, [](unsigned n) -> mpz_class { return pw(4, n) + 1; });
  bad[9] += 1;
  CHECK_THROWS_AS(recover_factors(bad, 2), RecoveryError);
}

TEST_CASE("round trip on random factor multisets") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> expo(-3, 3);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    const auto ip = static_cast<std::int64_t>(p);
    const std::vector<std::int64_t> units{ip * ip, ip, 1, -1, -ip, -ip * ip};
    for (int trial = 0; trial < 40; ++trial) {
      LocalZetaFactors z{p, {}};
      for (auto u : units) z.factors.push_back({u, expo(rng)});
      z = normalize(z);
      const auto N = sequence(14, [&](unsigned n) -> mpz_class { return count(z, n); });
      CHECK(recover_factors(N, p) == z);
      CHECK(series(z, 14) == zeta_series_from_counts(N, 14));
    }
  }
}

TEST_CASE("closed-form local zetas") {
  for (std::uint64_t p : {7, 17, 23, 31}) CHECK(local_zeta_closed_form(SurfaceId::L0, p, Space::biprojective) ==
                                                Z(p, {{static_cast<std::int64_t>(p * p), 1}, {static_cast<std::int64_t>(p), 7}, {1, 1}}));
  CHECK(local_zeta_closed_form(SurfaceId::L1, 5, Space::biprojective) == Z(5, {{25, 1}, {5, 6}, {1, 1}}));
  CHECK(local_zeta_closed_form(SurfaceId::L0, 7, Space::affine) == Z(7, {{49, 1}, {7, 4}, {1, 2}}));
  CHECK(local_zeta_closed_form(SurfaceId::L0, 7, Space::nonaffine) == Z(7, {{7, 3}, {1, -1}}));
  CHECK(local_zeta_closed_form(SurfaceId::L0, 2, Space::biprojective) == Z(2, {{4, 1}, {2, 3}, {1, 1}}));
  CHECK_THROWS_AS(local_zeta_closed_form(SurfaceId::L0, 6, Space::affine), std::invalid_argument);
}

TEST_CASE("closed-form local zetas reproduce the closed-form counts") {
  for (std::uint64_t p = 2; p < 60; ++p) {
    if (!is_prime(p)) continue;
    for (auto id : kAllSurfaces)
      for (auto s : {Space::affine, Space::biprojective, Space::nonaffine}) {
        const auto z = local_zeta_closed_form(id, p, s);
        for (unsigned n = 1; std::pow(static_cast<double>(p), n) <= 1e9; ++n)
          CHECK(count(z, n) == static_cast<unsigned long>(count_formula(id, p, n, s).count));
      }
  }
}

TEST_CASE("Weil integrality of the series from fiberwise counts") {
  for (std::uint64_t p : {5, 7, 11, 13}) {
    for (auto id : kAllSurfaces)
      for (auto s : {Space::affine, Space::biprojective, Space::nonaffine}) {
        std::vector<mpz_class> N;
        for (unsigned n = 1; std::pow(static_cast<double>(p), n) <= 20000; ++n)
          N.emplace_back(static_cast<unsigned long>(tally_fibers(surface(id), FieldTables(make_field(p, n))).in(s)));
        const auto k = static_cast<unsigned>(N.size());
        CHECK_NOTHROW(zeta_series_from_counts(N, k));
        CHECK(zeta_series_from_counts(N, k) == series(local_zeta_closed_form(id, p, s), k));
      }
  }
}
