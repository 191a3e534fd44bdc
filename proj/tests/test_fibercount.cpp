#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "charzeta/fibercount.hpp"

using namespace charzeta;

namespace {

using Code = FieldTables::value_type;

std::vector<std::pair<std::uint64_t, unsigned>> prime_powers_up_to(std::uint64_t bound) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p <= bound; ++p) {
    if (!is_prime(p)) continue;
    unsigned n = 1;
    for (std::uint64_t q = p; q <= bound; q *= p, ++n) out.emplace_back(p, n);
  }
  return out;
}

std::uint64_t plane_points(const FieldTables& t, const TernaryForm<Code>& Q) {
  std::uint64_t count = 0;
  for_each_plane_point(t.q(), [&](const PlanePoint& pp) {
    const auto x = static_cast<Code>(pp[0]), y = static_cast<Code>(pp[1]), u = static_cast<Code>(pp[2]);
    Code v = t.mul(Q.xx, t.mul(x, x));
    v = t.add(v, t.mul(Q.yy, t.mul(y, y)));
    v = t.add(v, t.mul(Q.uu, t.mul(u, u)));
    v = t.add(v, t.mul(Q.xy, t.mul(x, y)));
    v = t.add(v, t.mul(Q.xu, t.mul(x, u)));
    v = t.add(v, t.mul(Q.yu, t.mul(y, u)));
    if (v == 0) ++count;
  });
  return count;
}

}  // namespace

TEST_CASE("binary form roots match enumeration of P^1") {
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}}) {
    const FieldTables t(make_field(p, n));
    const auto q = static_cast<Code>(t.q());
    CAPTURE(t.q());
    for (Code a = 0; a < q; ++a)
      for (Code b = 0; b < q; ++b)
        for (Code c = 0; c < q; ++c) {
          std::uint64_t roots = 0;
          for_each_line_point(q, [&](const LinePoint& lp) {
            const auto x = static_cast<Code>(lp[0]), y = static_cast<Code>(lp[1]);
            const Code v = t.add(t.add(t.mul(a, t.mul(x, x)), t.mul(b, t.mul(x, y))), t.mul(c, t.mul(y, y)));
            if (v == 0) ++roots;
          });
          REQUIRE(binary_form_roots(t, a, b, c) == roots);
        }
  }
}

TEST_CASE("fiber forms restrict F to the fiber") {
  std::mt19937_64 rng(5);
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, unsigned>>{{7, 1}, {2, 2}, {3, 2}, {13, 1}}) {
    const auto f = make_field(p, n);
    const FieldTables t(f);
    const ElementOps ops(f);
    std::uniform_int_distribution<std::uint64_t> pick(0, f.q() - 1);
    for (auto id : kAllSurfaces) {
      const auto& m = surface(id);
      for_each_line_point(f.q(), [&](const LinePoint& lp) {
        const auto Qt = fiber_form(m, t, lp);
        const auto Qe = fiber_form(m, f.from_code(lp[0]), f.from_code(lp[1]));
        CHECK(Qe.xx.code() == Qt.xx);
        CHECK(Qe.yy.code() == Qt.yy);
        CHECK(Qe.uu.code() == Qt.uu);
        CHECK(Qe.xy.code() == Qt.xy);
        CHECK(Qe.xu.code() == Qt.xu);
        CHECK(Qe.yu.code() == Qt.yu);
        for (int k = 0; k < 4; ++k) {
          const auto x = f.from_code(pick(rng)), y = f.from_code(pick(rng)), u = f.from_code(pick(rng));
          const auto lhs = m.bihomogeneous().evaluate(ops, {x, y, u, f.from_code(lp[0]), f.from_code(lp[1])});
          const auto rhs = Qe.xx * x * x + Qe.yy * y * y + Qe.uu * u * u + Qe.xy * x * y + Qe.xu * x * u + Qe.yu * y * u;
          CHECK(lhs == rhs);
        }
      });
    }
  }
  const auto f = make_field(5);
  CHECK_THROWS_AS(fiber_form(surface(SurfaceId::L0), f.zero(), f.zero()), std::invalid_argument);
}

TEST_CASE("fiber reports: each count is the conic's point count, and they sum to the total") {
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {5, 2}}) {
    const auto f = make_field(p, n);
    const FieldTables t(f);
    CAPTURE(f.q());
    for (auto id : kAllSurfaces) {
      const auto res = count_fiberwise(surface(id), f);
      CHECK(res.fibers.size() == f.q() + 1);
      std::uint64_t sum = 0;
      for (const auto& r : res.fibers) {
        sum += r.count;
        CHECK(r.count == plane_points(t, fiber_form(surface(id), t, r.base)));
        CHECK(r.conic.has_value() == (p != 2));
        if (!r.degenerate) CHECK(r.count == f.q() + 1);
        if (r.conic) CHECK(r.conic->point_count == r.count);
      }
      CHECK(sum == res.record.count);
      CHECK(res.record.count == count_biprojective_brute(surface(id), t).count);
    }
  }
}

TEST_CASE("degenerate fibers match the closed-form base points") {
  for (auto [p, n] : prime_powers_up_to(64)) {
    const auto f = make_field(p, n);
    CAPTURE(f.q());
    for (auto id : kAllSurfaces) CHECK(degenerate_fibers(surface(id), f) == degenerate_fibers_closed_form(id, f));
  }
  // Sizes: L0 has 6 degenerate fibers exactly when 2 is a square.
  CHECK(degenerate_fibers(surface(SurfaceId::L0), make_field(7)).size() == 6);
  CHECK(degenerate_fibers(surface(SurfaceId::L0), make_field(5)).size() == 4);
  CHECK(degenerate_fibers(surface(SurfaceId::L1), make_field(11)).size() == 8);
  CHECK(degenerate_fibers(surface(SurfaceId::L1), make_field(5)).size() == 6);
}

TEST_CASE("fiberwise counts agree with brute force and the closed form") {
  for (auto [p, n] : prime_powers_up_to(32)) {
    const auto f = make_field(p, n);
    const FieldTables t(f);
    CAPTURE(f.q());
    for (auto id : kAllSurfaces) {
      const auto tally = tally_fibers(surface(id), t);
      CHECK(tally.affine == count_affine_brute(surface(id), t).count);
      CHECK(tally.nonaffine == count_nonaffine_brute(surface(id), t).count);
      CHECK(tally.biprojective == count_biprojective_brute(surface(id), t).count);
      for (auto s : {Space::affine, Space::biprojective, Space::nonaffine})
        CHECK(tally.in(s) == count_formula(id, p, n, s).count);
    }
  }
  for (auto [p, n] : prime_powers_up_to(3000)) {
    if (p == 2 && n > 10) continue;
    const auto f = make_field(p, n);
    const FieldTables t(f);
    CAPTURE(f.q());
    for (auto id : kAllSurfaces) {
      const auto tally = tally_fibers(surface(id), t);
      CHECK(tally.affine + tally.nonaffine == tally.biprojective);
      for (auto s : {Space::affine, Space::biprojective, Space::nonaffine})
        REQUIRE(tally.in(s) == count_formula(id, p, n, s).count);
    }
  }
}

TEST_CASE("closed-form counts") {
  CHECK(count_formula(SurfaceId::L0, 7, 1, Space::biprojective).count == 99);
  CHECK(count_formula(SurfaceId::L0, 7, 1, Space::nonaffine).count == 20);
  CHECK(count_formula(SurfaceId::L0, 3, 2, Space::biprojective).count == 145);
  CHECK(count_formula(SurfaceId::L1, 11, 1, Space::affine).count == 168);
  CHECK(count_formula(SurfaceId::L2, 3, 1, Space::nonaffine).count == 8);
  CHECK(count_formula(SurfaceId::L2, 3, 1, Space::affine).count == 11);
  CHECK(count_formula(SurfaceId::L1, 2, 2, Space::biprojective).count == 33);
  CHECK(count_formula(SurfaceId::L0, 2, 1, Space::affine).count == 5);
  CHECK(count_formula(SurfaceId::L1, 2, 1, Space::affine).count == 2);
  CHECK(count_formula(SurfaceId::L0, 2, 1, Space::affine).method == Method::formula);
  CHECK_THROWS_AS(count_formula(SurfaceId::L0, 9, 1, Space::affine), std::invalid_argument);
  CHECK_THROWS_AS(count_formula(SurfaceId::L0, 3, 0, Space::affine), std::invalid_argument);
  CHECK_THROWS_AS(count_formula(SurfaceId::L0, 2, 63, Space::affine), std::overflow_error);
  CHECK_THROWS_AS(count_formula(SurfaceId::L0, 3, 40, Space::affine), std::overflow_error);
}

TEST_CASE("fiberwise bounds") {
  CHECK_THROWS_AS(count_fiberwise(surface(SurfaceId::L0), make_field(2, 13)), std::out_of_range);
  CHECK_THROWS_AS(tally_fibers(surface(SurfaceId::L0), FieldTables(make_field(1000003))), std::out_of_range);
}
