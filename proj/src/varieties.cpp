#include "charzeta/varieties.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "charzeta/parallel.hpp"

namespace charzeta {

using u64 = std::uint64_t;
using Code = FieldTables::value_type;

std::string_view to_string(SurfaceId id) {
  switch (id) {
    case SurfaceId::L0: return "L0";
    case SurfaceId::L1: return "L1";
    case SurfaceId::L2: return "L2";
  }
  return "?";
}

std::string_view to_string(Space s) {
  switch (s) {
    case Space::affine: return "affine";
    case Space::biprojective: return "biprojective";
    case Space::nonaffine: return "nonaffine";
  }
  return "?";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::brute: return "brute";
    case Method::fiberwise: return "fiberwise";
    case Method::formula: return "formula";
  }
  return "?";
}

SurfaceId parse_surface(std::string_view name) {
  for (auto id : kAllSurfaces)
    if (name == to_string(id)) return id;
  throw std::invalid_argument("unknown surface '" + std::string(name) + "'");
}

Space parse_space(std::string_view name) {
  for (auto s : {Space::affine, Space::biprojective, Space::nonaffine})
    if (name == to_string(s)) return s;
  throw std::invalid_argument("unknown space '" + std::string(name) + "'");
}

Method parse_method(std::string_view name) {
  for (auto m : {Method::brute, Method::fiberwise, Method::formula})
    if (name == to_string(m)) return m;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

namespace {

constexpr std::array<std::array<unsigned, 3>, kSlotCount> kSlotExps{{
    {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}}};

std::size_t slot_of(const std::array<unsigned, 5>& e) {
  for (std::size_t s = 0; s < kSlotCount; ++s)
    if (kSlotExps[s][0] == e[0] && kSlotExps[s][1] == e[1] && kSlotExps[s][2] == e[2]) return s;
  throw std::invalid_argument("surface: term is not quadratic in (x, y, u)");
}

AffinePoly::Term at(std::int64_t c, unsigned x, unsigned y, unsigned z) { return {c, {x, y, z}}; }
BihomPoly::Term bt(std::int64_t c, unsigned x, unsigned y, unsigned u, unsigned z, unsigned w) {
  return {c, {x, y, u, z, w}};
}

SurfaceModel build(SurfaceId id) {
  switch (id) {
    case SurfaceId::L0:
      // z^3 - xyz^2 + (x^2 + y^2 - 2)z - xy
      return SurfaceModel(
          id,
          AffinePoly{{at(1, 0, 0, 3), at(-1, 1, 1, 2), at(1, 2, 0, 1), at(1, 0, 2, 1), at(-2, 0, 0, 1), at(-1, 1, 1, 0)}},
          BihomPoly{{bt(1, 0, 0, 2, 3, 0), bt(-1, 1, 1, 0, 2, 1), bt(1, 2, 0, 0, 1, 2), bt(1, 0, 2, 0, 1, 2),
                     bt(-2, 0, 0, 2, 1, 2), bt(-1, 1, 1, 0, 0, 3)}});
    case SurfaceId::L1:
      // z^4 - xyz^3 + (x^2 + y^2 - 3)z^2 - xyz + 1
      return SurfaceModel(
          id,
          AffinePoly{{at(1, 0, 0, 4), at(-1, 1, 1, 3), at(1, 2, 0, 2), at(1, 0, 2, 2), at(-3, 0, 0, 2),
                      at(-1, 1, 1, 1), at(1, 0, 0, 0)}},
          BihomPoly{{bt(1, 0, 0, 2, 4, 0), bt(-1, 1, 1, 0, 3, 1), bt(1, 2, 0, 0, 2, 2), bt(1, 0, 2, 0, 2, 2),
                     bt(-3, 0, 0, 2, 2, 2), bt(-1, 1, 1, 0, 1, 3), bt(1, 0, 0, 2, 0, 4)}});
    case SurfaceId::L2:
      // z^3 - xyz^2 + (x^2 + y^2 - 1)z - xy
      return SurfaceModel(
          id,
          AffinePoly{{at(1, 0, 0, 3), at(-1, 1, 1, 2), at(1, 2, 0, 1), at(1, 0, 2, 1), at(-1, 0, 0, 1), at(-1, 1, 1, 0)}},
          BihomPoly{{bt(1, 0, 0, 2, 3, 0), bt(-1, 1, 1, 0, 2, 1), bt(1, 2, 0, 0, 1, 2), bt(1, 0, 2, 0, 1, 2),
                     bt(-1, 0, 0, 2, 1, 2), bt(-1, 1, 1, 0, 0, 3)}});
  }
  throw std::invalid_argument("unknown surface id");
}

}  // namespace

SurfaceModel::SurfaceModel(SurfaceId id, AffinePoly affine, BihomPoly bihomogeneous)
    : id_(id), affine_(affine.canonical()), bihom_(bihomogeneous.canonical()) {
  if (bihom_.terms.empty()) throw std::invalid_argument("surface: zero polynomial");
  const auto& first = bihom_.terms.front().exps;
  degree_ = first[3] + first[4];
  for (auto& v : fiber_) v.assign(degree_ + 1, 0);
  for (const auto& t : bihom_.terms) {
    if (t.exps[0] + t.exps[1] + t.exps[2] != 2) throw std::invalid_argument("surface: F not of degree 2 in (x, y, u)");
    if (t.exps[3] + t.exps[4] != degree_) throw std::invalid_argument("surface: F not homogeneous in (z, w)");
    fiber_[slot_of(t.exps)][t.exps[4]] += t.coeff;
  }
  AffinePoly dehom;
  for (const auto& t : bihom_.terms) dehom.terms.push_back({t.coeff, {t.exps[0], t.exps[1], t.exps[3]}});
  if (!(dehom == affine_)) throw std::invalid_argument("surface: F(x, y, 1, z, 1) differs from f");
  for (unsigned v = 0; v < 5; ++v) gradient_[v] = bihom_.derivative(v);
}

const SurfaceModel& surface(SurfaceId id) {
  static const std::array<SurfaceModel, 3> models{build(SurfaceId::L0), build(SurfaceId::L1), build(SurfaceId::L2)};
  return models[static_cast<std::size_t>(id)];
}

PlanePoint normalize_plane(const FieldTables& f, PlanePoint pt) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (pt[i] == 0) continue;
    const Code s = f.inv(static_cast<Code>(pt[i]));
    for (auto& c : pt) c = f.mul(static_cast<Code>(c), s);
    return pt;
  }
  throw std::invalid_argument("normalize_plane: zero vector");
}

LinePoint normalize_line(const FieldTables& f, LinePoint pt) {
  for (std::size_t i = 0; i < 2; ++i) {
    if (pt[i] == 0) continue;
    const Code s = f.inv(static_cast<Code>(pt[i]));
    for (auto& c : pt) c = f.mul(static_cast<Code>(c), s);
    return pt;
  }
  throw std::invalid_argument("normalize_line: zero vector");
}

namespace {

void require_bound(const FieldTables& t, u64 bound, const char* what) {
  if (t.q() > bound)
    throw std::out_of_range(std::string(what) + ": q = " + std::to_string(t.q()) + " exceeds " + std::to_string(bound));
}

CountRecord record(const SurfaceModel& m, const FieldTables& t, Space s, Method meth, u64 count) {
  return CountRecord{m.id(), t.p(), t.field().n(), s, meth, count};
}

// F reduced mod p, with each term's coefficient as a field code.
struct ReducedTerm {
  Code coeff;
  std::array<unsigned, 5> exps;
};

std::vector<ReducedTerm> reduce_terms(const BihomPoly& F, const FieldTables& t) {
  std::vector<ReducedTerm> out;
  for (const auto& term : F.terms) out.push_back({t.from_int(term.coeff), term.exps});
  return out;
}

Code power(const FieldTables& t, Code base, unsigned e) {
  Code r = 1;
  for (unsigned i = 0; i < e; ++i) r = t.mul(r, base);
  return r;
}

// F at a point, term by term.
Code evaluate_full(const FieldTables& t, const std::vector<ReducedTerm>& terms, const std::array<Code, 5>& pt) {
  Code acc = 0;
  for (const auto& term : terms) {
    Code v = term.coeff;
    for (std::size_t i = 0; i < 5; ++i) v = t.mul(v, power(t, pt[i], term.exps[i]));
    acc = t.add(acc, v);
  }
  return acc;
}

std::array<Code, 5> as_codes(const BiprojectivePoint& p) {
  return {static_cast<Code>(p.plane[0]), static_cast<Code>(p.plane[1]), static_cast<Code>(p.plane[2]),
          static_cast<Code>(p.line[0]), static_cast<Code>(p.line[1])};
}

}  // namespace

CountRecord count_affine_brute(const SurfaceModel& model, const FieldDesc& field) {
  if (field.q() > kMaxAffineBrute) throw std::out_of_range("count_affine_brute: q exceeds bound");
  return count_affine_brute(model, FieldTables(field));
}

CountRecord count_affine_brute(const SurfaceModel& model, const FieldTables& t) {
  require_bound(t, kMaxAffineBrute, "count_affine_brute");
  const u64 q = t.q();
  unsigned zdeg = 0;
  for (const auto& term : model.affine().terms) zdeg = std::max(zdeg, term.exps[2]);
  std::vector<std::pair<Code, std::array<unsigned, 3>>> terms;
  for (const auto& term : model.affine().terms) terms.push_back({t.from_int(term.coeff), term.exps});

  const u64 total = parallel_sum(q, [&](std::size_t xi) {
    const Code x = static_cast<Code>(xi);
    std::vector<Code> zc(zdeg + 1);
    u64 count = 0;
    for (Code y = 0; y < q; ++y) {
      std::fill(zc.begin(), zc.end(), 0);
      for (const auto& [c, e] : terms) zc[e[2]] = t.add(zc[e[2]], t.mul(c, t.mul(power(t, x, e[0]), power(t, y, e[1]))));
      for (Code z = 0; z < q; ++z) {
        Code v = zc[zdeg];
        for (unsigned k = zdeg; k-- > 0;) v = t.add(t.mul(v, z), zc[k]);
        if (v == 0) ++count;
      }
    }
    return count;
  });
  return record(model, t, Space::affine, Method::brute, total);
}

CountRecord count_biprojective_brute(const SurfaceModel& model, const FieldDesc& field) {
  if (field.q() > kMaxBiprojectiveBrute) throw std::out_of_range("count_biprojective_brute: q exceeds bound");
  return count_biprojective_brute(model, FieldTables(field));
}

CountRecord count_biprojective_brute(const SurfaceModel& model, const FieldTables& t) {
  require_bound(t, kMaxBiprojectiveBrute, "count_biprojective_brute");
  const u64 q = t.q();
  const auto terms = reduce_terms(model.bihomogeneous(), t);
  std::vector<LinePoint> base;
  for_each_line_point(q, [&](LinePoint lp) { base.push_back(lp); });

  const u64 total = parallel_sum(base.size(), [&](std::size_t bi) {
    const Code z = static_cast<Code>(base[bi][0]), w = static_cast<Code>(base[bi][1]);
    // Collect F's terms by their (x, y, u)-monomial at this (z:w), then
    // enumerate the plane.
    std::map<std::array<unsigned, 3>, Code> by_monomial;
    for (const auto& term : terms) {
      const Code zw = t.mul(term.coeff, t.mul(power(t, z, term.exps[3]), power(t, w, term.exps[4])));
      auto& slot = by_monomial[{term.exps[0], term.exps[1], term.exps[2]}];
      slot = t.add(slot, zw);
    }
    std::vector<std::pair<Code, std::array<unsigned, 3>>> mons;
    for (const auto& [e, c] : by_monomial)
      if (c) mons.push_back({c, e});
    u64 count = 0;
    for_each_plane_point(q, [&](const PlanePoint& pp) {
      Code v = 0;
      for (const auto& [c, e] : mons) {
        Code m = c;
        for (std::size_t i = 0; i < 3; ++i) m = t.mul(m, power(t, static_cast<Code>(pp[i]), e[i]));
        v = t.add(v, m);
      }
      if (v == 0) ++count;
    });
    return count;
  });
  return record(model, t, Space::biprojective, Method::brute, total);
}

CountRecord count_nonaffine_brute(const SurfaceModel& model, const FieldDesc& field) {
  if (field.q() > kMaxNonaffineBrute) throw std::out_of_range("count_nonaffine_brute: q exceeds bound");
  return count_nonaffine_brute(model, FieldTables(field));
}

CountRecord count_nonaffine_brute(const SurfaceModel& model, const FieldTables& t) {
  require_bound(t, kMaxNonaffineBrute, "count_nonaffine_brute");
  const u64 q = t.q();
  const auto terms = reduce_terms(model.bihomogeneous(), t);
  u64 count = 0;
  // u = 0, any base point.
  for_each_line_point(q, [&](const LinePoint& lp) {
    for (u64 b = 0; b <= q; ++b) {
      const PlanePoint pp = b < q ? PlanePoint{1, b, 0} : PlanePoint{0, 1, 0};
      if (evaluate_full(t, terms, as_codes({pp, lp})) == 0) ++count;
    }
  });
  // w = 0 and u != 0.
  for_each_plane_point(q, [&](const PlanePoint& pp) {
    if (pp[2] == 0) return;
    if (evaluate_full(t, terms, as_codes({pp, LinePoint{1, 0}})) == 0) ++count;
  });
  return record(model, t, Space::nonaffine, Method::brute, count);
}

std::optional<bool> singular_in_chart(const SurfaceModel& model, const FieldTables& t, const BiprojectivePoint& pt,
                                      Chart chart) {
  if (chart.plane_index > 2 || chart.line_index > 1) throw std::invalid_argument("singular_in_chart: bad chart");
  if (pt.plane[chart.plane_index] == 0 || pt.line[chart.line_index] == 0) return std::nullopt;
  // Rescale so the chart coordinates equal 1.
  PlanePoint plane = pt.plane;
  LinePoint line = pt.line;
  const Code ps = t.inv(static_cast<Code>(plane[chart.plane_index]));
  const Code ls = t.inv(static_cast<Code>(line[chart.line_index]));
  for (auto& c : plane) c = t.mul(static_cast<Code>(c), ps);
  for (auto& c : line) c = t.mul(static_cast<Code>(c), ls);
  const std::array<Code, 5> at = as_codes({plane, line});

  // The partial of the dehomogenised polynomial in a free variable is the
  // partial of F evaluated with the chart coordinates at 1.
  const unsigned line_var = 3 + chart.line_index;
  for (unsigned v = 0; v < 5; ++v) {
    if (v == chart.plane_index || v == line_var) continue;
    if (model.gradient()[v].evaluate(t, at) != 0) return false;
  }
  return true;
}

std::vector<BiprojectivePoint> singular_locus(const SurfaceModel& model, const FieldDesc& field) {
  if (field.q() > kMaxSingularSearch) throw std::out_of_range("singular_locus: q exceeds bound");
  const FieldTables t(field);
  const u64 q = t.q();
  const auto terms = reduce_terms(model.bihomogeneous(), t);

  std::vector<BiprojectivePoint> out;
  for_each_line_point(q, [&](const LinePoint& lp) {
    for_each_plane_point(q, [&](const PlanePoint& pp) {
      const BiprojectivePoint pt{pp, lp};
      if (evaluate_full(t, terms, as_codes(pt)) != 0) return;
      std::optional<bool> verdict;
      for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = 0; j < 2; ++j) {
          const auto s = singular_in_chart(model, t, pt, Chart{i, j});
          if (!s) continue;
          if (verdict && *verdict != *s) throw std::logic_error("singular_locus: charts disagree");
          verdict = s;
        }
      if (verdict.value_or(false)) out.push_back(pt);
    });
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BiprojectivePoint> singular_locus_closed_form(SurfaceId id, const FieldDesc& field) {
  if (field.q() > kMaxSingularSearch) throw std::out_of_range("singular_locus_closed_form: q exceeds bound");
  const FieldTables t(field);
  const u64 q = t.q();
  const Code one = 1, minus_one = t.neg(1);
  std::set<BiprojectivePoint> pts;
  auto add = [&](PlanePoint pp, LinePoint lp) { pts.insert({normalize_plane(t, pp), normalize_line(t, lp)}); };

  // Points present in every characteristic (the two sign variants coincide
  // in characteristic 2).
  add({1, 0, 0}, {1, 0});
  add({0, 1, 0}, {1, 0});
  add({1, 1, 0}, {1, 1});
  add({1, minus_one, 0}, {1, minus_one});
  if (id == SurfaceId::L1) {
    add({1, 0, 0}, {0, 1});
    add({0, 1, 0}, {0, 1});
  }

  if (field.p() == 5 && id == SurfaceId::L1) {
    add({0, 0, 1}, {1, t.from_int(2)});
    add({0, 0, 1}, {1, t.from_int(-2)});
  }

  if (field.p() == 2) {
    for (Code a = 0; a < q; ++a) {
      const Code a1 = t.add(a, one);
      if (id == SurfaceId::L2) {
        add({a, a, 1}, {1, 1});
        add({1, 1, a}, {1, 1});
      } else {
        add({a, 1, a1}, {1, 1});
        add({a, a1, 1}, {1, 1});
        add({1, a, a1}, {1, 1});
      }
    }
    if (id == SurfaceId::L0) add({0, 0, 1}, {0, 1});
    if (id == SurfaceId::L1) {
      for (Code w = 0; w < q; ++w)
        if (t.add(t.add(t.mul(w, w), w), one) == 0) add({0, 0, 1}, {1, w});
    }
  }
  return {pts.begin(), pts.end()};
}

}  // namespace charzeta
