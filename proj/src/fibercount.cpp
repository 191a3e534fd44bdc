#include "charzeta/fibercount.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "charzeta/parallel.hpp"

namespace charzeta {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Code = FieldTables::value_type;

TernaryForm<FieldElement> fiber_form(const SurfaceModel& model, const FieldElement& z, const FieldElement& w) {
  const FieldDesc& f = z.field();
  if (!(w.field() == f)) throw std::invalid_argument("fiber_form: mismatched fields");
  if (z.is_zero() && w.is_zero()) throw std::invalid_argument("fiber_form: (0:0) is not a point of P^1");
  const unsigned d = model.fiber_degree();
  std::array<FieldElement, kSlotCount> v{f.zero(), f.zero(), f.zero(), f.zero(), f.zero(), f.zero()};
  for (std::size_t s = 0; s < kSlotCount; ++s) {
    const auto& coeffs = model.fiber_coefficients()[s];
    for (unsigned k = 0; k <= d; ++k) {
      if (coeffs[k] == 0) continue;
      v[s] += f.from_int(coeffs[k]) * z.pow(d - k) * w.pow(k);
    }
  }
  return {v[kXX], v[kYY], v[kUU], v[kXY], v[kXU], v[kYU]};
}

namespace {

// Fiber coefficients reduced into one field, evaluated by Horner's rule.
class FiberKernel {
 public:
  FiberKernel(const SurfaceModel& model, const FieldTables& t) : t_(t), d_(model.fiber_degree()) {
    for (std::size_t s = 0; s < kSlotCount; ++s) {
      for (auto c : model.fiber_coefficients()[s]) coeffs_[s].push_back(t.from_int(c));
      if (std::any_of(coeffs_[s].begin(), coeffs_[s].end(), [](Code c) { return c != 0; })) live_.push_back(s);
    }
  }

  TernaryForm<Code> form(LinePoint base) const {
    std::array<Code, kSlotCount> v{};
    const Code z = static_cast<Code>(base[0]), w = static_cast<Code>(base[1]);
    for (std::size_t s : live_) {
      const auto& c = coeffs_[s];
      if (z == 1) {
        // sum_k c_k w^k
        Code acc = c[d_];
        for (unsigned k = d_; k-- > 0;) acc = t_.add(t_.mul(acc, w), c[k]);
        v[s] = acc;
      } else {
        Code acc = 0;
        for (unsigned k = 0; k <= d_; ++k)
          acc = t_.add(acc, t_.mul(c[k], t_.mul(t_.pow(z, d_ - k), t_.pow(w, k))));
        v[s] = acc;
      }
    }
    return {v[kXX], v[kYY], v[kUU], v[kXY], v[kXU], v[kYU]};
  }

 private:
  const FieldTables& t_;
  unsigned d_;
  std::array<std::vector<Code>, kSlotCount> coeffs_;
  std::vector<std::size_t> live_;  // slots whose coefficients do not all vanish mod p
};

u64 enumerate_conic(const FieldTables& t, const TernaryForm<Code>& Q) {
  u64 count = 0;
  for_each_plane_point(t.q(), [&](const PlanePoint& pp) {
    const Code x = static_cast<Code>(pp[0]), y = static_cast<Code>(pp[1]), u = static_cast<Code>(pp[2]);
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

TernaryForm<Code> fiber_form(const SurfaceModel& model, const FieldTables& tables, LinePoint base) {
  return FiberKernel(model, tables).form(normalize_line(tables, base));
}

u64 binary_form_roots(const FieldTables& t, Code a, Code b, Code c) {
  if (a == 0 && b == 0 && c == 0) return t.q() + 1;
  if (t.p() != 2) {
    const Code disc = t.sub(t.mul(b, b), t.mul(t.from_int(4), t.mul(a, c)));
    if (disc == 0) return 1;
    return t.is_square(disc) ? 2 : 0;
  }
  // Characteristic 2: with b = 0 the form is a square of a linear form;
  // otherwise the roots are governed by the trace of ac/b^2.
  if (b == 0) return 1;
  if (a == 0 || c == 0) return 2;
  return t.trace(t.mul(t.mul(a, c), t.inv(t.mul(b, b)))) == 0 ? 2 : 0;
}

FiberTally tally_fibers(const SurfaceModel& model, const FieldTables& t, std::vector<FiberReport>* reports,
                        bool degenerate_only) {
  const u64 q = t.q();
  const bool char2 = t.p() == 2;
  const u64 bound = char2 ? kMaxFiberwiseChar2 : kMaxFiberwise;
  if (q > bound) throw std::out_of_range("fiberwise count: q = " + std::to_string(q) + " exceeds " + std::to_string(bound));

  const FiberKernel kernel(model, t);
  const std::size_t nbase = q + 1;  // (1:b) for b < q, then (0:1)
  constexpr std::size_t kBlocks = 64;
  const std::size_t blocks = std::min(nbase, kBlocks);
  std::vector<FiberTally> partial(blocks);
  std::vector<std::vector<FiberReport>> partial_reports(reports ? blocks : 0);

  parallel_for(blocks, [&](std::size_t blk) {
    FiberTally acc;
    for (std::size_t i = nbase * blk / blocks; i < nbase * (blk + 1) / blocks; ++i) {
      const LinePoint base = i < q ? LinePoint{1, i} : LinePoint{0, 1};
      const auto Q = kernel.form(base);
      const bool smooth = half_discriminant(t, Q) != 0;
      std::optional<ConicClass> conic;
      u64 count;
      if (smooth) {
        // A smooth conic over a finite field has a rational point, hence
        // is a P^1.
        count = q + 1;
        if (!char2) conic = ConicClass{3, false, q + 1};
      } else if (!char2) {
        conic = classify_conic_with(t, Q);
        count = conic->point_count;
      } else {
        count = enumerate_conic(t, Q);
      }
      acc.biprojective += count;
      if (base[1] == 0) {
        acc.nonaffine += count;
      } else {
        const u64 boundary = binary_form_roots(t, Q.xx, Q.xy, Q.yy);
        acc.nonaffine += boundary;
        acc.affine += count - boundary;
      }
      if (reports && (!degenerate_only || !smooth))
        partial_reports[blk].push_back(FiberReport{base, conic, count, !smooth});
    }
    partial[blk] = acc;
  });

  FiberTally total;
  for (std::size_t b = 0; b < blocks; ++b) {
    total.biprojective += partial[b].biprojective;
    total.affine += partial[b].affine;
    total.nonaffine += partial[b].nonaffine;
    if (reports) reports->insert(reports->end(), partial_reports[b].begin(), partial_reports[b].end());
  }
  return total;
}

FiberwiseCount count_fiberwise(const SurfaceModel& model, const FieldDesc& field, Space space) {
  if (field.q() > (field.p() == 2 ? kMaxFiberwiseChar2 : kMaxFiberwise))
    throw std::out_of_range("count_fiberwise: q exceeds bound");
  const FieldTables t(field);
  FiberwiseCount out;
  const FiberTally tally = tally_fibers(model, t, &out.fibers);
  out.record = CountRecord{model.id(), field.p(), field.n(), space, Method::fiberwise, tally.in(space)};
  return out;
}

std::vector<LinePoint> degenerate_fibers(const SurfaceModel& model, const FieldDesc& field) {
  if (field.q() > (field.p() == 2 ? kMaxFiberwiseChar2 : kMaxFiberwise))
    throw std::out_of_range("degenerate_fibers: q exceeds bound");
  const FieldTables t(field);
  std::vector<FiberReport> reports;
  tally_fibers(model, t, &reports, true);
  std::vector<LinePoint> out;
  for (const auto& r : reports) out.push_back(r.base);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LinePoint> degenerate_fibers_closed_form(SurfaceId id, const FieldDesc& field) {
  if (field.q() > FieldTables::kMaxOrder) throw std::out_of_range("degenerate_fibers_closed_form: q exceeds bound");
  const FieldTables t(field);
  const u64 q = t.q();
  const u64 p = field.p();
  auto roots_of = [&](auto&& poly) {
    std::vector<Code> r;
    for (Code a = 0; a < q; ++a)
      if (poly(a) == 0) r.push_back(a);
    return r;
  };

  std::set<LinePoint> pts{{1, 0}, {0, 1}, {1, 1}, {1, t.neg(1)}};
  auto add = [&](Code w) { pts.insert({1, w}); };
  switch (id) {
    case SurfaceId::L0:
      if (p != 2) {
        // (1 : +-1/sqrt 2)
        for (Code s : roots_of([&](Code a) { return t.sub(t.mul(a, a), t.from_int(2)); })) add(t.inv(s));
      }
      break;
    case SurfaceId::L1:
      if (p == 2) {
        for (Code a : roots_of([&](Code a) { return t.add(t.add(t.mul(a, a), a), 1); })) add(a);
      } else if (p == 5) {
        add(t.from_int(2));
        add(t.from_int(-2));
      } else {
        // (1 : +-(sqrt 5 +- 1)/2)
        const Code half = t.inv(t.from_int(2));
        for (Code s : roots_of([&](Code a) { return t.sub(t.mul(a, a), t.from_int(5)); })) {
          for (Code e : {Code{1}, t.neg(1)}) {
            const Code g = t.mul(t.add(s, e), half);
            add(g);
            add(t.neg(g));
          }
        }
      }
      break;
    case SurfaceId::L2:
      break;
  }
  return {pts.begin(), pts.end()};
}

CountRecord count_formula(SurfaceId id, u64 p, unsigned n, Space space) {
  if (!is_prime(p)) throw std::invalid_argument("count_formula: " + std::to_string(p) + " is not prime");
  if (n < 1) throw std::invalid_argument("count_formula: n must be positive");
  u128 q = 1;
  for (unsigned i = 0; i < n; ++i) {
    q *= p;
    if (q > (u128{1} << 63)) throw std::overflow_error("count_formula: p^n exceeds 2^63");
  }
  // 1 + (-1)^n
  const u128 parity = n % 2 == 0 ? 2 : 0;

  u128 biprojective = 0, nonaffine = 0;
  switch (id) {
    case SurfaceId::L0:
      if (p == 2)
        biprojective = q * q + 3 * q + 1;
      else if (legendre(2, p) == 1)
        biprojective = q * q + 7 * q + 1;
      else
        biprojective = q * q + 5 * q + 1 + q * parity;
      nonaffine = p == 2 ? 3 * q : 3 * q - 1;
      break;
    case SurfaceId::L1:
      if (p == 2)
        biprojective = q * q + 2 * q + 1 + q * parity;
      else if (p == 5)
        biprojective = q * q + 6 * q + 1;
      else if (legendre(5, p) == 1)
        biprojective = q * q + 8 * q + 1;
      else
        biprojective = q * q + 4 * q + 1 + 2 * q * parity;
      nonaffine = p == 2 ? 4 * q - 1 : 4 * q - 2;
      break;
    case SurfaceId::L2:
      biprojective = q * q + 3 * q + 1;
      nonaffine = p == 2 ? 3 * q : 3 * q - 1;
      break;
  }
  u128 value = biprojective;
  if (space == Space::nonaffine) value = nonaffine;
  if (space == Space::affine) value = biprojective - nonaffine;
  if (value > std::numeric_limits<u64>::max()) throw std::overflow_error("count_formula: count exceeds 64 bits");
  return CountRecord{id, p, n, space, Method::formula, static_cast<u64>(value)};
}

}  // namespace charzeta
