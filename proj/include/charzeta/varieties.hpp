#pragma once

// The three canonical-component surfaces, brute-force point enumeration
// (affine, biprojective, boundary) and the chart-wise singular-locus check.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "charzeta/fieldtables.hpp"
#include "charzeta/finfield.hpp"

namespace charzeta {

enum class SurfaceId { L0, L1, L2 };
inline constexpr std::array<SurfaceId, 3> kAllSurfaces{SurfaceId::L0, SurfaceId::L1, SurfaceId::L2};

enum class Space { affine, biprojective, nonaffine };
enum class Method { brute, fiberwise, formula };

std::string_view to_string(SurfaceId id);
std::string_view to_string(Space s);
std::string_view to_string(Method m);
/// Throw std::invalid_argument on unknown names.
SurfaceId parse_surface(std::string_view name);
Space parse_space(std::string_view name);
Method parse_method(std::string_view name);

/// Sparse polynomial with integer coefficients in N variables.
template <std::size_t N>
struct IntPolynomial {
  struct Term {
    std::int64_t coeff;
    std::array<unsigned, N> exps;
    friend bool operator==(const Term&, const Term&) = default;
  };
  std::vector<Term> terms;

  /// Like terms merged, zero terms dropped, sorted by exponent vector.
  IntPolynomial canonical() const {
    std::vector<Term> t = terms;
    std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.exps < b.exps; });
    IntPolynomial out;
    for (const auto& term : t) {
      if (!out.terms.empty() && out.terms.back().exps == term.exps)
        out.terms.back().coeff += term.coeff;
      else
        out.terms.push_back(term);
      if (out.terms.back().coeff == 0) out.terms.pop_back();
    }
    return out;
  }

  IntPolynomial derivative(std::size_t var) const {
    IntPolynomial d;
    for (const auto& t : terms) {
      if (t.exps[var] == 0) continue;
      Term dt = t;
      dt.coeff *= static_cast<std::int64_t>(t.exps[var]);
      --dt.exps[var];
      d.terms.push_back(dt);
    }
    return d.canonical();
  }

  bool is_zero() const { return canonical().terms.empty(); }

  template <FieldOps F>
  typename F::value_type evaluate(const F& f, const std::array<typename F::value_type, N>& point) const {
    auto acc = f.from_int(0);
    for (const auto& t : terms) {
      auto v = f.from_int(t.coeff);
      for (std::size_t i = 0; i < N; ++i)
        for (unsigned e = 0; e < t.exps[i]; ++e) v = f.mul(v, point[i]);
      acc = f.add(acc, v);
    }
    return acc;
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.canonical().terms == b.canonical().terms;
  }
};

using AffinePoly = IntPolynomial<3>;  // variables x, y, z
using BihomPoly = IntPolynomial<5>;   // variables x, y, u, z, w

/// Index of each quadratic (x, y, u)-monomial in a fiber form.
enum FiberSlot : std::size_t { kXX, kYY, kUU, kXY, kXU, kYU, kSlotCount };

class SurfaceModel {
 public:
  /// Validates bihomogeneity and F(x, y, 1, z, 1) = f; throws
  /// std::invalid_argument otherwise.
  SurfaceModel(SurfaceId id, AffinePoly affine, BihomPoly bihomogeneous);

  SurfaceId id() const noexcept { return id_; }
  const AffinePoly& affine() const noexcept { return affine_; }
  const BihomPoly& bihomogeneous() const noexcept { return bihom_; }
  /// Degree in (z, w): 3 for L0 and L2, 4 for L1.
  unsigned fiber_degree() const noexcept { return degree_; }
  /// fiber_coefficients()[slot][k] multiplies z^(d-k) w^k in the coefficient
  /// of that quadratic monomial.
  const std::array<std::vector<std::int64_t>, kSlotCount>& fiber_coefficients() const noexcept { return fiber_; }
  /// Partials of F in x, y, u, z, w.
  const std::array<BihomPoly, 5>& gradient() const noexcept { return gradient_; }

 private:
  SurfaceId id_;
  AffinePoly affine_;
  BihomPoly bihom_;
  unsigned degree_ = 0;
  std::array<std::vector<std::int64_t>, kSlotCount> fiber_;
  std::array<BihomPoly, 5> gradient_;
};

/// The model for id, built once and shared.
const SurfaceModel& surface(SurfaceId id);

/// Element codes of a canonical representative: the leftmost nonzero
/// coordinate of each factor is 1.
using PlanePoint = std::array<std::uint64_t, 3>;
using LinePoint = std::array<std::uint64_t, 2>;

struct BiprojectivePoint {
  PlanePoint plane;
  LinePoint line;
  friend auto operator<=>(const BiprojectivePoint&, const BiprojectivePoint&) = default;
};

PlanePoint normalize_plane(const FieldTables& f, PlanePoint pt);
LinePoint normalize_line(const FieldTables& f, LinePoint pt);

/// Calls fn on every canonical point of P^2(F_q) / P^1(F_q).
template <class Fn>
void for_each_plane_point(std::uint64_t q, Fn&& fn) {
  for (std::uint64_t b = 0; b < q; ++b)
    for (std::uint64_t c = 0; c < q; ++c) fn(PlanePoint{1, b, c});
  for (std::uint64_t c = 0; c < q; ++c) fn(PlanePoint{0, 1, c});
  fn(PlanePoint{0, 0, 1});
}

template <class Fn>
void for_each_line_point(std::uint64_t q, Fn&& fn) {
  for (std::uint64_t b = 0; b < q; ++b) fn(LinePoint{1, b});
  fn(LinePoint{0, 1});
}

struct CountRecord {
  SurfaceId surface;
  std::uint64_t p;
  unsigned n;
  Space space;
  Method method;
  std::uint64_t count;
  friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

inline constexpr std::uint64_t kMaxAffineBrute = 2048;
inline constexpr std::uint64_t kMaxBiprojectiveBrute = 128;
inline constexpr std::uint64_t kMaxNonaffineBrute = 2048;
inline constexpr std::uint64_t kMaxSingularSearch = 128;

/// #{(a, b, c) in F_q^3 : f(a, b, c) = 0}. Throws std::out_of_range above
/// kMaxAffineBrute.
CountRecord count_affine_brute(const SurfaceModel& model, const FieldDesc& field);
CountRecord count_affine_brute(const SurfaceModel& model, const FieldTables& tables);

/// #V(F)(F_q) in P^2 x P^1. Throws std::out_of_range above kMaxBiprojectiveBrute.
CountRecord count_biprojective_brute(const SurfaceModel& model, const FieldDesc& field);
CountRecord count_biprojective_brute(const SurfaceModel& model, const FieldTables& tables);

/// Points of V(F) with u = 0 or w = 0. Throws std::out_of_range above
/// kMaxNonaffineBrute.
CountRecord count_nonaffine_brute(const SurfaceModel& model, const FieldDesc& field);
CountRecord count_nonaffine_brute(const SurfaceModel& model, const FieldTables& tables);

/// Affine chart of P^2 x P^1: plane coordinate plane_index (x, y, u) and
/// line coordinate line_index (z, w) set to 1.
struct Chart {
  unsigned plane_index;  // 0..2
  unsigned line_index;   // 0..1
};

/// Whether every first partial of F dehomogenised to the chart vanishes at
/// pt; std::nullopt when the chart does not contain pt. pt must lie on V(F).
std::optional<bool> singular_in_chart(const SurfaceModel& model, const FieldTables& tables,
                                      const BiprojectivePoint& pt, Chart chart);

/// Singular F_q-points of V(F), sorted. Each point is tested in every
/// containing chart; disagreement between charts throws std::logic_error.
/// Throws std::out_of_range above kMaxSingularSearch.
std::vector<BiprojectivePoint> singular_locus(const SurfaceModel& model, const FieldDesc& field);

/// The singular points listed in closed form for this surface and
/// characteristic, with every parametrised family instantiated over F_q.
/// Sorted and de-duplicated.
std::vector<BiprojectivePoint> singular_locus_closed_form(SurfaceId id, const FieldDesc& field);

}  // namespace charzeta
