#pragma once

// Point counting through the conic-bundle projection (x:y:u, z:w) -> (z:w):
// each fiber is a plane conic, classified rather than enumerated.

#include <cstdint>
#include <optional>
#include <vector>

#include "charzeta/fieldtables.hpp"
#include "charzeta/finfield.hpp"
#include "charzeta/varieties.hpp"

namespace charzeta {

inline constexpr std::uint64_t kMaxFiberwise = 1'000'000;
/// Degenerate fibers in characteristic 2 are enumerated over P^2(F_q).
inline constexpr std::uint64_t kMaxFiberwiseChar2 = 4096;

struct FiberReport {
  LinePoint base;
  std::optional<ConicClass> conic;  // absent in characteristic 2
  std::uint64_t count;
  bool degenerate;
};

struct FiberTally {
  std::uint64_t biprojective = 0;
  std::uint64_t affine = 0;
  std::uint64_t nonaffine = 0;

  std::uint64_t in(Space s) const noexcept {
    switch (s) {
      case Space::affine: return affine;
      case Space::nonaffine: return nonaffine;
      case Space::biprojective: break;
    }
    return biprojective;
  }
};

struct FiberwiseCount {
  CountRecord record;
  std::vector<FiberReport> fibers;
};

/// The quadratic form in (x, y, u) cut out by F over the base point (z:w).
TernaryForm<FieldElement> fiber_form(const SurfaceModel& model, const FieldElement& z, const FieldElement& w);
TernaryForm<FieldTables::value_type> fiber_form(const SurfaceModel& model, const FieldTables& tables, LinePoint base);

/// Number of (x:y) in P^1(F_q) with a x^2 + b xy + c y^2 = 0, or q + 1 for
/// the zero form. Valid in every characteristic.
std::uint64_t binary_form_roots(const FieldTables& tables, FieldTables::value_type a, FieldTables::value_type b,
                                FieldTables::value_type c);

/// One pass over P^1(F_q) giving all three counts. Fiber reports are
/// appended to reports when given (all fibers, or only degenerate ones).
/// Throws std::out_of_range above kMaxFiberwise (kMaxFiberwiseChar2 when p = 2).
FiberTally tally_fibers(const SurfaceModel& model, const FieldTables& tables,
                        std::vector<FiberReport>* reports = nullptr, bool degenerate_only = false);

FiberwiseCount count_fiberwise(const SurfaceModel& model, const FieldDesc& field, Space space = Space::biprojective);

/// Base points whose fiber is not a smooth conic, sorted.
std::vector<LinePoint> degenerate_fibers(const SurfaceModel& model, const FieldDesc& field);

/// Degenerate base points predicted by the closed-form case analysis,
/// instantiated over F_q by exhaustive root search. Sorted.
std::vector<LinePoint> degenerate_fibers_closed_form(SurfaceId id, const FieldDesc& field);

/// Closed-form count over F_{p^n}; affine is biprojective minus nonaffine.
/// Throws std::invalid_argument for non-prime p and std::overflow_error
/// when the result does not fit 64 bits.
CountRecord count_formula(SurfaceId id, std::uint64_t p, unsigned n, Space space);

}  // namespace charzeta
