#pragma once

// Real-argument values of zeta and L-functions, Laurent leading terms of
// the main terms at s = 0, 1, 2, and a Monte Carlo Mahler measure.

#include <cstdint>
#include <string_view>
#include <vector>

#include "charzeta/globalzeta.hpp"

namespace charzeta {

/// Arguments accepted by the evaluators.
inline constexpr double kMinArgument = -6.0;
inline constexpr double kMaxArgument = 6.0;
/// riemann_zeta rejects |s - 1| below this.
inline constexpr double kPoleExclusion = 1e-3;

/// Hurwitz zeta(s, a) for real s != 1, a in (0, 1], by Euler-Maclaurin.
double hurwitz_zeta(double s, double a);

/// Throws std::domain_error near the pole, std::out_of_range outside
/// [kMinArgument, kMaxArgument].
double riemann_zeta(double s);

/// L(chi, s) = k^(-s) sum_a chi(a) zeta(s, a/k); finite at s = 1.
double dirichlet_L(const CharacterDesc& chi, double s);

/// zeta(s) L(chi_d, s).
double dedekind_zeta(int d, double s);

struct QuadraticFieldData {
  int d;
  std::uint64_t discriminant;
  int class_number;
  int roots_of_unity;
  double unit;  // fundamental unit, > 1
  double regulator;
};

/// Throws std::invalid_argument unless d is 2 or 5.
const QuadraticFieldData& quadratic_field(int d);
double regulator(int d);

/// f(s) ~ coefficient * (s - s0)^order.
struct LaurentLeading {
  int s0;
  int order;
  double coefficient;
};

/// Order from the classical zero/pole pattern of each factor, coefficient
/// from values, the exact residue of zeta at 1, or a Richardson-refined
/// central difference at simple zeros. expr must carry no elementary
/// factors (std::invalid_argument); factor arguments must lie in [-2, 2]
/// (std::out_of_range); |order| > 5 is a std::domain_error.
LaurentLeading laurent_leading(const GlobalZetaExpr& expr, int s0);

struct Table1Cell {
  SurfaceId surface;
  int s0;
  int order_expected;
  int order_got;
  double coeff_expected;
  double coeff_got;
  double rel_err;
  bool order_from_blank;  // the table leaves this order unlabelled; read as 0
  bool pass;
};

/// All nine cells, surface-major.
std::vector<Table1Cell> verify_table1(double tol = 1e-6);

enum class MahlerPolynomial { one_plus_x_plus_y_plus_z, constant_one };
std::string_view to_string(MahlerPolynomial m);
MahlerPolynomial parse_mahler_polynomial(std::string_view name);

struct MahlerEstimate {
  double estimate;
  double standard_error;
  std::uint64_t samples;
  std::uint64_t seed;
};

/// Samples are split into kMahlerChunks fixed chunks; chunk c draws from
/// mt19937_64 seeded from (seed, c), and chunk sums are merged in
/// chunk order, so the result is independent of the worker count. Throws
/// std::invalid_argument for zero samples.
inline constexpr std::size_t kMahlerChunks = 64;
MahlerEstimate mahler_measure_mc(MahlerPolynomial poly, std::uint64_t samples, std::uint64_t seed);

/// 7 zeta(3) / (2 pi^2), the value of m(1 + x + y + z).
double smyth_value();

}  // namespace charzeta
