#include "charzeta/specialvalues.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "charzeta/parallel.hpp"

namespace charzeta {

namespace {

using real = long double;

constexpr int kDirectTerms = 20;
// B_2, B_4, ..., B_24
constexpr std::array<real, 12> kBernoulli{
    1.0L / 6,           -1.0L / 30,     1.0L / 42,           -1.0L / 30,    5.0L / 66,         -691.0L / 2730,
    7.0L / 6,           -3617.0L / 510, 43867.0L / 798,      -174611.0L / 330, 854513.0L / 138, -236364091.0L / 2730};

void check_argument(double s) {
  if (!(s >= kMinArgument && s <= kMaxArgument))
    throw std::out_of_range("argument " + std::to_string(s) + " outside the supported range");
}

// Euler-Maclaurin for zeta(s, a) without the x^(1-s)/(s-1) term, x = N + a.
real hurwitz_regular(real s, real a) {
  real sum = 0;
  for (int k = 0; k < kDirectTerms; ++k) sum += std::pow(k + a, -s);
  const real x = kDirectTerms + a;
  sum += std::pow(x, -s) / 2;
  // rising = s (s+1) ... (s+2j-2), factorial = (2j)!
  real rising = s, factorial = 2, xpow = std::pow(x, -s - 1);
  for (std::size_t j = 1; j <= kBernoulli.size(); ++j) {
    sum += kBernoulli[j - 1] / factorial * rising * xpow;
    const real m = static_cast<real>(2 * j);
    rising *= (s + m - 1) * (s + m);
    factorial *= (m + 1) * (m + 2);
    xpow /= x * x;
  }
  return sum;
}

real hurwitz(real s, real a) { return hurwitz_regular(s, a) + std::pow(kDirectTerms + a, 1 - s) / (s - 1); }

real dirichlet(const CharacterDesc& chi, real s) {
  const real k = static_cast<real>(chi.modulus);
  real sum = 0;
  for (std::uint64_t a = 1; a < chi.modulus; ++a) {
    const int c = chi(a);
    if (c == 0) continue;
    const real x = kDirectTerms + a / k;
    // Pole terms summed with sum chi(a) = 0 subtracted out.
    const real pole = s == 1 ? -std::log(x) : std::expm1((1 - s) * std::log(x)) / (s - 1);
    sum += c * (hurwitz_regular(s, a / k) + pole);
  }
  return std::pow(k, -s) * sum;
}

// Central difference at step h and h/2, combined by one Richardson step.
template <class F>
double derivative(F&& f, double s) {
  constexpr double h = 1e-4;
  const double d1 = (f(s + h) - f(s - h)) / (2 * h);
  const double d2 = (f(s + h / 2) - f(s - h / 2)) / h;
  return (4 * d2 - d1) / 3;
}

}  // namespace

double hurwitz_zeta(double s, double a) {
  check_argument(s);
  if (!(a > 0 && a <= 1)) throw std::out_of_range("hurwitz_zeta: a must lie in (0, 1]");
  if (s == 1) throw std::domain_error("hurwitz_zeta: pole at s = 1");
  return static_cast<double>(hurwitz(s, a));
}

double riemann_zeta(double s) {
  check_argument(s);
  // Slack for 1 +- 1e-3 not being exact in binary.
  if (std::abs(s - 1) < kPoleExclusion * (1 - 1e-9))
    throw std::domain_error("riemann_zeta: argument " + std::to_string(s) + " too close to the pole");
  return static_cast<double>(hurwitz(s, 1));
}

double dirichlet_L(const CharacterDesc& chi, double s) {
  check_argument(s);
  return static_cast<double>(dirichlet(chi, s));
}

double dedekind_zeta(int d, double s) { return riemann_zeta(s) * dirichlet_L(quadratic_character_of(d), s); }

const QuadraticFieldData& quadratic_field(int d) {
  static const QuadraticFieldData q2{2, 8, 1, 2, 1 + std::numbers::sqrt2, std::log(1 + std::numbers::sqrt2)};
  static const QuadraticFieldData q5{5, 5, 1, 2, std::numbers::phi, std::log(std::numbers::phi)};
  if (d == 2) return q2;
  if (d == 5) return q5;
  throw std::invalid_argument("unsupported quadratic field d = " + std::to_string(d));
}

double regulator(int d) { return quadratic_field(d).regulator; }

LaurentLeading laurent_leading(const GlobalZetaExpr& expr, int s0) {
  if (!expr.elementary.empty()) throw std::invalid_argument("laurent_leading: elementary factors present");
  LaurentLeading out{s0, 0, 1.0};
  for (const auto& f : dedekind_expand(expr).factors) {
    const int arg = s0 - f.shift;
    if (arg < -2 || arg > 2)
      throw std::out_of_range("laurent_leading: factor argument " + std::to_string(arg) + " outside [-2, 2]");
    int order = 0;
    double coeff;
    if (f.kind == FactorKind::riemann) {
      if (arg == 1) {
        order = -1;
        coeff = 1.0;  // residue of zeta at 1
      } else if (arg == -2 || arg == -4) {
        order = 1;
        coeff = derivative(riemann_zeta, arg);
      } else {
        coeff = riemann_zeta(arg);
      }
    } else {
      // Characters here are even: trivial zeros at 0 and -2.
      const CharacterDesc& chi = quadratic_character_of(f.field);
      auto L = [&chi](double s) { return dirichlet_L(chi, s); };
      if (arg == 0 || arg == -2) {
        order = 1;
        coeff = derivative(L, arg);
      } else {
        coeff = L(arg);
      }
    }
    out.order += order * f.exponent;
    out.coefficient *= std::pow(coeff, f.exponent);
  }
  if (out.order < -5 || out.order > 5)
    throw std::domain_error("laurent_leading: order " + std::to_string(out.order) + " out of range");
  return out;
}

std::vector<Table1Cell> verify_table1(double tol) {
  using std::numbers::pi;
  const double z3 = riemann_zeta(3);
  const double r2 = regulator(2), r5 = regulator(5);
  struct Expected {
    SurfaceId id;
    int s0;
    int order;
    double coeff;
    bool blank;
  };
  const std::array<Expected, 9> table{{
      {SurfaceId::L0, 0, 1, -z3 / (1024 * 27 * pi * pi), false},
      {SurfaceId::L0, 1, -1, r2 / 96, false},
      {SurfaceId::L0, 2, -3, -std::sqrt(2.0) * std::pow(pi, 4) * r2 / 144, false},
      {SurfaceId::L1, 0, 1, z3 / (28800 * pi * pi), false},
      {SurfaceId::L1, 1, -1, -r5 * r5 / 48, false},
      {SurfaceId::L1, 2, -2, -std::pow(pi, 6) * r5 * r5 / 540, false},
      {SurfaceId::L2, 0, 1, -z3 / (16 * pi * pi), false},
      {SurfaceId::L2, 1, -2, -1.0 / 12, false},
      {SurfaceId::L2, 2, 0, -std::pow(pi, 4) / 72, true},
  }};
  std::vector<Table1Cell> out;
  for (const auto& e : table) {
    const LaurentLeading got = laurent_leading(main_term(e.id), e.s0);
    const double rel = std::abs(got.coefficient - e.coeff) / std::abs(e.coeff);
    out.push_back({e.id, e.s0, e.order, got.order, e.coeff, got.coefficient, rel, e.blank,
                   got.order == e.order && rel <= tol});
  }
  return out;
}

std::string_view to_string(MahlerPolynomial m) {
  return m == MahlerPolynomial::constant_one ? "1" : "1+x+y+z";
}

MahlerPolynomial parse_mahler_polynomial(std::string_view name) {
  if (name == "1+x+y+z") return MahlerPolynomial::one_plus_x_plus_y_plus_z;
  if (name == "1") return MahlerPolynomial::constant_one;
  throw std::invalid_argument("unknown polynomial '" + std::string(name) + "'");
}

MahlerEstimate mahler_measure_mc(MahlerPolynomial poly, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("mahler_measure_mc: zero samples");
  struct Sums {
    double sum = 0, sumsq = 0;
  };
  std::vector<Sums> chunks(kMahlerChunks);
  parallel_for(kMahlerChunks, [&](std::size_t c) {
    const std::uint64_t lo = samples * c / kMahlerChunks, hi = samples * (c + 1) / kMahlerChunks;
    if (poly == MahlerPolynomial::constant_one) return;  // log|1| = 0
    std::seed_seq seq{seed & 0xffffffffu, seed >> 32, static_cast<std::uint64_t>(c)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr double tau = 2 * std::numbers::pi;
    Sums s;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const double a = tau * unit(rng), b = tau * unit(rng), d = tau * unit(rng);
      const double re = 1 + std::cos(a) + std::cos(b) + std::cos(d);
      const double im = std::sin(a) + std::sin(b) + std::sin(d);
      const double v = 0.5 * std::log(re * re + im * im);
      s.sum += v;
      s.sumsq += v * v;
    }
    chunks[c] = s;
  });
  Sums total;
  for (const auto& s : chunks) {
    total.sum += s.sum;
    total.sumsq += s.sumsq;
  }
  const double n = static_cast<double>(samples);
  const double mean = total.sum / n;
  const double var = samples > 1 ? std::max(0.0, (total.sumsq - n * mean * mean) / (n - 1)) : 0.0;
  return {mean, std::sqrt(var / n), samples, seed};
}

double smyth_value() { return 7 * riemann_zeta(3) / (2 * std::numbers::pi * std::numbers::pi); }

}  // namespace charzeta
