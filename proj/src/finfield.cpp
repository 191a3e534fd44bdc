#include "charzeta/finfield.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace charzeta {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) noexcept {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  for (u64 small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for all 64-bit n.
  for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int legendre(std::int64_t a, u64 p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("legendre: p must be an odd prime");
  std::int64_t r = a % static_cast<std::int64_t>(p);
  if (r < 0) r += static_cast<std::int64_t>(p);
  if (r == 0) return 0;
  return powmod(static_cast<u64>(r), (p - 1) / 2, p) == 1 ? 1 : -1;
}

namespace {

// Dense polynomials over F_p, lowest degree first, no trailing zeros.
using Poly = std::vector<u64>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, u64 p) {
  const u64 lead_inv = powmod(m.back(), p - 2, p);
  trim(a);
  while (a.size() >= m.size()) {
    const u64 c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, u64 e, const Poly& m, u64 p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: m of degree n is irreducible iff gcd(x^{p^i} - x, m) = 1 for
// i = 1..n/2.
bool is_irreducible(const Poly& m, u64 p) {
  const std::size_t n = m.size() - 1;
  Poly h{0, 1};
  for (std::size_t i = 1; i <= n / 2; ++i) {
    h = poly_powmod(h, p, m, p);
    Poly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(m, diff, p).size() > 1) return false;
  }
  return true;
}

}  // namespace

struct FieldDesc::Impl {
  u64 p;
  unsigned n;
  u64 q;
  std::vector<u64> modulus;
};

FieldDesc make_field(u64 p, unsigned n) {
  if (!is_prime(p)) throw std::invalid_argument("make_field: " + std::to_string(p) + " is not prime");
  if (n < 1 || n > 24) throw std::out_of_range("make_field: degree must be in [1, 24]");
  u128 q = 1;
  for (unsigned i = 0; i < n; ++i) {
    q *= p;
    if (q > (static_cast<u128>(1) << 63)) throw std::out_of_range("make_field: p^n exceeds 2^63");
  }
  auto impl = std::make_shared<FieldDesc::Impl>();
  impl->p = p;
  impl->n = n;
  impl->q = static_cast<u64>(q);
  if (n > 1) {
    // Enumerate lower coefficients as base-p digits of a counter; the
    // density of irreducibles (~1/n) keeps this short.
    Poly m(n + 1, 0);
    m[n] = 1;
    for (;;) {
      if (m[0] != 0 && is_irreducible(m, p)) break;
      std::size_t i = 0;
      while (i < n && ++m[i] == p) m[i++] = 0;
    }
    impl->modulus = std::move(m);
  }
  return FieldDesc(std::move(impl));
}

u64 FieldDesc::p() const noexcept { return impl_->p; }
unsigned FieldDesc::n() const noexcept { return impl_->n; }
u64 FieldDesc::q() const noexcept { return impl_->q; }
std::span<const u64> FieldDesc::modulus() const noexcept { return impl_->modulus; }

bool operator==(const FieldDesc& a, const FieldDesc& b) noexcept {
  if (a.impl_ == b.impl_) return true;
  if (!a.impl_ || !b.impl_) return false;
  return a.impl_->p == b.impl_->p && a.impl_->n == b.impl_->n && a.impl_->modulus == b.impl_->modulus;
}

FieldElement FieldDesc::zero() const { return FieldElement(*this, std::vector<u64>(n(), 0)); }

FieldElement FieldDesc::one() const { return from_int(1); }

FieldElement FieldDesc::from_int(std::int64_t v) const {
  std::vector<u64> c(n(), 0);
  const auto pp = static_cast<std::int64_t>(std::min<u64>(p(), std::numeric_limits<std::int64_t>::max()));
  std::int64_t r = v % pp;
  if (r < 0) r += pp;
  c[0] = static_cast<u64>(r);
  return FieldElement(*this, std::move(c));
}

FieldElement FieldDesc::from_code(u64 code) const {
  if (code >= q()) throw std::out_of_range("from_code: code exceeds field order");
  std::vector<u64> c(n(), 0);
  for (unsigned i = 0; i < n(); ++i) {
    c[i] = code % p();
    code /= p();
  }
  return FieldElement(*this, std::move(c));
}

FieldElement FieldDesc::from_coefficients(std::vector<u64> coeffs) const {
  if (coeffs.size() > n()) throw std::invalid_argument("from_coefficients: too many coefficients");
  coeffs.resize(n(), 0);
  for (auto& c : coeffs) c %= p();
  return FieldElement(*this, std::move(coeffs));
}

u64 FieldElement::code() const noexcept {
  u64 code = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) code = code * field_.p() + coeffs_[i];
  return code;
}

bool FieldElement::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](u64 c) { return c == 0; });
}

void FieldElement::require_same_field(const FieldElement& other) const {
  if (!(field_ == other.field_)) throw std::invalid_argument("field element: mismatched fields");
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  const u64 p = field_.p();
  for (auto& c : r.coeffs_) c = c == 0 ? 0 : p - c;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  require_same_field(rhs);
  const u64 p = field_.p();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const u64 s = coeffs_[i] + rhs.coeffs_[i];  // p < 2^63, no wrap
    coeffs_[i] = s >= p ? s - p : s;
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) { return *this += -rhs; }

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  require_same_field(rhs);
  const u64 p = field_.p();
  const unsigned n = field_.n();
  if (n == 1) {
    coeffs_[0] = mulmod(coeffs_[0], rhs.coeffs_[0], p);
    return *this;
  }
  std::vector<u64> prod(2 * n - 1, 0);
  for (unsigned i = 0; i < n; ++i) {
    if (coeffs_[i] == 0) continue;
    for (unsigned j = 0; j < n; ++j) {
      prod[i + j] = (prod[i + j] + mulmod(coeffs_[i], rhs.coeffs_[j], p)) % p;
    }
  }
  const auto mod = field_.modulus();
  for (std::size_t top = prod.size(); top-- > n;) {
    const u64 c = prod[top];
    if (c == 0) continue;
    // x^n = -(m_0 + ... + m_{n-1} x^{n-1})
    for (unsigned i = 0; i < n; ++i) {
      const std::size_t k = top - n + i;
      prod[k] = (prod[k] + p - mulmod(c, mod[i], p)) % p;
    }
  }
  std::copy_n(prod.begin(), n, coeffs_.begin());
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) { return *this *= rhs.inverse(); }

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("field element: inverse of zero");
  return pow(field_.q() - 2);
}

FieldElement FieldElement::pow(u64 e) const {
  FieldElement result = field_.one();
  FieldElement base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

int quadratic_character(const FieldElement& a) {
  const FieldDesc& f = a.field();
  if (f.p() == 2) throw std::domain_error("quadratic_character: characteristic 2");
  if (a.is_zero()) return 0;
  return a.pow((f.q() - 1) / 2) == f.one() ? 1 : -1;
}

u64 conic_point_count(int rank, bool split, u64 q) {
  switch (rank) {
    case 3:
    case 1:
      return q + 1;
    case 2:
      return split ? 2 * q + 1 : 1;
    case 0: {
      const u128 c = static_cast<u128>(q) * q + q + 1;
      if (c > std::numeric_limits<u64>::max()) throw std::overflow_error("conic_point_count: q^2+q+1 overflows");
      return static_cast<u64>(c);
    }
    default:
      throw std::invalid_argument("conic_point_count: rank must be in [0, 3]");
  }
}

ConicClass classify_conic(const FieldDesc& field, const TernaryForm<FieldElement>& form) {
  if (field.p() == 2) throw std::domain_error("classify_conic: characteristic 2");
  for (const auto* c : {&form.xx, &form.yy, &form.uu, &form.xy, &form.xu, &form.yu}) {
    if (!(c->field() == field)) throw std::invalid_argument("classify_conic: coefficient from another field");
  }
  return classify_conic_with(ElementOps(field), form);
}

std::vector<FieldElement> square_roots(const FieldElement& a) {
  const FieldDesc& f = a.field();
  if (f.q() > (u64{1} << 22)) throw std::out_of_range("square_roots: exhaustive search limited to q <= 2^22");
  std::vector<FieldElement> roots;
  for (u64 c = 0; c < f.q(); ++c) {
    FieldElement x = f.from_code(c);
    if (x * x == a) roots.push_back(std::move(x));
  }
  return roots;
}

}  // namespace charzeta
