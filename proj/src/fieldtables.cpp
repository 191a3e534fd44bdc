#include "charzeta/fieldtables.hpp"

#include <string>

namespace charzeta {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d) continue;
    out.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) out.push_back(m);
  return out;
}

bool is_primitive(const FieldElement& g, std::uint64_t order, const std::vector<std::uint64_t>& factors) {
  if (g.is_zero()) return false;
  const FieldElement one = g.field().one();
  for (auto r : factors)
    if (g.pow(order / r) == one) return false;
  return true;
}

// In-place multiplication of a coefficient vector by a fixed sparse element;
// cheap when the generator has small degree, which the search below favours.
class GeneratorStep {
 public:
  GeneratorStep(const FieldDesc& f, const FieldElement& g) : p_(f.p()), n_(f.n()), mod_(f.modulus().begin(), f.modulus().end()) {
    const auto c = g.coefficients();
    for (unsigned i = 0; i < n_; ++i)
      if (c[i]) terms_.push_back({i, c[i]});
    scratch_.assign(2 * n_, 0);
  }

  void apply(std::vector<std::uint64_t>& v) {
    std::fill(scratch_.begin(), scratch_.end(), 0);
    for (unsigned i = 0; i < n_; ++i) {
      if (!v[i]) continue;
      for (auto [j, c] : terms_) scratch_[i + j] = (scratch_[i + j] + v[i] * c) % p_;
    }
    for (std::size_t top = 2 * n_ - 1; top >= n_; --top) {
      const std::uint64_t c = scratch_[top];
      if (!c) continue;
      for (unsigned i = 0; i < n_; ++i) {
        const std::size_t k = top - n_ + i;
        scratch_[k] = (scratch_[k] + (p_ - c) * mod_[i]) % p_;
      }
    }
    std::copy_n(scratch_.begin(), n_, v.begin());
  }

 private:
  struct Term {
    unsigned power;
    std::uint64_t coeff;
  };
  std::uint64_t p_;
  unsigned n_;
  std::vector<std::uint64_t> mod_;
  std::vector<Term> terms_;
  std::vector<std::uint64_t> scratch_;
};

}  // namespace

FieldTables::FieldTables(FieldDesc field) : field_(std::move(field)), p_(field_.p()), q_(field_.q()) {
  if (q_ > kMaxOrder) throw std::out_of_range("FieldTables: q = " + std::to_string(q_) + " exceeds table limit");
  order_ = static_cast<value_type>(q_ - 1);
  half_ = order_ / 2;

  const auto factors = prime_factors(order_);
  std::uint64_t gcode = 1;
  while (!is_primitive(field_.from_code(gcode), order_, factors)) ++gcode;
  const FieldElement g = field_.from_code(gcode);

  exp_.assign(2 * static_cast<std::size_t>(order_), 0);
  log_.assign(q_, kNoLog);
  // p^n < 2^21 keeps coefficient products well inside 64 bits.
  std::vector<std::uint64_t> cur(field_.n(), 0);
  cur[0] = 1;
  GeneratorStep step(field_, g);
  for (value_type i = 0; i < order_; ++i) {
    std::uint64_t code = 0;
    for (std::size_t k = cur.size(); k-- > 0;) code = code * p_ + cur[k];
    exp_[i] = static_cast<value_type>(code);
    log_[code] = i;
    step.apply(cur);
  }
  for (value_type i = 0; i < order_; ++i) exp_[i + order_] = exp_[i];

  zech_.assign(order_, kNoLog);
  for (value_type i = 0; i < order_; ++i) {
    // Adding 1 touches only the constant digit of the code.
    const value_type c = exp_[i];
    const value_type d0 = static_cast<value_type>(c % p_);
    const value_type sum = static_cast<value_type>(c - d0 + (d0 + 1) % p_);
    zech_[i] = sum == 0 ? kNoLog : log_[sum];
  }
}

FieldTables::value_type FieldTables::trace(value_type a) const noexcept {
  value_type t = 0;
  value_type frob = a;
  for (unsigned i = 0; i < field_.n(); ++i) {
    t = add(t, frob);
    frob = pow(frob, p_);
  }
  return t;
}

}  // namespace charzeta
