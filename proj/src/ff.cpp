#include "isocensus/ff.hpp"

#include <algorithm>

namespace isocensus {

namespace {

constexpr std::uint32_t kMaxModulus = 1u << 31;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

void validate_odd_prime(std::uint32_t q) {
  if (q % 2 == 0) {
    throw FieldError(FieldErrc::even_modulus, "modulus " + std::to_string(q) + " is even");
  }
  if (q >= kMaxModulus) {
    throw FieldError(FieldErrc::too_large, "modulus " + std::to_string(q) + " exceeds 2^31");
  }
  if (!is_prime(q)) {
    throw FieldError(FieldErrc::composite_modulus,
                     "modulus " + std::to_string(q) + " is not prime");
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These twelve bases are deterministic for all n < 3.3 * 10^24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q), chi2_(2 * static_cast<std::size_t>(q), 0) {
  std::vector<std::int8_t> table(q, -1);
  table[0] = 0;
  for (std::uint64_t x = 1; x <= (q - 1) / 2; ++x) {
    table[x * x % q] = 1;
  }
  std::copy(table.begin(), table.end(), chi2_.begin());
  std::copy(table.begin(), table.end(), chi2_.begin() + q);

  std::uint32_t w = 2;
  while (table[w] != -1) ++w;
  w_ = Fe(w);

  if (q % 4 == 1) {
    // w^((q-1)/4) squares to w^((q-1)/2) = -1.
    Fe r = pow(w_, (q - 1) / 4);
    zeta_ = Fe(std::min(r.v, q - r.v));
  }
}

Fe PrimeField::zeta() const {
  if (!zeta_) {
    throw std::logic_error("F_" + std::to_string(q_) + " has no square root of -1");
  }
  return *zeta_;
}

Fe PrimeField::reduce(std::int64_t a) const noexcept {
  std::int64_t r = a % static_cast<std::int64_t>(q_);
  if (r < 0) r += q_;
  return Fe(static_cast<std::uint32_t>(r));
}

Fe PrimeField::pow(Fe a, std::uint64_t e) const noexcept {
  return Fe(static_cast<std::uint32_t>(powmod64(a.v, e, q_)));
}

Fe PrimeField::inv(Fe a) const {
  if (a.v == 0) throw std::domain_error("inverse of zero");
  return pow(a, q_ - 2);
}

Fe PrimeField::square_class(Fe a) const {
  if (a.v == 0) throw std::domain_error("square class of zero");
  return chi(a) == 1 ? Fe(1) : w_;
}

PrimeField make_field(std::uint32_t q) {
  validate_odd_prime(q);
  if (q % 4 != 1) {
    throw FieldError(FieldErrc::not_one_mod_four,
                     "modulus " + std::to_string(q) + " is not 1 mod 4");
  }
  return PrimeField(q);
}

PrimeField make_odd_field(std::uint32_t q) {
  validate_odd_prime(q);
  return PrimeField(q);
}

int legendre(const PrimeField& field, Fe a) { return field.chi(a); }

std::optional<Fe> sqrt_mod(const PrimeField& field, Fe a) {
  const std::uint32_t q = field.q();
  if (a.v == 0) return Fe(0);
  if (field.chi(a) != 1) return std::nullopt;

  // Tonelli-Shanks.
  std::uint32_t s = 0;
  std::uint64_t m = q - 1;
  while ((m & 1) == 0) {
    m >>= 1;
    ++s;
  }
  Fe z = field.nonresidue();
  Fe c = field.pow(z, m);
  Fe x = field.pow(a, (m + 1) / 2);
  Fe t = field.pow(a, m);
  std::uint32_t e = s;
  while (t.v != 1) {
    std::uint32_t i = 0;
    Fe tt = t;
    while (tt.v != 1) {
      tt = field.mul(tt, tt);
      ++i;
    }
    Fe b = c;
    for (std::uint32_t k = 0; k + i + 1 < e; ++k) b = field.mul(b, b);
    x = field.mul(x, b);
    c = field.mul(b, b);
    t = field.mul(t, c);
    e = i;
  }
  return Fe(std::min(x.v, q - x.v));
}

std::vector<std::uint32_t> primes_in_range(std::uint32_t lo, std::uint32_t hi,
                                           bool one_mod_four) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t n = std::max<std::uint32_t>(lo, 3); n <= hi; ++n) {
    if (n % 2 == 0) continue;
    if (one_mod_four && n % 4 != 1) continue;
    if (is_prime(n)) out.push_back(static_cast<std::uint32_t>(n));
  }
  return out;
}

// Elem

int Elem::chi() const { return field_->chi(value_); }
Elem Elem::inv() const { return Elem(*field_, field_->inv(value_)); }
Elem Elem::pow(std::uint64_t e) const { return Elem(*field_, field_->pow(value_, e)); }
Elem Elem::operator-() const { return Elem(*field_, field_->neg(value_)); }

Elem operator+(Elem a, Elem b) { return Elem(*a.field_, a.field_->add(a.value_, b.value_)); }
Elem operator-(Elem a, Elem b) { return Elem(*a.field_, a.field_->sub(a.value_, b.value_)); }
Elem operator*(Elem a, Elem b) { return Elem(*a.field_, a.field_->mul(a.value_, b.value_)); }
Elem operator/(Elem a, Elem b) {
  return Elem(*a.field_, a.field_->mul(a.value_, a.field_->inv(b.value_)));
}
Elem operator+(Elem a, std::int64_t b) { return a + Elem(*a.field_, a.field_->reduce(b)); }
Elem operator-(Elem a, std::int64_t b) { return a - Elem(*a.field_, a.field_->reduce(b)); }
Elem operator*(Elem a, std::int64_t b) { return a * Elem(*a.field_, a.field_->reduce(b)); }
Elem operator/(Elem a, std::int64_t b) { return a / Elem(*a.field_, a.field_->reduce(b)); }
bool operator==(Elem a, std::int64_t b) { return a.value_ == a.field_->reduce(b); }

}  // namespace isocensus
