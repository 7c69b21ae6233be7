#pragma once

// Prime-field arithmetic for odd primes q < 2^31.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace isocensus {

/// A field element stored as its canonical representative in [0, q).
struct Fe {
  std::uint32_t v = 0;

  constexpr Fe() = default;
  constexpr explicit Fe(std::uint32_t value) : v(value) {}

  friend constexpr auto operator<=>(Fe, Fe) = default;
};

enum class FieldErrc {
  even_modulus,
  composite_modulus,
  not_one_mod_four,
  too_large,
};

class FieldError : public std::invalid_argument {
 public:
  FieldError(FieldErrc code, const std::string& what)
      : std::invalid_argument(what), code_(code) {}
  FieldErrc code() const noexcept { return code_; }

 private:
  FieldErrc code_;
};

class PrimeField;

/// An element bound to its field, so formulas can be written with operators.
/// The field must outlive every Elem that refers to it.
class Elem {
 public:
  Elem(const PrimeField& field, Fe value) : field_(&field), value_(value) {}

  Fe value() const { return value_; }
  std::uint32_t raw() const { return value_.v; }
  const PrimeField& field() const { return *field_; }
  bool is_zero() const { return value_.v == 0; }

  int chi() const;
  Elem inv() const;
  Elem pow(std::uint64_t e) const;
  Elem square() const { return *this * *this; }

  friend Elem operator+(Elem a, Elem b);
  friend Elem operator-(Elem a, Elem b);
  friend Elem operator*(Elem a, Elem b);
  friend Elem operator/(Elem a, Elem b);
  Elem operator-() const;

  friend Elem operator+(Elem a, std::int64_t b);
  friend Elem operator-(Elem a, std::int64_t b);
  friend Elem operator*(Elem a, std::int64_t b);
  friend Elem operator/(Elem a, std::int64_t b);
  friend Elem operator+(std::int64_t a, Elem b) { return b + a; }
  friend Elem operator-(std::int64_t a, Elem b) { return -b + a; }
  friend Elem operator*(std::int64_t a, Elem b) { return b * a; }

  friend bool operator==(Elem a, Elem b) { return a.value_ == b.value_; }
  friend bool operator==(Elem a, std::int64_t b);

 private:
  const PrimeField* field_;
  Fe value_;
};

class PrimeField {
 public:
  std::uint32_t q() const noexcept { return q_; }

  /// Quadratic character by table lookup.
  int chi(Fe a) const noexcept { return chi2_[a.v]; }

  bool has_zeta() const noexcept { return zeta_.has_value(); }
  /// The smaller square root of -1. Throws std::logic_error when q = 3 (mod 4).
  Fe zeta() const;
  /// The smallest quadratic non-residue.
  Fe nonresidue() const noexcept { return w_; }

  Fe reduce(std::int64_t a) const noexcept;
  Elem operator()(Fe a) const { return Elem(*this, a); }
  Elem operator()(std::int64_t a) const { return Elem(*this, reduce(a)); }

  Fe add(Fe a, Fe b) const noexcept {
    std::uint32_t s = a.v + b.v;
    return Fe(s >= q_ ? s - q_ : s);
  }
  Fe sub(Fe a, Fe b) const noexcept { return Fe(a.v >= b.v ? a.v - b.v : a.v + q_ - b.v); }
  Fe neg(Fe a) const noexcept { return Fe(a.v == 0 ? 0 : q_ - a.v); }
  Fe mul(Fe a, Fe b) const noexcept {
    return Fe(static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v) * b.v % q_));
  }
  Fe pow(Fe a, std::uint64_t e) const noexcept;
  /// Throws std::domain_error on zero.
  Fe inv(Fe a) const;

  /// 1 if a is a nonzero square, w otherwise. Throws std::domain_error on zero.
  Fe square_class(Fe a) const;

  /// chi(k mod q) for k in [0, 2q); lets correlation kernels read contiguous slices.
  std::span<const std::int8_t> chi_doubled() const noexcept { return chi2_; }
  std::span<const std::int8_t> chi_table() const noexcept {
    return std::span<const std::int8_t>(chi2_.data(), q_);
  }

 private:
  friend PrimeField make_field(std::uint32_t q);
  friend PrimeField make_odd_field(std::uint32_t q);
  explicit PrimeField(std::uint32_t q);

  std::uint32_t q_;
  std::vector<std::int8_t> chi2_;
  std::optional<Fe> zeta_;
  Fe w_;
};

/// Deterministic primality test for 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Field for a prime q = 1 (mod 4); rejects even, composite and 3 (mod 4) moduli.
PrimeField make_field(std::uint32_t q);

/// Field for any odd prime q. zeta() is unavailable when q = 3 (mod 4).
PrimeField make_odd_field(std::uint32_t q);

int legendre(const PrimeField& field, Fe a);

/// The smaller of the two square roots, or nullopt for a non-residue.
std::optional<Fe> sqrt_mod(const PrimeField& field, Fe a);

/// Odd primes in [lo, hi], optionally restricted to q = 1 (mod 4).
std::vector<std::uint32_t> primes_in_range(std::uint32_t lo, std::uint32_t hi,
                                           bool one_mod_four);

}  // namespace isocensus
