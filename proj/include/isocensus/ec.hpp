#pragma once

// Point counting by character sums, quadratic twists, and j-invariants.
//
// Isogeny over F_q is decided by equality of Frobenius traces; no isogeny is
// ever constructed.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "isocensus/ff.hpp"

namespace isocensus {

/// Frobenius trace t = q + 1 - #C(F_q).
struct Trace {
  int value = 0;

  constexpr Trace() = default;
  constexpr explicit Trace(int t) : value(t) {}

  friend constexpr auto operator<=>(Trace, Trace) = default;
};

/// y^2 = d x (x - 1)(x - lambda).
struct LegendreCurve {
  Fe d;
  Fe lambda;

  friend constexpr bool operator==(const LegendreCurve&, const LegendreCurve&) = default;
};

/// y^2 = a3 x^3 + a2 x^2 + a1 x + a0.
struct Cubic {
  Fe a3, a2, a1, a0;
};

enum class EcErrc { singular_model, kernel_point };

class EcError : public std::invalid_argument {
 public:
  EcError(EcErrc code, const std::string& what)
      : std::invalid_argument(what), code_(code) {}
  EcErrc code() const noexcept { return code_; }

 private:
  EcErrc code_;
};

/// Direct character sum over all x in F_q.
Trace trace_legendre(const PrimeField& field, const LegendreCurve& curve);

/// Character sum for a squarefree cubic; throws EcError(singular_model) otherwise.
Trace trace_cubic(const PrimeField& field, const Cubic& f);

/// Discriminant of the cubic polynomial a3 x^3 + a2 x^2 + a1 x + a0.
Fe cubic_discriminant(const PrimeField& field, const Cubic& f);

/// #Z(F_q) for Z: y^2 = c (x^2 + 1)(x^4 + s x^2 + 1), including the two points
/// at infinity when c is a square.
std::int64_t genus2_count(const PrimeField& field, Fe c, Fe s);

/// 2^8 (l^2 - l + 1)^3 / (l^2 (l - 1)^2).
Fe j_invariant(const PrimeField& field, const LegendreCurve& curve);

/// j-invariant of a squarefree cubic model.
Fe j_invariant(const PrimeField& field, const Cubic& f);

constexpr bool is_isogenous(Trace a, Trace b) { return a == b; }

/// Hasse bound |t| <= 2 sqrt(q).
bool within_hasse(std::uint32_t q, Trace t);

/// Character sums S(lambda) = sum_x chi(x (x - 1)(x - lambda)) for every
/// lambda in F_q, computed as one correlation against the doubled chi table.
/// trace(d, lambda) = -chi(d) S(lambda).
class LegendreTraceTable {
 public:
  explicit LegendreTraceTable(const PrimeField& field);

  const PrimeField& field() const noexcept { return *field_; }
  int character_sum(Fe lambda) const noexcept { return sums_[lambda.v]; }
  /// Throws EcError(singular_model) for d = 0 or lambda in {0, 1}.
  Trace trace(const LegendreCurve& curve) const;

 private:
  const PrimeField* field_;
  std::vector<std::int32_t> sums_;
};

}  // namespace isocensus
