#pragma once

// The four coincidence families among pairs of D4 curves: partner
// construction, trace-level checks of the family claims and doubly-isogeny
// criteria, u-relations, and classical modular polynomial evaluation.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isocensus/d4.hpp"
#include "isocensus/ec.hpp"
#include "isocensus/ff.hpp"

namespace isocensus {

enum class FamilyErrc { degenerate_partner, relation_not_satisfied, unknown_relation, unsupported_degree };

class FamilyError : public std::invalid_argument {
 public:
  FamilyError(FamilyErrc code, const std::string& what)
      : std::invalid_argument(what), code_(code) {}
  FamilyErrc code() const noexcept { return code_; }

 private:
  FamilyErrc code_;
};

struct Claim {
  std::string id;
  bool hypothesis = true;  // conclusions are only binding when this holds
  bool holds = false;
};

struct FamilyReport {
  std::uint32_t q = 0;
  Fe t1, c1, t2, c2;
  bool hypotheses = false;  // global hypotheses of the family claims
  std::vector<Claim> claims;
  bool doubly_isogenous = false;

  /// Claims whose hypotheses held but whose conclusion failed.
  std::vector<std::string> failures() const;
};

/// Checks the first-family claims for t2 = zeta t1 by trace equality.
/// Throws FamilyError(degenerate_partner) when zeta t1 is an excluded value.
FamilyReport family1_check(const PrimeField& field, Fe t1, Fe c1, Fe c2,
                           const LegendreTraceTable* table = nullptr);

/// The doubly-isogeny criterion for t2 = zeta t1. When it returns true the full
/// signatures are compared and std::logic_error is thrown if they differ.
bool family1_doubly(const PrimeField& field, Fe t1, Fe c1, Fe t2, Fe c2,
                    const LegendreTraceTable* table = nullptr);

/// (t1 - zeta)^2 (t2 - zeta)^2 + 8 t1 t2.
Fe family2_relation(const PrimeField& field, Fe t1, Fe t2);

/// Valid roots t2 of the second-family relation for fixed t1, ascending.
std::vector<Fe> family2_partners(const PrimeField& field, Fe t1);

/// Checks the second-family claims. Throws FamilyError(relation_not_satisfied)
/// when the relation fails.
FamilyReport family2_check(const PrimeField& field, Fe t1, Fe t2, Fe c1, Fe c2,
                           const LegendreTraceTable* table = nullptr);

/// Twists c_i = zeta (t_i^2 + 1) reduced to {1, w}.
std::pair<Fe, Fe> family2_twists(const PrimeField& field, Fe t1, Fe t2);

/// The second-family doubly-isogeny criterion: chi(t2) = chi(zeta t1) = 1, equal
/// base traces, E_4A1(Z1) ~ E_4A2(Z2) and E_4B1(Z1) ~ E_4A2(Z2). Throws std::logic_error if it
/// returns true on a pair whose full signatures differ.
bool family2_doubly(const PrimeField& field, Fe t1, Fe t2,
                    const LegendreTraceTable* table = nullptr);

enum class URelation {
  sum_plus_one,      // u1^2 + u2^2 + 1
  first_shared,      // u1^2 u2^2 + u1^2 + 1
  second_shared,     // u1^2 u2^2 + u2^2 + 1
  product_sum,       // u1^2 u2^2 + u1^2 + u2^2
};

/// Parses "sum_plus_one", "first_shared", "second_shared", "product_sum".
URelation parse_u_relation(const std::string& name);

/// Whether the named factor vanishes.
bool u_relation(const PrimeField& field, URelation id, Fe u1, Fe u2);
bool u_relation(URelation id, std::int64_t u1, std::int64_t u2);

/// Value of the named factor (over F_q, or exactly over Z).
Fe u_relation_value(const PrimeField& field, URelation id, Fe u1, Fe u2);
__int128 u_relation_value(URelation id, std::int64_t u1, std::int64_t u2);

/// Classical modular polynomial Phi_n(x, y) with integer coefficients stored
/// as decimal strings (Phi_4 does not fit in 64 bits).
class ModularPolynomial {
 public:
  struct Term {
    int dx;
    int dy;
    std::string coeff;
  };

  /// Embedded table for n in {2, 3, 4}; throws FamilyError(unsupported_degree).
  static const ModularPolynomial& builtin(int n);
  /// Reads lines "n dx dy coeff" for a single n; '#' starts a comment.
  static ModularPolynomial parse(int n, std::istream& in);

  int level() const noexcept { return level_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  int degree_x() const noexcept;
  int degree_y() const noexcept;
  bool is_symmetric() const;

  Fe evaluate(const PrimeField& field, Fe x, Fe y) const;

 private:
  int level_ = 0;
  std::vector<Term> terms_;
};

/// The embedded coefficient data, in the plaintext format.
const char* builtin_modular_data();

/// Phi_n(j1, j2) = 0 in F_q. Throws FamilyError(unsupported_degree) for n outside {2,3,4}.
bool modular_check(const PrimeField& field, int n, Fe j1, Fe j2);

/// j of the Orbit 1 factor, 256 (I - 1)^3 / I.
Fe orbit1_j_from_invariant(const PrimeField& field, Fe invariant);

/// t1 = (1 + zeta)(3 + zeta r)/2 and t2 = (-1 + zeta)(3 + zeta r)/2 with
/// r = sqrt(-7), or nullopt unless 2 and -7 are squares.
std::optional<std::pair<Fe, Fe>> intersection_construct(const PrimeField& field);

}  // namespace isocensus
