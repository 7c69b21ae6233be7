#pragma once

// Genus-2 curves y^2 = c (x^2 + 1)(x^4 + s x^2 + 1) with D4-action, in the
// rational-Weierstrass parameterization s = -(t^4 + 1)/t^2, with Weierstrass
// points +-zeta, +-t, +-1/t and base point (zeta, 0).

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isocensus/ec.hpp"
#include "isocensus/ff.hpp"

namespace isocensus {

enum class D4Errc { degenerate_parameter, bad_twist, singular_s, not_subgroup };

class D4Error : public std::invalid_argument {
 public:
  D4Error(D4Errc code, const std::string& what)
      : std::invalid_argument(what), code_(code) {}
  D4Errc code() const noexcept { return code_; }

 private:
  D4Errc code_;
};

/// The six Weierstrass abscissae, in bit order.
enum class Root : std::uint8_t { zeta, minus_zeta, t, minus_t, inv_t, minus_inv_t };

const char* root_name(Root r);

/// A point of Jac(Z)[2], stored as an even subset of the six roots modulo
/// complementation. The canonical representative has at most two elements.
class TwoTorsionPoint {
 public:
  constexpr TwoTorsionPoint() = default;

  static TwoTorsionPoint zero() { return {}; }
  /// [W_a - W_b]; throws std::invalid_argument for a == b.
  static TwoTorsionPoint pair(Root a, Root b);
  static TwoTorsionPoint from_mask(std::uint8_t even_subset);

  /// All 16 points, zero first.
  static const std::array<TwoTorsionPoint, 16>& all();

  bool is_zero() const noexcept { return mask_ == 0; }
  std::uint8_t mask() const noexcept { return mask_; }
  /// Position in all().
  int index() const noexcept;
  /// The two roots u, v with this point = [W_u - W_v]. Requires !is_zero().
  std::pair<Root, Root> roots() const;
  std::string to_string() const;

  friend TwoTorsionPoint operator+(TwoTorsionPoint a, TwoTorsionPoint b) {
    return from_mask(a.mask_ ^ b.mask_);
  }
  friend constexpr bool operator==(TwoTorsionPoint, TwoTorsionPoint) = default;

 private:
  constexpr explicit TwoTorsionPoint(std::uint8_t mask) : mask_(mask) {}
  std::uint8_t mask_ = 0;
};

/// -1 iff the two label pairs share exactly one root.
int weil_pairing(TwoTorsionPoint a, TwoTorsionPoint b);

/// A subgroup of Jac(Z)[2], as a membership bitmask over TwoTorsionPoint::index().
class TorsionSubgroup {
 public:
  static TorsionSubgroup zero();
  static TorsionSubgroup full();
  /// Subgroup generated by the given points.
  static TorsionSubgroup span(const std::vector<TwoTorsionPoint>& generators);
  /// Exactly these points; throws D4Error(not_subgroup) unless closed and containing zero.
  static TorsionSubgroup from_points(const std::vector<TwoTorsionPoint>& points);

  bool contains(TwoTorsionPoint p) const noexcept { return (bits_ >> p.index()) & 1u; }
  int order() const noexcept;
  std::vector<TwoTorsionPoint> elements() const;
  bool is_subset_of(const TorsionSubgroup& other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }
  std::uint16_t bits() const noexcept { return bits_; }

  friend bool operator==(const TorsionSubgroup&, const TorsionSubgroup&) = default;

 private:
  explicit TorsionSubgroup(std::uint16_t bits) : bits_(bits) {}
  std::uint16_t bits_ = 1;
};

/// Points pairing trivially with all of H.
TorsionSubgroup perp(const TorsionSubgroup& h);

/// ker(1 - rho^*) = span{ {zeta,-zeta}, {t,-1/t} }.
TorsionSubgroup one_minus_rho_kernel();

class D4Curve {
 public:
  const PrimeField& field() const noexcept { return *field_; }
  Fe t() const noexcept { return t_; }
  Fe c() const noexcept { return c_; }
  Fe s() const noexcept { return s_; }
  /// (t - 1/t)/2.
  Fe u() const noexcept { return u_; }
  Fe invariant() const noexcept { return invariant_; }
  Fe root(Root r) const noexcept { return roots_[static_cast<int>(r)]; }

 private:
  friend D4Curve from_t(const PrimeField&, Fe, Fe);
  D4Curve() = default;

  const PrimeField* field_ = nullptr;
  Fe t_, c_, s_, u_, invariant_;
  std::array<Fe, 6> roots_{};
};

/// True iff t avoids {0, +-1, +-zeta}.
bool valid_t(const PrimeField& field, Fe t);

/// Throws D4Error(degenerate_parameter) or D4Error(bad_twist) for c not in {1, w}.
/// The field must outlive the curve.
D4Curve from_t(const PrimeField& field, Fe t, Fe c);

/// -(t^4 + 1)/t^2.
Fe s_from_t(const PrimeField& field, Fe t);

/// The eight parameter values giving isomorphic curves:
/// +-t, +-1/t, +-(t-1)/(t+1), +-(t+1)/(t-1).
std::array<Fe, 8> t_orbit(const PrimeField& field, Fe t);

/// Smallest integer representative in t_orbit(t).
Fe canonical_t(const PrimeField& field, Fe t);

struct CurveClass {
  Fe t;
  Fe c;

  friend constexpr auto operator<=>(const CurveClass&, const CurveClass&) = default;
};

/// The (canonical t, twist) census key of the curve with parameters (t, c).
/// The Moebius half of the orbit passes to the other model, which multiplies
/// c by 2(s + 2) = 2 (mod squares).
CurveClass canonical_class(const PrimeField& field, Fe t, Fe c);

/// -(s - 2)^2 / (4 (s + 2)); throws D4Error(singular_s) for s = +-2.
Fe invariant_I(const PrimeField& field, Fe s);

struct Model {
  Fe s;
  Fe c;

  friend constexpr auto operator<=>(const Model&, const Model&) = default;
};

/// s' = (-2s + 12)/(s + 2), c' = 2c(s + 2) reduced to {1, w}.
Model other_model(const PrimeField& field, Fe s, Fe c);

enum class OrbitLabel {
  E,
  O1,
  O2A,
  O2B,
  O2C,
  O4A_first,
  O4A_second,
  O4B_first,
  O4B_second,
};

const char* orbit_label_name(OrbitLabel label);

struct OrbitCurve {
  OrbitLabel label;
  std::optional<TwoTorsionPoint> point;  // absent for E
  LegendreCurve model;
};

/// (lambda, d) = (t^2, c(t^2 + 1)).
LegendreCurve base_curve(const D4Curve& z);

/// Orbit label of a nonzero point.
OrbitLabel orbit_label(TwoTorsionPoint p);

/// Legendre model of the Prym factor E_U for nonzero U.
LegendreCurve prym_model(const D4Curve& z, TwoTorsionPoint u);

/// E followed by the 15 Prym factors in TwoTorsionPoint::all() order.
std::array<OrbitCurve, 16> orbit_table(const D4Curve& z);

/// Traces of E (entry 0) and of E_U at entry U.index().
using OrbitTraces = std::array<Trace, 16>;

/// Computes traces by direct character sums, or through the table when given.
OrbitTraces orbit_traces(const D4Curve& z, const LegendreTraceTable* table = nullptr);

/// Sorted multiset of traces of the elliptic isogeny factors of a cover.
class CoverSignature {
 public:
  CoverSignature() = default;
  explicit CoverSignature(std::vector<Trace> traces);

  const std::vector<Trace>& traces() const noexcept { return traces_; }
  std::size_t size() const noexcept { return traces_.size(); }
  /// Multiset inclusion.
  bool is_submultiset_of(const CoverSignature& other) const;
  /// Semicolon-joined decimal traces.
  std::string to_string() const;

  friend bool operator==(const CoverSignature&, const CoverSignature&) = default;
  friend auto operator<=>(const CoverSignature& a, const CoverSignature& b) {
    return a.traces_ <=> b.traces_;
  }

 private:
  std::vector<Trace> traces_;
};

/// {t_E, t_E} plus t(E_U) for U in H^perp \ 0.
CoverSignature cover_signature(const OrbitTraces& traces, const TorsionSubgroup& h);
CoverSignature cover_signature(const D4Curve& z, const TorsionSubgroup& h,
                               const LegendreTraceTable* table = nullptr);

/// All 17 factors of Jac of the full 2-cover.
CoverSignature full_signature(const OrbitTraces& traces);
CoverSignature full_signature(const D4Curve& z, const LegendreTraceTable* table = nullptr);

/// y^2 = k x (x^2 + a x + b) with marked 2-torsion point (0, 0).
struct PointedCubic {
  Fe k, a, b;
};

/// Sends (s, c) to E: y^2 = c (x + 1)(x^2 + s x + 1) with P = (-1, 0),
/// moved to P = (0, 0) and then rescaled by x -> scale * x.
PointedCubic pointed_curve(const PrimeField& field, Fe s, Fe c, Fe scale = Fe(1));

/// Recovers (s, square class of c) by normalizing to y^2 = c x (x^2 + f x - f).
Model recover_model(const PrimeField& field, const PointedCubic& e);

/// recover_model(pointed_curve(s, c, scale)).
Model mu_roundtrip(const PrimeField& field, Fe s, Fe c, Fe scale = Fe(1));

/// Image of (x, y) on E under the 2-isogeny E -> E' with kernel (-1, 0).
/// Throws EcError(kernel_point) for x = -1.
std::pair<Fe, Fe> two_isogeny_image(const PrimeField& field, Fe s, Fe c, Fe x, Fe y);

/// s in {-6, -1, 14}: geometric automorphism group strictly larger than D4.
bool exceptional_s(const PrimeField& field, Fe s);

}  // namespace isocensus
