#include "isocensus/d4.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace isocensus {

namespace {

constexpr std::uint8_t kAllRoots = 0x3F;

constexpr std::uint8_t bit(Root r) { return static_cast<std::uint8_t>(1u << static_cast<int>(r)); }

std::uint8_t normalize(std::uint8_t mask) {
  mask &= kAllRoots;
  if (std::popcount(mask) > 3) mask ^= kAllRoots;
  return mask;
}

const std::array<int, 64>& index_table() {
  static const std::array<int, 64> table = [] {
    std::array<int, 64> out{};
    out.fill(-1);
    const auto& pts = TwoTorsionPoint::all();
    for (int i = 0; i < 16; ++i) out[pts[i].mask()] = i;
    return out;
  }();
  return table;
}

Fe square_class_of(const PrimeField& field, Elem a) { return field.square_class(a.value()); }

}  // namespace

const char* root_name(Root r) {
  switch (r) {
    case Root::zeta: return "zeta";
    case Root::minus_zeta: return "-zeta";
    case Root::t: return "t";
    case Root::minus_t: return "-t";
    case Root::inv_t: return "1/t";
    case Root::minus_inv_t: return "-1/t";
  }
  return "?";
}

// TwoTorsionPoint

TwoTorsionPoint TwoTorsionPoint::pair(Root a, Root b) {
  if (a == b) throw std::invalid_argument("a 2-torsion pair needs two distinct roots");
  return TwoTorsionPoint(static_cast<std::uint8_t>(bit(a) | bit(b)));
}

TwoTorsionPoint TwoTorsionPoint::from_mask(std::uint8_t even_subset) {
  if (even_subset & ~kAllRoots) throw std::invalid_argument("mask has bits outside the six roots");
  if (std::popcount(even_subset) % 2 != 0) {
    throw std::invalid_argument("2-torsion points are even subsets of the roots");
  }
  return TwoTorsionPoint(normalize(even_subset));
}

const std::array<TwoTorsionPoint, 16>& TwoTorsionPoint::all() {
  static const std::array<TwoTorsionPoint, 16> points = [] {
    std::array<TwoTorsionPoint, 16> out{};
    int k = 1;
    for (int a = 0; a < 6; ++a) {
      for (int b = a + 1; b < 6; ++b) {
        out[k++] = TwoTorsionPoint(static_cast<std::uint8_t>((1u << a) | (1u << b)));
      }
    }
    return out;
  }();
  return points;
}

int TwoTorsionPoint::index() const noexcept { return index_table()[mask_]; }

std::pair<Root, Root> TwoTorsionPoint::roots() const {
  if (is_zero()) throw std::logic_error("the zero point has no root pair");
  const int lo = std::countr_zero(mask_);
  const int hi = 7 - std::countl_zero(mask_);
  return {static_cast<Root>(lo), static_cast<Root>(hi)};
}

std::string TwoTorsionPoint::to_string() const {
  if (is_zero()) return "0";
  auto [a, b] = roots();
  return std::string("{") + root_name(a) + "," + root_name(b) + "}";
}

int weil_pairing(TwoTorsionPoint a, TwoTorsionPoint b) {
  return std::popcount(static_cast<unsigned>(a.mask() & b.mask())) % 2 == 0 ? 1 : -1;
}

// TorsionSubgroup

TorsionSubgroup TorsionSubgroup::zero() { return TorsionSubgroup(1); }

TorsionSubgroup TorsionSubgroup::full() { return TorsionSubgroup(0xFFFF); }

TorsionSubgroup TorsionSubgroup::span(const std::vector<TwoTorsionPoint>& generators) {
  std::vector<TwoTorsionPoint> elems{TwoTorsionPoint::zero()};
  std::uint16_t bits = 1;
  for (TwoTorsionPoint g : generators) {
    if (bits & (1u << g.index())) continue;
    const std::size_t n = elems.size();
    for (std::size_t i = 0; i < n; ++i) {
      TwoTorsionPoint p = elems[i] + g;
      elems.push_back(p);
      bits |= static_cast<std::uint16_t>(1u << p.index());
    }
  }
  return TorsionSubgroup(bits);
}

TorsionSubgroup TorsionSubgroup::from_points(const std::vector<TwoTorsionPoint>& points) {
  std::uint16_t bits = 0;
  for (TwoTorsionPoint p : points) bits |= static_cast<std::uint16_t>(1u << p.index());
  if (!(bits & 1u)) throw D4Error(D4Errc::not_subgroup, "subgroup must contain zero");
  for (TwoTorsionPoint a : points) {
    for (TwoTorsionPoint b : points) {
      if (!(bits & (1u << (a + b).index()))) {
        throw D4Error(D4Errc::not_subgroup, "point set is not closed under addition");
      }
    }
  }
  return TorsionSubgroup(bits);
}

int TorsionSubgroup::order() const noexcept { return std::popcount(bits_); }

std::vector<TwoTorsionPoint> TorsionSubgroup::elements() const {
  std::vector<TwoTorsionPoint> out;
  for (TwoTorsionPoint p : TwoTorsionPoint::all()) {
    if (contains(p)) out.push_back(p);
  }
  return out;
}

TorsionSubgroup perp(const TorsionSubgroup& h) {
  std::vector<TwoTorsionPoint> out;
  const auto members = h.elements();
  for (TwoTorsionPoint p : TwoTorsionPoint::all()) {
    bool orthogonal = std::all_of(members.begin(), members.end(),
                                  [&](TwoTorsionPoint m) { return weil_pairing(p, m) == 1; });
    if (orthogonal) out.push_back(p);
  }
  return TorsionSubgroup::from_points(out);
}

TorsionSubgroup one_minus_rho_kernel() {
  return TorsionSubgroup::span({TwoTorsionPoint::pair(Root::zeta, Root::minus_zeta),
                                TwoTorsionPoint::pair(Root::t, Root::minus_inv_t)});
}

// Parameterization

bool valid_t(const PrimeField& field, Fe t) {
  const std::uint32_t q = field.q();
  const Fe z = field.zeta();
  return t.v != 0 && t.v != 1 && t.v != q - 1 && t != z && t != field.neg(z);
}

Fe s_from_t(const PrimeField& field, Fe t) {
  auto x = field(t);
  auto x2 = x * x;
  return (-(x2 * x2 + 1) / x2).value();
}

Fe invariant_I(const PrimeField& field, Fe s) {
  auto v = field(s);
  if (v == 2 || v == -2) throw D4Error(D4Errc::singular_s, "invariant undefined for s = +-2");
  return (-(v - 2) * (v - 2) / (4 * (v + 2))).value();
}

D4Curve from_t(const PrimeField& field, Fe t, Fe c) {
  if (!valid_t(field, t)) {
    throw D4Error(D4Errc::degenerate_parameter,
                  "t = " + std::to_string(t.v) + " is one of 0, +-1, +-zeta");
  }
  if (c.v != 1 && c != field.nonresidue()) {
    throw D4Error(D4Errc::bad_twist, "twist c must be 1 or the fixed non-residue");
  }
  D4Curve z;
  z.field_ = &field;
  z.t_ = t;
  z.c_ = c;
  z.s_ = s_from_t(field, t);
  auto x = field(t);
  z.u_ = ((x - x.inv()) / 2).value();
  z.invariant_ = invariant_I(field, z.s_);
  const Fe zeta = field.zeta();
  const Fe inv = field.inv(t);
  z.roots_ = {zeta, field.neg(zeta), t, field.neg(t), inv, field.neg(inv)};
  return z;
}

std::array<Fe, 8> t_orbit(const PrimeField& field, Fe t) {
  auto x = field(t);
  auto m = (x - 1) / (x + 1);
  return {x.value(),          (-x).value(),          x.inv().value(), (-x.inv()).value(),
          m.value(),          (-m).value(),          m.inv().value(), (-m.inv()).value()};
}

Fe canonical_t(const PrimeField& field, Fe t) {
  auto orbit = t_orbit(field, t);
  return *std::min_element(orbit.begin(), orbit.end());
}

CurveClass canonical_class(const PrimeField& field, Fe t, Fe c) {
  if (c.v != 1 && c != field.nonresidue()) {
    throw D4Error(D4Errc::bad_twist, "twist c must be 1 or the fixed non-residue");
  }
  auto orbit = t_orbit(field, t);
  // The last four substitutions change model; c picks up the factor 2(s + 2),
  // which is 2 times a square for every valid t.
  const Fe switched = field.square_class(field.mul(c, Fe(2)));
  CurveClass best{orbit[0], c};
  for (int i = 0; i < 8; ++i) {
    CurveClass cand{orbit[i], i < 4 ? c : switched};
    best = std::min(best, cand);
  }
  return best;
}

Model other_model(const PrimeField& field, Fe s, Fe c) {
  auto v = field(s);
  if (v == 2 || v == -2) throw D4Error(D4Errc::singular_s, "other model undefined for s = +-2");
  auto s2 = (-2 * v + 12) / (v + 2);
  auto c2 = 2 * field(c) * (v + 2);
  return {s2.value(), square_class_of(field, c2)};
}

bool exceptional_s(const PrimeField& field, Fe s) {
  return s == field.reduce(-6) || s == field.reduce(-1) || s == field.reduce(14);
}

// Orbit table

const char* orbit_label_name(OrbitLabel label) {
  switch (label) {
    case OrbitLabel::E: return "E";
    case OrbitLabel::O1: return "1";
    case OrbitLabel::O2A: return "2A";
    case OrbitLabel::O2B: return "2B";
    case OrbitLabel::O2C: return "2C";
    case OrbitLabel::O4A_first: return "4A1";
    case OrbitLabel::O4A_second: return "4A2";
    case OrbitLabel::O4B_first: return "4B1";
    case OrbitLabel::O4B_second: return "4B2";
  }
  return "?";
}

LegendreCurve base_curve(const D4Curve& z) {
  const PrimeField& f = z.field();
  auto t = f(z.t());
  return {(f(z.c()) * (t * t + 1)).value(), (t * t).value()};
}

OrbitLabel orbit_label(TwoTorsionPoint p) {
  using R = Root;
  auto is = [&](R a, R b) { return p == TwoTorsionPoint::pair(a, b); };
  if (p.is_zero()) throw std::invalid_argument("the zero point has no Prym factor");
  if (is(R::zeta, R::minus_zeta)) return OrbitLabel::O1;
  if (is(R::t, R::minus_t) || is(R::inv_t, R::minus_inv_t)) return OrbitLabel::O2A;
  if (is(R::minus_t, R::minus_inv_t) || is(R::t, R::inv_t)) return OrbitLabel::O2B;
  if (is(R::t, R::minus_inv_t) || is(R::minus_t, R::inv_t)) return OrbitLabel::O2C;
  if (is(R::zeta, R::inv_t) || is(R::zeta, R::minus_t)) return OrbitLabel::O4A_first;
  if (is(R::minus_zeta, R::minus_inv_t) || is(R::minus_zeta, R::t)) return OrbitLabel::O4A_second;
  if (is(R::zeta, R::t) || is(R::zeta, R::minus_inv_t)) return OrbitLabel::O4B_first;
  return OrbitLabel::O4B_second;
}

LegendreCurve prym_model(const D4Curve& z, TwoTorsionPoint u) {
  const PrimeField& f = z.field();
  auto t = f(z.t());
  auto zeta = f(f.zeta());
  auto t2 = t * t;
  auto twist = f(z.c()) * (t2 + 1);
  auto lam = [&](Elem v) { return v.value(); };
  switch (orbit_label(u)) {
    case OrbitLabel::O1:
      return {Fe(1), lam(4 * t2 / ((t2 + 1) * (t2 + 1)))};
    case OrbitLabel::O2A:
      return {twist.value(), lam(4 * zeta * t / ((t + zeta) * (t + zeta)))};
    case OrbitLabel::O2B:
      return {twist.value(), lam(2 * (t2 - 1) / ((t + zeta) * (t + zeta)))};
    case OrbitLabel::O2C:
      return {twist.value(), f.reduce(-1)};
    case OrbitLabel::O4A_first:
      return {zeta.value(), lam(-2 * zeta * t / ((t - zeta) * (t - zeta)))};
    case OrbitLabel::O4A_second:
      return {(zeta * twist).value(), lam(-2 * zeta * t / ((t - zeta) * (t - zeta)))};
    case OrbitLabel::O4B_first:
      return {zeta.value(), lam(2 * zeta * t / ((t + zeta) * (t + zeta)))};
    case OrbitLabel::O4B_second:
      return {(zeta * twist).value(), lam(2 * zeta * t / ((t + zeta) * (t + zeta)))};
    case OrbitLabel::E:
      break;
  }
  throw std::logic_error("unreachable orbit label");
}

std::array<OrbitCurve, 16> orbit_table(const D4Curve& z) {
  std::array<OrbitCurve, 16> out{};
  out[0] = {OrbitLabel::E, std::nullopt, base_curve(z)};
  const auto& pts = TwoTorsionPoint::all();
  for (int i = 1; i < 16; ++i) {
    out[i] = {orbit_label(pts[i]), pts[i], prym_model(z, pts[i])};
  }
  return out;
}

OrbitTraces orbit_traces(const D4Curve& z, const LegendreTraceTable* table) {
  OrbitTraces out{};
  auto trace_of = [&](const LegendreCurve& c) {
    return table ? table->trace(c) : trace_legendre(z.field(), c);
  };
  out[0] = trace_of(base_curve(z));
  const auto& pts = TwoTorsionPoint::all();
  for (int i = 1; i < 16; ++i) out[i] = trace_of(prym_model(z, pts[i]));
  return out;
}

// Signatures

CoverSignature::CoverSignature(std::vector<Trace> traces) : traces_(std::move(traces)) {
  std::sort(traces_.begin(), traces_.end());
}

bool CoverSignature::is_submultiset_of(const CoverSignature& other) const {
  return std::includes(other.traces_.begin(), other.traces_.end(), traces_.begin(),
                       traces_.end());
}

std::string CoverSignature::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < traces_.size(); ++i) {
    if (i) os << ';';
    os << traces_[i].value;
  }
  return os.str();
}

CoverSignature cover_signature(const OrbitTraces& traces, const TorsionSubgroup& h) {
  const TorsionSubgroup orth = perp(h);
  std::vector<Trace> out{traces[0], traces[0]};
  const auto& pts = TwoTorsionPoint::all();
  for (int i = 1; i < 16; ++i) {
    if (orth.contains(pts[i])) out.push_back(traces[i]);
  }
  return CoverSignature(std::move(out));
}

CoverSignature cover_signature(const D4Curve& z, const TorsionSubgroup& h,
                               const LegendreTraceTable* table) {
  return cover_signature(orbit_traces(z, table), h);
}

CoverSignature full_signature(const OrbitTraces& traces) {
  std::vector<Trace> out(traces.begin(), traces.end());
  out.push_back(traces[0]);
  return CoverSignature(std::move(out));
}

CoverSignature full_signature(const D4Curve& z, const LegendreTraceTable* table) {
  return full_signature(orbit_traces(z, table));
}

// Pointed curves and the 2-isogeny

PointedCubic pointed_curve(const PrimeField& field, Fe s, Fe c, Fe scale) {
  auto v = field(s);
  if (v == 2 || v == -2) throw D4Error(D4Errc::singular_s, "E is singular for s = +-2");
  if (scale.v == 0) throw std::invalid_argument("scale must be nonzero");
  // x -> x - 1 gives c x (x^2 + (s - 2) x + (2 - s)); then x -> scale * x.
  auto k = field(scale);
  return {(field(c) * k * k * k).value(), ((v - 2) / k).value(), ((2 - v) / (k * k)).value()};
}

Model recover_model(const PrimeField& field, const PointedCubic& e) {
  auto a = field(e.a), b = field(e.b);
  if (a.is_zero() || b.is_zero()) {
    throw EcError(EcErrc::singular_model, "pointed cubic is not of the D4 base type");
  }
  // x -> mu x with mu = -b/a turns x^2 + a x + b into mu^2 (x^2 + f x - f).
  auto mu = -b / a;
  auto f = -(a * a) / b;
  return {(f + 2).value(), square_class_of(field, field(e.k) * mu)};
}

Model mu_roundtrip(const PrimeField& field, Fe s, Fe c, Fe scale) {
  return recover_model(field, pointed_curve(field, s, c, scale));
}

std::pair<Fe, Fe> two_isogeny_image(const PrimeField& field, Fe s, Fe c, Fe x, Fe y) {
  auto v = field(s);
  if (v == 2 || v == -2) throw D4Error(D4Errc::singular_s, "E is singular for s = +-2");
  auto px = field(x);
  if (px == -1) throw EcError(EcErrc::kernel_point, "(-1, 0) generates the kernel");
  auto cc = field(c);
  // Y^2 = X (X^2 + A X + B) with X = c (x + 1), Y = c y, A = c (s - 2), B = c^2 (2 - s).
  auto bx = cc * (px + 1);
  auto by = cc * field(y);
  auto b2 = cc * cc * (2 - v);
  // Velu: X3 = Y^2 / X^2, Y3 = Y (B - X^2) / X^2 on Y3^2 = X3 (X3^2 - 2A X3 + A^2 - 4B).
  auto x3 = by * by / (bx * bx);
  auto y3 = by * (b2 - bx * bx) / (bx * bx);
  // (4 X3, 8 Y3) lies on the same shape for c' = 2c(s+2); undo X' = c'(x' + 1), Y' = c' y'.
  auto target_c = 2 * cc * (v + 2);
  auto xp = 4 * x3 / target_c;
  auto yp = 8 * y3 / target_c;
  return {(xp - 1).value(), yp.value()};
}

}  // namespace isocensus
