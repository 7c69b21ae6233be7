#include "isocensus/families.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <tuple>

namespace isocensus {

namespace {

// Index into OrbitTraces of one representative point per label; points with
// the same label also share the twist d, hence the trace.
int label_slot(OrbitLabel label) {
  static const std::map<OrbitLabel, int> slots = [] {
    std::map<OrbitLabel, int> out{{OrbitLabel::E, 0}};
    const auto& pts = TwoTorsionPoint::all();
    for (int i = 1; i < 16; ++i) out.emplace(orbit_label(pts[i]), i);
    return out;
  }();
  return slots.at(label);
}

struct CurveView {
  OrbitTraces traces;
  Trace of(OrbitLabel label) const { return traces[label_slot(label)]; }
};

CurveView view(const PrimeField& field, Fe t, Fe c, const LegendreTraceTable* table) {
  return {orbit_traces(from_t(field, t, c), table)};
}

bool is_square(const PrimeField& field, Elem a) { return field.chi(a.value()) == 1; }

void require_family2(const PrimeField& field, Fe t1, Fe t2) {
  if (family2_relation(field, t1, t2).v != 0) {
    throw FamilyError(FamilyErrc::relation_not_satisfied,
                      "(t1 - zeta)^2 (t2 - zeta)^2 != -8 t1 t2");
  }
}

Fe reduce_decimal(const PrimeField& field, const std::string& digits) {
  std::uint64_t acc = 0;
  bool negative = false;
  for (char ch : digits) {
    if (ch == '-') {
      negative = true;
      continue;
    }
    acc = (acc * 10 + static_cast<std::uint64_t>(ch - '0')) % field.q();
  }
  Fe v(static_cast<std::uint32_t>(acc));
  return negative ? field.neg(v) : v;
}

}  // namespace

std::vector<std::string> FamilyReport::failures() const {
  std::vector<std::string> out;
  if (!hypotheses) return out;
  for (const Claim& claim : claims) {
    if (claim.hypothesis && !claim.holds) out.push_back(claim.id);
  }
  return out;
}

// First family

FamilyReport family1_check(const PrimeField& field, Fe t1, Fe c1, Fe c2,
                           const LegendreTraceTable* table) {
  const Fe t2 = field.mul(field.zeta(), t1);
  if (!valid_t(field, t2)) {
    throw FamilyError(FamilyErrc::degenerate_partner, "zeta * t1 is an excluded parameter");
  }
  auto x1 = field(t1), x2 = field(t2);
  FamilyReport report;
  report.q = field.q();
  report.t1 = t1;
  report.c1 = c1;
  report.t2 = t2;
  report.c2 = c2;
  report.hypotheses = is_square(field, (x1 * x1 + 1) * (x2 * x2 + 1)) &&
                      is_square(field, field(c1) * field(c2));

  const CurveView a = view(field, t1, c1, table);
  const CurveView b = view(field, t2, c2, table);
  using L = OrbitLabel;
  const bool h = report.hypotheses;
  report.claims = {
      {"orbit1_isomorphic", h, a.of(L::O1) == b.of(L::O1)},
      {"orbit2B_isogenous", h, a.of(L::O2B) == b.of(L::O2B)},
      {"orbit2C_isomorphic", h, a.of(L::O2C) == b.of(L::O2C)},
      {"base_vs_orbit2A", h, a.of(L::E) == b.of(L::O2A) && b.of(L::E) == a.of(L::O2A)},
  };
  report.doubly_isogenous = full_signature(a.traces) == full_signature(b.traces);
  return report;
}

bool family1_doubly(const PrimeField& field, Fe t1, Fe c1, Fe t2, Fe c2,
                    const LegendreTraceTable* table) {
  if (t2 != field.mul(field.zeta(), t1)) {
    throw FamilyError(FamilyErrc::relation_not_satisfied, "t2 != zeta * t1");
  }
  if (!valid_t(field, t2)) {
    throw FamilyError(FamilyErrc::degenerate_partner, "zeta * t1 is an excluded parameter");
  }
  auto x1 = field(t1), x2 = field(t2);
  if (!is_square(field, (x1 * x1 + 1) * (x2 * x2 + 1)) ||
      !is_square(field, field(c1) * field(c2))) {
    return false;
  }
  const CurveView a = view(field, t1, c1, table);
  const CurveView b = view(field, t2, c2, table);
  using L = OrbitLabel;
  if (a.of(L::E) != b.of(L::E)) return false;

  auto in = [](Trace v, Trace p, Trace r) { return v == p || v == r; };
  const Trace a4a = a.of(L::O4A_first), a4b = a.of(L::O4B_first);
  const Trace b4a1 = b.of(L::O4A_first), b4a2 = b.of(L::O4A_second);
  const Trace b4b1 = b.of(L::O4B_first), b4b2 = b.of(L::O4B_second);
  const bool straight = in(a4a, b4a1, b4a2) && in(a4b, b4b1, b4b2);
  const bool crossed = in(a4a, b4b1, b4b2) && in(a4b, b4a1, b4a2);
  if (!(straight || crossed)) return false;

  if (full_signature(a.traces) != full_signature(b.traces)) {
    throw std::logic_error("first-family criterion held but full signatures differ at q = " +
                           std::to_string(field.q()) + ", t1 = " + std::to_string(t1.v));
  }
  return true;
}

// Second family

Fe family2_relation(const PrimeField& field, Fe t1, Fe t2) {
  auto z = field(field.zeta());
  auto a = field(t1) - z, b = field(t2) - z;
  return (a * a * b * b + 8 * field(t1) * field(t2)).value();
}

std::vector<Fe> family2_partners(const PrimeField& field, Fe t1) {
  auto z = field(field.zeta());
  auto x = field(t1);
  auto a = (x - z) * (x - z);
  std::vector<Fe> out;
  if (a.is_zero()) return out;
  // A t2^2 + (8 t1 - 2 A zeta) t2 - A = 0.
  auto b = 8 * x - 2 * a * z;
  auto disc = b * b + 4 * a * a;
  auto root = sqrt_mod(field, disc.value());
  if (!root) return out;
  for (Elem r : {field(*root), -field(*root)}) {
    Fe t2 = ((-b + r) / (2 * a)).value();
    if (valid_t(field, t2) && std::find(out.begin(), out.end(), t2) == out.end()) {
      out.push_back(t2);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FamilyReport family2_check(const PrimeField& field, Fe t1, Fe t2, Fe c1, Fe c2,
                           const LegendreTraceTable* table) {
  require_family2(field, t1, t2);
  auto x1 = field(t1), x2 = field(t2), z = field(field.zeta());
  auto q1 = x1 * x1 + 1, q2 = x2 * x2 + 1;
  auto k1 = field(c1), k2 = field(c2);

  FamilyReport report;
  report.q = field.q();
  report.t1 = t1;
  report.c1 = c1;
  report.t2 = t2;
  report.c2 = c2;
  report.hypotheses = true;

  const CurveView a = view(field, t1, c1, table);
  const CurveView b = view(field, t2, c2, table);
  using L = OrbitLabel;
  auto pairs_match = [](const CurveView& lhs, const CurveView& rhs, L first, L second) {
    return lhs.of(L::O2A) == rhs.of(first) && lhs.of(L::O2B) == rhs.of(second);
  };
  report.claims = {
      {"orbit1_isogenous", true, a.of(L::O1) == b.of(L::O1)},
      {"orbit2C_isomorphic", is_square(field, k1 * k2 * q1 * q2), a.of(L::O2C) == b.of(L::O2C)},
      {"first_pairs", is_square(field, k1 * x1 * q1),
       pairs_match(a, b, L::O4A_first, L::O4B_first)},
      {"second_pairs", is_square(field, k1 * k2 * x1 * q1 * q2),
       pairs_match(a, b, L::O4A_second, L::O4B_second)},
      {"swapped_first_pairs", is_square(field, k2 * x2 * q2),
       pairs_match(b, a, L::O4A_first, L::O4B_first)},
      {"swapped_second_pairs", is_square(field, k1 * k2 * x2 * q1 * q2),
       pairs_match(b, a, L::O4A_second, L::O4B_second)},
      {"square_classes", true,
       is_square(field, z * x1 * x2) && is_square(field, x1 * (x1 * x1 - 1)) &&
           is_square(field, x2 * (x2 * x2 - 1))},
  };
  report.doubly_isogenous = full_signature(a.traces) == full_signature(b.traces);
  return report;
}

std::pair<Fe, Fe> family2_twists(const PrimeField& field, Fe t1, Fe t2) {
  auto z = field(field.zeta());
  auto x1 = field(t1), x2 = field(t2);
  return {field.square_class((z * (x1 * x1 + 1)).value()),
          field.square_class((z * (x2 * x2 + 1)).value())};
}

bool family2_doubly(const PrimeField& field, Fe t1, Fe t2, const LegendreTraceTable* table) {
  require_family2(field, t1, t2);
  if (field.chi(t2) != 1 || field.chi(field.mul(field.zeta(), t1)) != 1) return false;
  auto [c1, c2] = family2_twists(field, t1, t2);
  const CurveView a = view(field, t1, c1, table);
  const CurveView b = view(field, t2, c2, table);
  using L = OrbitLabel;
  if (a.of(L::E) != b.of(L::E)) return false;
  if (a.of(L::O4A_first) != b.of(L::O4A_second)) return false;
  // The 4B check pairs the first 4B factor of Z1 with the second 4A factor of Z2.
  if (a.of(L::O4B_first) != b.of(L::O4A_second)) return false;

  if (full_signature(a.traces) != full_signature(b.traces)) {
    throw std::logic_error("second-family criterion held but full signatures differ at q = " +
                           std::to_string(field.q()) + ", t1 = " + std::to_string(t1.v));
  }
  return true;
}

// u-relations

URelation parse_u_relation(const std::string& name) {
  if (name == "sum_plus_one") return URelation::sum_plus_one;
  if (name == "first_shared") return URelation::first_shared;
  if (name == "second_shared") return URelation::second_shared;
  if (name == "product_sum") return URelation::product_sum;
  throw FamilyError(FamilyErrc::unknown_relation, "unknown u-relation '" + name + "'");
}

Fe u_relation_value(const PrimeField& field, URelation id, Fe u1, Fe u2) {
  auto a = field(u1) * field(u1), b = field(u2) * field(u2);
  switch (id) {
    case URelation::sum_plus_one: return (a + b + 1).value();
    case URelation::first_shared: return (a * b + a + 1).value();
    case URelation::second_shared: return (a * b + b + 1).value();
    case URelation::product_sum: return (a * b + a + b).value();
  }
  throw FamilyError(FamilyErrc::unknown_relation, "unknown u-relation");
}

__int128 u_relation_value(URelation id, std::int64_t u1, std::int64_t u2) {
  const __int128 a = static_cast<__int128>(u1) * u1, b = static_cast<__int128>(u2) * u2;
  switch (id) {
    case URelation::sum_plus_one: return a + b + 1;
    case URelation::first_shared: return a * b + a + 1;
    case URelation::second_shared: return a * b + b + 1;
    case URelation::product_sum: return a * b + a + b;
  }
  throw FamilyError(FamilyErrc::unknown_relation, "unknown u-relation");
}

bool u_relation(const PrimeField& field, URelation id, Fe u1, Fe u2) {
  return u_relation_value(field, id, u1, u2).v == 0;
}

bool u_relation(URelation id, std::int64_t u1, std::int64_t u2) {
  return u_relation_value(id, u1, u2) == 0;
}

// Modular polynomials

ModularPolynomial ModularPolynomial::parse(int n, std::istream& in) {
  ModularPolynomial out;
  out.level_ = n;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    int level = 0;
    Term term{};
    if (!(row >> level)) continue;
    if (!(row >> term.dx >> term.dy >> term.coeff)) {
      throw std::runtime_error("malformed modular polynomial line: " + line);
    }
    const bool numeric =
        !term.coeff.empty() &&
        std::all_of(term.coeff.begin() + (term.coeff[0] == '-' ? 1 : 0), term.coeff.end(),
                    [](char ch) { return ch >= '0' && ch <= '9'; }) &&
        term.coeff != "-";
    if (!numeric) throw std::runtime_error("bad coefficient: " + term.coeff);
    if (level == n) out.terms_.push_back(std::move(term));
  }
  if (out.terms_.empty()) {
    throw FamilyError(FamilyErrc::unsupported_degree,
                      "no coefficients for level " + std::to_string(n));
  }
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const Term& a, const Term& b) { return std::tie(a.dx, a.dy) < std::tie(b.dx, b.dy); });
  return out;
}

const ModularPolynomial& ModularPolynomial::builtin(int n) {
  if (n < 2 || n > 4) {
    throw FamilyError(FamilyErrc::unsupported_degree,
                      "modular polynomial of level " + std::to_string(n) + " is not embedded");
  }
  static const std::array<ModularPolynomial, 3> table = [] {
    std::array<ModularPolynomial, 3> out;
    for (int level = 2; level <= 4; ++level) {
      std::istringstream in(builtin_modular_data());
      out[level - 2] = parse(level, in);
    }
    return out;
  }();
  return table[n - 2];
}

int ModularPolynomial::degree_x() const noexcept {
  int d = 0;
  for (const Term& term : terms_) d = std::max(d, term.dx);
  return d;
}

int ModularPolynomial::degree_y() const noexcept {
  int d = 0;
  for (const Term& term : terms_) d = std::max(d, term.dy);
  return d;
}

bool ModularPolynomial::is_symmetric() const {
  std::map<std::pair<int, int>, std::string> coeffs;
  for (const Term& term : terms_) coeffs[{term.dx, term.dy}] = term.coeff;
  for (const Term& term : terms_) {
    auto it = coeffs.find({term.dy, term.dx});
    if (it == coeffs.end() || it->second != term.coeff) return false;
  }
  return true;
}

Fe ModularPolynomial::evaluate(const PrimeField& field, Fe x, Fe y) const {
  Fe acc(0);
  for (const Term& term : terms_) {
    Fe v = field.mul(reduce_decimal(field, term.coeff),
                     field.mul(field.pow(x, term.dx), field.pow(y, term.dy)));
    acc = field.add(acc, v);
  }
  return acc;
}

bool modular_check(const PrimeField& field, int n, Fe j1, Fe j2) {
  return ModularPolynomial::builtin(n).evaluate(field, j1, j2).v == 0;
}

Fe orbit1_j_from_invariant(const PrimeField& field, Fe invariant) {
  auto i = field(invariant);
  return (256 * (i - 1) * (i - 1) * (i - 1) / i).value();
}

// Intersection of families 1, 2 and 3

std::optional<std::pair<Fe, Fe>> intersection_construct(const PrimeField& field) {
  if (!field.has_zeta() || field.q() == 7) return std::nullopt;
  if (field.chi(Fe(2 % field.q())) != 1 || field.chi(field.reduce(-7)) != 1) return std::nullopt;
  auto z = field(field.zeta());
  auto r = field(*sqrt_mod(field, field.reduce(-7)));
  auto common = (3 + z * r) / 2;
  Fe t1 = ((1 + z) * common).value();
  Fe t2 = ((z - 1) * common).value();
  if (!valid_t(field, t1) || !valid_t(field, t2)) return std::nullopt;
  return std::make_pair(t1, t2);
}

}  // namespace isocensus
