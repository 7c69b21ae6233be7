#include "isocensus/verify.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "isocensus/census.hpp"
#include "isocensus/d4.hpp"
#include "isocensus/families.hpp"

namespace isocensus {

namespace {

class Tally {
 public:
  Tally(std::string suite, std::string property) {
    result_.suite = std::move(suite);
    result_.property = std::move(property);
  }

  void check(bool ok, const std::function<std::string()>& detail) {
    ++result_.checked;
    if (!ok) {
      if (result_.failures == 0) result_.detail = detail();
      ++result_.failures;
    }
  }

  const PropertyResult& result() const { return result_; }

 private:
  PropertyResult result_;
};

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::uint32_t q) : rng_(seed * 0x9E3779B97F4A7C15ull + q) {}

  std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(rng_() % n); }

  Fe valid_t(const PrimeField& field) {
    for (;;) {
      Fe t(below(field.q()));
      if (isocensus::valid_t(field, t)) return t;
    }
  }

 private:
  std::mt19937_64 rng_;
};

std::vector<std::uint32_t> usable_primes(const SuiteOptions& options) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t q : options.primes) {
    if (q % 4 == 1 && q >= 13 && is_prime(q)) out.push_back(q);
  }
  return out;
}

std::string at(std::uint32_t q, Fe t) {
  return "q=" + std::to_string(q) + " t=" + std::to_string(t.v);
}

// Set of doubly isogenous pairs as (class, class), smaller first.
using ClassPairs = std::set<std::pair<CurveClass, CurveClass>>;

ClassPairs census_doubly_pairs(const PrimeField& field, const LegendreTraceTable& table) {
  const auto records = enumerate_rw(field, &table);
  ClassPairs out;
  for (const PairRecord& p : find_pairs(field, records, PairMode::doubly())) {
    out.emplace(CurveClass{p.t1, p.c1}, CurveClass{p.t2, p.c2});
  }
  return out;
}

bool census_has(const PrimeField& field, const ClassPairs& pairs, Fe t1, Fe c1, Fe t2, Fe c2) {
  CurveClass a = canonical_class(field, t1, c1), b = canonical_class(field, t2, c2);
  if (a == b) return true;  // the same class; not a pair
  if (b < a) std::swap(a, b);
  return pairs.count({a, b}) != 0;
}

std::vector<PropertyResult> suite_family1(const SuiteOptions& options) {
  Tally claims("family1", "claims_hold");
  Tally hypotheses("family1", "hypotheses_exercised");
  Tally criterion("family1", "criterion_implies_equal_signatures");
  Tally census("family1", "criterion_pairs_found_by_census");
  for (std::uint32_t q : usable_primes(options)) {
    const PrimeField field = make_field(q);
    const LegendreTraceTable table(field);
    const Fe z = field.zeta();
    const Fe twists[2] = {Fe(1), field.nonresidue()};
    Sampler rng(options.seed, q);
    for (int k = 0; k < options.samples; ++k) {
      const Fe t1 = rng.valid_t(field);
      if (!valid_t(field, field.mul(z, t1))) continue;
      for (Fe c1 : twists) {
        for (Fe c2 : twists) {
          FamilyReport report = family1_check(field, t1, c1, c2, &table);
          if (!report.hypotheses) continue;
          hypotheses.check(true, [] { return std::string(); });
          auto failures = report.failures();
          claims.check(failures.empty(), [&] { return at(q, t1) + " failed " + failures.front(); });
        }
      }
    }
    const ClassPairs pairs = census_doubly_pairs(field, table);
    for (std::uint32_t v = 2; v + 1 < q; ++v) {
      const Fe t1(v), t2 = field.mul(z, Fe(v));
      if (!valid_t(field, t1) || !valid_t(field, t2)) continue;
      for (Fe c1 : twists) {
        for (Fe c2 : twists) {
          bool doubly = false;
          try {
            doubly = family1_doubly(field, t1, c1, t2, c2, &table);
          } catch (const std::logic_error& e) {
            criterion.check(false, [&] { return std::string(e.what()); });
            continue;
          }
          if (!doubly) continue;
          criterion.check(true, [] { return std::string(); });
          census.check(census_has(field, pairs, t1, c1, t2, c2),
                       [&] { return at(q, t1) + " missing from census"; });
        }
      }
    }
  }
  return {claims.result(), hypotheses.result(), criterion.result(), census.result()};
}

std::vector<PropertyResult> suite_family2(const SuiteOptions& options) {
  Tally relation("family2", "partners_satisfy_relation");
  Tally claims("family2", "claims_hold");
  Tally criterion("family2", "criterion_implies_equal_signatures");
  Tally census("family2", "criterion_pairs_found_by_census");
  for (std::uint32_t q : usable_primes(options)) {
    const PrimeField field = make_field(q);
    const LegendreTraceTable table(field);
    const Fe z = field.zeta();
    const Fe twists[2] = {Fe(1), field.nonresidue()};
    Sampler rng(options.seed, q);
    for (int k = 0; k < options.samples; ++k) {
      const Fe t1 = rng.valid_t(field);
      for (Fe t2 : family2_partners(field, t1)) {
        relation.check(family2_relation(field, t1, t2).v == 0,
                       [&] { return at(q, t1) + " partner " + std::to_string(t2.v); });
        for (Fe c1 : twists) {
          for (Fe c2 : twists) {
            auto failures = family2_check(field, t1, t2, c1, c2, &table).failures();
            claims.check(failures.empty(),
                        [&] { return at(q, t1) + " failed " + failures.front(); });
          }
        }
      }
    }
    const ClassPairs pairs = census_doubly_pairs(field, table);
    for (std::uint32_t v = 2; v + 1 < q; ++v) {
      const Fe t1(v);
      if (!valid_t(field, t1) || t1 == z) continue;
      for (Fe t2 : family2_partners(field, t1)) {
        bool doubly = false;
        try {
          doubly = family2_doubly(field, t1, t2, &table);
        } catch (const std::logic_error& e) {
          criterion.check(false, [&] { return std::string(e.what()); });
          continue;
        }
        if (!doubly) continue;
        criterion.check(true, [] { return std::string(); });
        auto [c1, c2] = family2_twists(field, t1, t2);
        census.check(census_has(field, pairs, t1, c1, t2, c2),
                     [&] { return at(q, t1) + " missing from census"; });
      }
    }
  }
  return {relation.result(), claims.result(), criterion.result(), census.result()};
}

std::vector<PropertyResult> suite_intersection(const SuiteOptions& options) {
  Tally applicable("intersection", "construction_applies");
  Tally invariants("intersection", "invariants_are_roots");
  Tally svalues("intersection", "s_values_are_plus_minus_6_sqrt_minus_7");
  Tally flags("intersection", "flags_contain_F1_F2_F3_F123");
  Tally doubly("intersection", "isogenous_base_implies_doubly");
  for (std::uint32_t q : usable_primes(options)) {
    const PrimeField field = make_field(q);
    auto pair = intersection_construct(field);
    if (!pair) continue;
    applicable.check(true, [] { return std::string(); });
    auto [t1, t2] = *pair;
    const D4Curve z1 = from_t(field, t1, Fe(1)), z2 = from_t(field, t2, Fe(1));
    auto i1 = field(z1.invariant()), i2 = field(z2.invariant());
    invariants.check((i1 * i2 - 16).is_zero() && (16 * (i1 + i2) - 47).is_zero(),
                     [&] { return "q=" + std::to_string(q); });
    auto r = field(*sqrt_mod(field, field.reduce(-7)));
    svalues.check(field(z1.s()) == 6 * r && field(z2.s()) == -6 * r,
                  [&] { return "q=" + std::to_string(q); });
    FamilyFlags f = classify_pair(field, z1.invariant(), z2.invariant());
    const unsigned want = kFamily1 | kFamily2 | kFamily3 | kFamily123;
    flags.check((f.bits & want) == want, [&] { return "q=" + std::to_string(q) + " " + f.to_string(); });
    const LegendreTraceTable table(field);
    OrbitTraces a = orbit_traces(z1, &table), b = orbit_traces(z2, &table);
    if (a[0] == b[0]) {
      doubly.check(full_signature(a) == full_signature(b), [&] { return "q=" + std::to_string(q); });
    }
  }
  return {applicable.result(), invariants.result(), svalues.result(), flags.result(),
          doubly.result()};
}

// j-invariant formulas of the orbit factors in terms of t and of u.
struct OrbitJ {
  OrbitLabel label;
  Fe by_t, by_u;
};

std::vector<OrbitJ> orbit_j_formulas(const PrimeField& field, Fe t_value) {
  auto t = field(t_value), z = field(field.zeta());
  auto u = (t - t.inv()) / 2;
  auto cube = [](Elem x) { return x * x * x; };
  auto t2 = t * t, t4 = t2 * t2, u2 = u * u;
  std::vector<OrbitJ> out;
  out.push_back({OrbitLabel::O1,
                 (16 * cube(t4 * t4 + 14 * t4 + 1) / (t4 * t - t).pow(4)).value(),
                 (256 * cube(u2 * u2 + u2 + 1) / (u2 * u2 * (u2 + 1) * (u2 + 1))).value()});
  out.push_back({OrbitLabel::O2A,
                 (-16 * cube(t4 - 14 * t2 + 1) / (t2 * (t2 + 1).pow(4))).value(),
                 (-64 * cube(u2 - 3) / ((u2 + 1) * (u2 + 1))).value()});
  out.push_back({OrbitLabel::O2B,
                 (64 * cube(3 * t4 - 10 * t2 + 3) / ((t2 - 1) * (t2 - 1) * (t2 + 1).pow(4))).value(),
                 (64 * cube(3 * u2 - 1) / ((u2 * u + u) * (u2 * u + u))).value()});
  out.push_back({OrbitLabel::O2C, field.reduce(1728), field.reduce(1728)});
  for (int sign : {1, -1}) {
    auto zs = sign * z;  // 4A uses +zeta, 4B uses -zeta
    auto tp = t4 - 2 * zs * t2 * t - 6 * t2 + 2 * zs * t + 1;
    auto by_t = -64 * cube(tp) / ((t2 * t - t) * (t2 * t - t) * (t - zs).pow(4));
    auto up = u2 - zs * u - 1;
    auto by_u = -256 * cube(up) / ((u2 - zs * u) * (u2 - zs * u));
    for (OrbitLabel l : sign == 1 ? std::vector{OrbitLabel::O4A_first, OrbitLabel::O4A_second}
                                  : std::vector{OrbitLabel::O4B_first, OrbitLabel::O4B_second}) {
      out.push_back({l, by_t.value(), by_u.value()});
    }
  }
  auto base_t = 256 * cube(t4 - t2 + 1) / (t4 * (t2 - 1) * (t2 - 1));
  auto base_u = 64 * cube(4 * u2 + 1) / u2;
  out.push_back({OrbitLabel::E, base_t.value(), base_u.value()});
  return out;
}

std::vector<PropertyResult> suite_tables(const SuiteOptions& options) {
  Tally jt("tables", "j_matches_t_column");
  Tally ju("tables", "j_matches_u_column");
  Tally same_d("tables", "equal_d_gives_equal_trace");
  Tally twist("tables", "orbit_twists_are_plus_minus");
  Tally even("tables", "traces_even");
  Tally base("tables", "base_model_matches_cubic");
  for (std::uint32_t q : usable_primes(options)) {
    const PrimeField field = make_field(q);
    const LegendreTraceTable table(field);
    Sampler rng(options.seed, q);
    for (int k = 0; k < options.samples; ++k) {
      const Fe t = rng.valid_t(field);
      const Fe c = rng.below(2) ? field.nonresidue() : Fe(1);
      const D4Curve z = from_t(field, t, c);
      const auto models = orbit_table(z);
      for (const OrbitJ& entry : orbit_j_formulas(field, t)) {
        const auto it = std::find_if(models.begin(), models.end(),
                                     [&](const OrbitCurve& m) { return m.label == entry.label; });
        const Fe j = j_invariant(field, it->model);
        jt.check(j == entry.by_t, [&] { return at(q, t) + " orbit " + orbit_label_name(entry.label); });
        ju.check(j == entry.by_u, [&] { return at(q, t) + " orbit " + orbit_label_name(entry.label); });
      }
      const OrbitTraces traces = orbit_traces(z, &table);
      for (int i = 0; i < 16; ++i) {
        even.check(traces[i].value % 2 == 0, [&] { return at(q, t); });
        for (int j = i + 1; j < 16; ++j) {
          if (models[i].label == OrbitLabel::E || models[j].label == OrbitLabel::E) continue;
          const std::string a = orbit_label_name(models[i].label);
          const std::string b = orbit_label_name(models[j].label);
          if (a.substr(0, 2) != b.substr(0, 2)) continue;
          if (models[i].model == models[j].model) {
            same_d.check(traces[i] == traces[j], [&] { return at(q, t); });
          } else {
            twist.check(traces[i] == traces[j] || traces[i].value == -traces[j].value,
                        [&] { return at(q, t); });
          }
        }
      }
      auto x = field(z.s());
      auto k2 = field(c);
      const Trace cubic =
          trace_cubic(field, Cubic{c, (k2 * (x + 1)).value(), (k2 * (x + 1)).value(), c});
      base.check(cubic == traces[0], [&] { return at(q, t); });
    }
  }
  return {jt.result(), ju.result(), same_d.result(), twist.result(), even.result(), base.result()};
}

std::vector<TorsionSubgroup> all_subgroups() {
  std::set<std::uint16_t> seen;
  std::vector<TorsionSubgroup> out;
  const auto& pts = TwoTorsionPoint::all();
  std::function<void(std::vector<TwoTorsionPoint>&, int)> walk = [&](auto& gens, int from) {
    TorsionSubgroup h = TorsionSubgroup::span(gens);
    if (seen.insert(h.bits()).second) out.push_back(h);
    if (gens.size() == 4) return;
    for (int i = from; i < 16; ++i) {
      gens.push_back(pts[i]);
      walk(gens, i + 1);
      gens.pop_back();
    }
  };
  std::vector<TwoTorsionPoint> gens;
  walk(gens, 1);
  return out;
}

std::vector<PropertyResult> suite_weil(const SuiteOptions&) {
  Tally sym("weil", "symmetric");
  Tally alt("weil", "alternating");
  Tally bilinear("weil", "bilinear");
  Tally nondeg("weil", "nondegenerate");
  Tally perp_inv("weil", "perp_involution_and_order");
  Tally orbits("weil", "d4_orbit_partition");
  const auto& pts = TwoTorsionPoint::all();
  for (TwoTorsionPoint a : pts) {
    alt.check(weil_pairing(a, a) == 1, [&] { return a.to_string(); });
    for (TwoTorsionPoint b : pts) {
      sym.check(weil_pairing(a, b) == weil_pairing(b, a), [&] { return a.to_string(); });
      for (TwoTorsionPoint c : pts) {
        bilinear.check(weil_pairing(a + b, c) == weil_pairing(a, c) * weil_pairing(b, c),
                       [&] { return a.to_string() + b.to_string() + c.to_string(); });
      }
    }
  }
  nondeg.check(perp(TorsionSubgroup::zero()) == TorsionSubgroup::full(), [] { return "perp(0)"; });
  nondeg.check(perp(TorsionSubgroup::full()) == TorsionSubgroup::zero(), [] { return "perp(all)"; });
  for (const TorsionSubgroup& h : all_subgroups()) {
    const TorsionSubgroup o = perp(h);
    perp_inv.check(perp(o) == h && h.order() * o.order() == 16,
                   [&] { return "subgroup bits " + std::to_string(h.bits()); });
  }
  // sigma negates both roots, tau inverts both; orbits of <sigma, tau, zeta-swap>
  // are read off from the labels.
  using R = Root;
  auto act = [](TwoTorsionPoint p, const std::array<R, 6>& perm) {
    auto [a, b] = p.roots();
    return TwoTorsionPoint::pair(perm[static_cast<int>(a)], perm[static_cast<int>(b)]);
  };
  const std::array<R, 6> sigma = {R::minus_zeta, R::zeta, R::minus_t, R::t, R::minus_inv_t, R::inv_t};
  const std::array<R, 6> tau = {R::minus_zeta, R::zeta, R::inv_t, R::minus_inv_t, R::t, R::minus_t};
  std::map<std::string, std::set<int>> by_orbit;
  std::set<int> visited;
  std::vector<int> sizes;
  for (int i = 1; i < 16; ++i) {
    if (visited.count(i)) continue;
    std::set<int> orbit{i};
    std::vector<TwoTorsionPoint> frontier{pts[i]};
    while (!frontier.empty()) {
      TwoTorsionPoint p = frontier.back();
      frontier.pop_back();
      for (const auto* g : {&sigma, &tau}) {
        TwoTorsionPoint n = act(p, *g);
        if (orbit.insert(n.index()).second) frontier.push_back(n);
      }
    }
    visited.insert(orbit.begin(), orbit.end());
    sizes.push_back(static_cast<int>(orbit.size()));
    // Every member of one orbit carries the same orbit letter.
    std::set<std::string> letters;
    for (int k : orbit) {
      std::string name = orbit_label_name(orbit_label(pts[k]));
      letters.insert(name.substr(0, 2));
    }
    orbits.check(letters.size() == 1, [&] { return pts[i].to_string(); });
  }
  std::sort(sizes.begin(), sizes.end());
  orbits.check(sizes == std::vector<int>{1, 2, 2, 2, 4, 4}, [] { return "orbit sizes"; });
  return {sym.result(), alt.result(), bilinear.result(), nondeg.result(), perp_inv.result(),
          orbits.result()};
}

std::vector<PropertyResult> suite_isogeny(const SuiteOptions& options) {
  Tally image("isogeny", "image_on_other_model");
  Tally traces("isogeny", "equal_traces_across_isogeny");
  Tally phi2("isogeny", "phi2_vanishes_on_isogeny_pair");
  Tally kernel("isogeny", "kernel_point_rejected");
  Tally roundtrip("isogeny", "mu_roundtrip_identity");
  Tally counts("isogeny", "genus2_count_is_q_plus_1_minus_2_trace");
  Tally models("isogeny", "other_model_equal_counts");
  for (std::uint32_t q : usable_primes(options)) {
    const PrimeField field = make_field(q);
    Sampler rng(options.seed, q);
    for (int k = 0; k < options.samples; ++k) {
      Fe s(rng.below(q));
      if (s.v == 2 || s.v == q - 2) continue;
      const Fe c = rng.below(2) ? field.nonresidue() : Fe(1);
      const Model other = other_model(field, s, c);
      auto sv = field(s), kc = field(c);
      const Cubic e{c, (kc * (sv + 1)).value(), (kc * (sv + 1)).value(), c};
      auto so = field(other.s);
      auto k2 = 2 * kc * (sv + 2);
      const Cubic eo{k2.value(), (k2 * (so + 1)).value(), (k2 * (so + 1)).value(), k2.value()};
      const Trace te = trace_cubic(field, e);
      traces.check(te == trace_cubic(field, eo), [&] { return "q=" + std::to_string(q); });
      phi2.check(modular_check(field, 2, j_invariant(field, e), j_invariant(field, eo)),
                 [&] { return "q=" + std::to_string(q) + " s=" + std::to_string(s.v); });
      for (int attempt = 0; attempt < 8; ++attempt) {
        auto x = field(Fe(rng.below(q)));
        if (x == -1) continue;
        auto rhs = kc * (x + 1) * (x * x + sv * x + 1);
        auto y = sqrt_mod(field, rhs.value());
        if (!y) continue;
        auto [xi, yi] = two_isogeny_image(field, s, c, x.value(), *y);
        auto px = field(xi);
        auto lhs = field(yi) * field(yi);
        image.check(lhs == k2 * (px + 1) * (px * px + so * px + 1),
                    [&] { return "q=" + std::to_string(q) + " x=" + std::to_string(x.raw()); });
        break;
      }
      bool rejected = false;
      try {
        two_isogeny_image(field, s, c, field.reduce(-1), Fe(0));
      } catch (const EcError& err) {
        rejected = err.code() == EcErrc::kernel_point;
      }
      kernel.check(rejected, [] { return "(-1,0) accepted"; });
      const Fe scale(1 + rng.below(q - 1));
      roundtrip.check(mu_roundtrip(field, s, c, scale) == Model{s, c},
                      [&] { return "q=" + std::to_string(q) + " s=" + std::to_string(s.v); });
      const std::int64_t n = genus2_count(field, c, s);
      counts.check(n == static_cast<std::int64_t>(q) + 1 - 2 * te.value,
                   [&] { return "q=" + std::to_string(q) + " s=" + std::to_string(s.v); });
      models.check(n == genus2_count(field, other.c, other.s),
                   [&] { return "q=" + std::to_string(q) + " s=" + std::to_string(s.v); });
    }
  }
  return {image.result(),     traces.result(), phi2.result(),  kernel.result(),
          roundtrip.result(), counts.result(), models.result()};
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"family1", "family2", "intersection",
                                                 "tables",  "weil",    "isogeny"};
  return names;
}

std::vector<PropertyResult> run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "family1") return suite_family1(options);
  if (name == "family2") return suite_family2(options);
  if (name == "intersection") return suite_intersection(options);
  if (name == "tables") return suite_tables(options);
  if (name == "weil") return suite_weil(options);
  if (name == "isogeny") return suite_isogeny(options);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace isocensus
