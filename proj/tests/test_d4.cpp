#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "isocensus/d4.hpp"
#include "isocensus/ec.hpp"

using namespace isocensus;

namespace {

TwoTorsionPoint P(Root a, Root b) { return TwoTorsionPoint::pair(a, b); }

// Prym trace from the genus-one quartic y^2 = k prod_{r not in {u, v}} (x - r),
// with k read off from the sextic at zeta.
int quartic_prym_trace(const D4Curve& z, TwoTorsionPoint p) {
  const PrimeField& f = z.field();
  const auto [u, v] = p.roots();
  std::vector<Fe> rest;
  for (int i = 0; i < 6; ++i) {
    auto r = static_cast<Root>(i);
    if (r != u && r != v) rest.push_back(z.root(r));
  }
  auto zeta = f(z.root(Root::zeta));
  auto k = f(1);
  if (u == Root::zeta || v == Root::zeta) {
    for (Fe r : rest) k = k * (zeta - f(r));
  } else {
    k = f(z.c()) * (zeta - f(z.root(u))) * (zeta - f(z.root(v)));
  }
  int sum = 0;
  for (std::uint32_t x = 0; x < f.q(); ++x) {
    auto g = k;
    for (Fe r : rest) g = g * (f(Fe(x)) - f(r));
    sum += g.chi();
  }
  return -sum - k.chi();
}

}  // namespace

TEST(D4Curve, GoldenParameters) {
  const PrimeField f = make_field(113);
  EXPECT_EQ(from_t(f, Fe(107), Fe(1)).s(), Fe(55));
  EXPECT_EQ(from_t(f, Fe(23), Fe(1)).s(), Fe(58));
  EXPECT_EQ(invariant_I(f, Fe(55)), Fe(8));
  EXPECT_EQ(invariant_I(f, Fe(58)), Fe(2));
  const D4Curve z = from_t(f, Fe(107), Fe(1));
  EXPECT_EQ(trace_legendre(f, base_curve(z)).value, 6);
  EXPECT_EQ(prym_model(z, P(Root::zeta, Root::minus_zeta)).lambda, Fe(98));
}

TEST(D4Curve, RejectsDegenerateInput) {
  const PrimeField f = make_field(13);
  for (std::uint32_t t : {0u, 1u, 12u, 5u, 8u}) {
    EXPECT_FALSE(valid_t(f, Fe(t)));
    EXPECT_THROW(from_t(f, Fe(t), Fe(1)), D4Error) << t;
  }
  EXPECT_THROW(from_t(f, Fe(3), Fe(3)), D4Error);
  EXPECT_THROW(invariant_I(f, Fe(2)), D4Error);
  EXPECT_THROW(invariant_I(f, Fe(11)), D4Error);
}

TEST(D4Curve, InvariantAtMinusSix) {
  for (std::uint32_t q : {13u, 17u, 101u, 8009u}) {
    const PrimeField f = make_field(q);
    EXPECT_EQ(invariant_I(f, f.reduce(-6)), Fe(4));
    EXPECT_EQ(other_model(f, f.reduce(-6), Fe(1)).s, f.reduce(-6));
  }
}

TEST(D4Curve, OtherModel) {
  const PrimeField f = make_field(113);
  const Model m = other_model(f, Fe(55), Fe(1));
  EXPECT_EQ(f.mul(f.add(m.s, Fe(2)), Fe(57)), Fe(16));
  for (std::uint32_t s = 0; s < 113; ++s) {
    if (s == 2 || s == 111) continue;
    for (Fe c : {Fe(1), f.nonresidue()}) {
      const Model once = other_model(f, Fe(s), c);
      EXPECT_EQ(other_model(f, once.s, once.c), (Model{Fe(s), c}));
      EXPECT_EQ(invariant_I(f, once.s), invariant_I(f, Fe(s)));
    }
  }
}

TEST(D4Curve, CanonicalizationIsOrbitInvariant) {
  for (std::uint32_t q : {13u, 113u, 1009u}) {
    const PrimeField f = make_field(q);
    for (std::uint32_t t = 2; t < q - 1; ++t) {
      if (!valid_t(f, Fe(t))) continue;
      const auto orbit = t_orbit(f, Fe(t));
      const Fe canon = canonical_t(f, Fe(t));
      const Fe inv = from_t(f, Fe(t), Fe(1)).invariant();
      for (Fe other : orbit) {
        ASSERT_EQ(canonical_t(f, other), canon);
        ASSERT_EQ(from_t(f, other, Fe(1)).invariant(), inv);
      }
      ASSERT_EQ(canonical_t(f, canon), canon);
      const CurveClass k = canonical_class(f, Fe(t), Fe(1));
      ASSERT_EQ(k.t, canon);
      ASSERT_EQ(canonical_class(f, k.t, k.c), k);
    }
  }
}

TEST(D4Curve, CanonicalClassPreservesIsomorphismType) {
  // Both members of a class have equal genus-2 point counts.
  const PrimeField f = make_field(61);
  for (std::uint32_t t = 2; t < 60; ++t) {
    if (!valid_t(f, Fe(t))) continue;
    for (Fe c : {Fe(1), f.nonresidue()}) {
      const CurveClass k = canonical_class(f, Fe(t), c);
      ASSERT_EQ(genus2_count(f, c, s_from_t(f, Fe(t))), genus2_count(f, k.c, s_from_t(f, k.t)));
    }
  }
}

TEST(TwoTorsion, WeilPairingExamples) {
  EXPECT_EQ(
      weil_pairing(P(Root::zeta, Root::minus_zeta), P(Root::t, Root::minus_inv_t)), 1);
  EXPECT_EQ(weil_pairing(P(Root::zeta, Root::t), P(Root::zeta, Root::minus_t)), -1);
}

TEST(TwoTorsion, GroupStructure) {
  const auto& pts = TwoTorsionPoint::all();
  EXPECT_TRUE(pts[0].is_zero());
  std::set<int> masks;
  for (const auto& p : pts) {
    masks.insert(p.mask());
    EXPECT_EQ(pts[p.index()], p);
    EXPECT_TRUE((p + p).is_zero());
  }
  EXPECT_EQ(masks.size(), 16u);
  // [W_a - W_b] + [W_b - W_c] = [W_a - W_c]
  EXPECT_EQ(P(Root::zeta, Root::t) + P(Root::t, Root::inv_t), P(Root::zeta, Root::inv_t));
  EXPECT_THROW(P(Root::t, Root::t), std::invalid_argument);
}

TEST(TwoTorsion, Subgroups) {
  const TorsionSubgroup h = one_minus_rho_kernel();
  EXPECT_EQ(h.order(), 4);
  EXPECT_EQ(perp(h), h);
  EXPECT_EQ(h, TorsionSubgroup::span({P(Root::zeta, Root::minus_zeta), P(Root::t, Root::minus_inv_t)}));
  EXPECT_EQ(perp(TorsionSubgroup::zero()), TorsionSubgroup::full());
  EXPECT_EQ(perp(TorsionSubgroup::full()), TorsionSubgroup::zero());
  const TorsionSubgroup order2 = TorsionSubgroup::span({P(Root::t, Root::minus_t)});
  EXPECT_EQ(perp(order2).order(), 8);
  EXPECT_THROW(TorsionSubgroup::from_points({TwoTorsionPoint::zero(), P(Root::t, Root::minus_t),
                                             P(Root::zeta, Root::t)}),
               D4Error);
}

TEST(OrbitTable, MatchesQuarticPrymModel) {
  std::mt19937 rng(7);
  for (std::uint32_t q : {13u, 17u, 29u, 37u, 41u, 53u, 61u, 73u, 89u, 97u, 101u, 113u}) {
    const PrimeField f = make_field(q);
    for (int k = 0; k < 6; ++k) {
      Fe t(2 + rng() % (q - 3));
      if (!valid_t(f, t)) continue;
      for (Fe c : {Fe(1), f.nonresidue()}) {
        const D4Curve z = from_t(f, t, c);
        const OrbitTraces traces = orbit_traces(z);
        for (int i = 1; i < 16; ++i) {
          ASSERT_EQ(traces[i].value, quartic_prym_trace(z, TwoTorsionPoint::all()[i]))
              << "q=" << q << " t=" << t.v << " c=" << c.v << " point "
              << TwoTorsionPoint::all()[i].to_string();
        }
        ASSERT_EQ(traces[0], trace_legendre(f, base_curve(z)));
      }
    }
  }
}

TEST(OrbitTable, LabelsAndTableOrder) {
  const PrimeField f = make_field(113);
  const D4Curve z = from_t(f, Fe(107), Fe(1));
  const auto table = orbit_table(z);
  EXPECT_EQ(table[0].label, OrbitLabel::E);
  std::map<OrbitLabel, int> count;
  for (int i = 1; i < 16; ++i) {
    ASSERT_TRUE(table[i].point.has_value());
    EXPECT_EQ(table[i].point->index(), i);
    ++count[table[i].label];
  }
  EXPECT_EQ(count[OrbitLabel::O1], 1);
  EXPECT_EQ(count[OrbitLabel::O2A], 2);
  EXPECT_EQ(count[OrbitLabel::O2B], 2);
  EXPECT_EQ(count[OrbitLabel::O2C], 2);
  EXPECT_EQ(count[OrbitLabel::O4A_first] + count[OrbitLabel::O4A_second], 4);
  EXPECT_EQ(count[OrbitLabel::O4B_first] + count[OrbitLabel::O4B_second], 4);
  EXPECT_EQ(orbit_label(P(Root::t, Root::minus_inv_t)), OrbitLabel::O2C);
  EXPECT_EQ(prym_model(z, P(Root::t, Root::minus_inv_t)).lambda, f.reduce(-1));
}

TEST(Signature, CoverSignatures) {
  const PrimeField f = make_field(113);
  const D4Curve z1 = from_t(f, Fe(107), Fe(1));
  const D4Curve z2 = from_t(f, Fe(23), Fe(1));
  const OrbitTraces tr = orbit_traces(z1);
  EXPECT_EQ(full_signature(z1), full_signature(z2));
  EXPECT_EQ(full_signature(tr).size(), 17u);
  EXPECT_EQ(cover_signature(tr, TorsionSubgroup::full()),
            CoverSignature({tr[0], tr[0]}));
  const int o1 = P(Root::zeta, Root::minus_zeta).index();
  const int o2c = P(Root::t, Root::minus_inv_t).index();
  const int o2c_other = P(Root::minus_t, Root::inv_t).index();
  EXPECT_EQ(cover_signature(tr, one_minus_rho_kernel()),
            CoverSignature({tr[0], tr[0], tr[o1], tr[o2c], tr[o2c_other]}));
  EXPECT_TRUE(cover_signature(tr, TorsionSubgroup::full())
                  .is_submultiset_of(cover_signature(tr, one_minus_rho_kernel())));
  const CoverSignature full = full_signature(tr);
  for (const Trace& t : full.traces()) EXPECT_EQ(t.value % 2, 0);
}

TEST(PointedCubic, RoundTripAndIsogeny) {
  const PrimeField f = make_field(101);
  for (std::uint32_t s = 0; s < 101; ++s) {
    if (s == 2 || s == 99) continue;
    for (Fe c : {Fe(1), f.nonresidue()}) {
      for (std::uint32_t scale : {1u, 2u, 17u}) {
        ASSERT_EQ(mu_roundtrip(f, Fe(s), c, Fe(scale)), (Model{Fe(s), c}));
      }
    }
  }
  EXPECT_THROW(two_isogeny_image(f, Fe(3), Fe(1), f.reduce(-1), Fe(0)), EcError);
  EXPECT_THROW(two_isogeny_image(f, Fe(2), Fe(1), Fe(0), Fe(1)), D4Error);
}
