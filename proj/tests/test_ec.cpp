#include <gtest/gtest.h>

#include <cmath>

#include "isocensus/ec.hpp"
#include "isocensus/ff.hpp"

using namespace isocensus;

namespace {

// Affine solutions (x, y) of y^2 = g(x), by squaring every y.
template <class Poly>
std::int64_t naive_affine(std::uint32_t q, Poly g) {
  std::vector<int> roots_of(q, 0);
  for (std::uint64_t y = 0; y < q; ++y) ++roots_of[y * y % q];
  std::int64_t n = 0;
  for (std::uint64_t x = 0; x < q; ++x) n += roots_of[g(x)];
  return n;
}

int naive_legendre_trace(std::uint32_t q, std::uint64_t d, std::uint64_t lambda) {
  const std::int64_t affine = naive_affine(q, [&](std::uint64_t x) {
    return d * x % q * ((x + q - 1) % q) % q * ((x + q - lambda) % q) % q;
  });
  return static_cast<int>(q + 1 - (affine + 1));
}

}  // namespace

TEST(Trace, SmallExamples) {
  const PrimeField f5 = make_field(5);
  EXPECT_EQ(trace_legendre(f5, {Fe(1), Fe(4)}).value, -2);
  EXPECT_EQ(trace_cubic(f5, {Fe(1), Fe(0), Fe(4), Fe(0)}).value, -2);
}

TEST(Trace, LegendreMatchesNaiveEnumeration) {
  for (std::uint32_t q : primes_in_range(3, 61, false)) {
    const PrimeField f = make_odd_field(q);
    for (std::uint32_t d = 1; d < q; ++d) {
      for (std::uint32_t lam = 2; lam < q; ++lam) {
        ASSERT_EQ(trace_legendre(f, {Fe(d), Fe(lam)}).value, naive_legendre_trace(q, d, lam))
            << "q=" << q << " d=" << d << " lambda=" << lam;
      }
    }
  }
}

TEST(Trace, TableMatchesDirectSums) {
  for (std::uint32_t q : {5u, 13u, 101u, 1009u, 4001u}) {
    const PrimeField f = make_field(q);
    const LegendreTraceTable table(f);
    for (std::uint32_t lam = 2; lam < q; lam += 1 + q / 200) {
      for (Fe d : {Fe(1), f.nonresidue()}) {
        ASSERT_EQ(table.trace({d, Fe(lam)}), trace_legendre(f, {d, Fe(lam)})) << q << ' ' << lam;
      }
    }
  }
}

TEST(Trace, SingularModelsRejected) {
  const PrimeField f = make_field(13);
  EXPECT_THROW(trace_legendre(f, {Fe(1), Fe(1)}), EcError);
  EXPECT_THROW(trace_legendre(f, {Fe(1), Fe(0)}), EcError);
  EXPECT_THROW(trace_legendre(f, {Fe(0), Fe(3)}), EcError);
  EXPECT_THROW(trace_cubic(f, {Fe(1), Fe(0), Fe(0), Fe(0)}), EcError);
}

TEST(Trace, CubicScalingAndTwist) {
  const PrimeField f = make_field(113);
  const Cubic e{Fe(1), Fe(56), Fe(56), Fe(1)};  // (x+1)(x^2+55x+1)
  EXPECT_EQ(trace_cubic(f, e).value, 6);
  auto scaled = [&](Fe k) {
    return Cubic{f.mul(k, e.a3), f.mul(k, e.a2), f.mul(k, e.a1), f.mul(k, e.a0)};
  };
  EXPECT_EQ(trace_cubic(f, scaled(Fe(49))).value, 6);
  EXPECT_EQ(trace_cubic(f, scaled(f.nonresidue())).value, -6);
  EXPECT_TRUE(within_hasse(113, Trace(21)));
  EXPECT_FALSE(within_hasse(113, Trace(22)));
}

TEST(Trace, Genus2CountMatchesBruteForce) {
  for (std::uint32_t q : {13u, 29u, 113u}) {
    const PrimeField f = make_field(q);
    for (std::uint32_t s = 0; s < q; ++s) {
      if (s == 2 || s == q - 2) continue;
      for (Fe c : {Fe(1), f.nonresidue()}) {
        const std::uint64_t cv = c.v;
        std::int64_t n = naive_affine(q, [&](std::uint64_t x) {
          const std::uint64_t x2 = x * x % q;
          return cv * ((x2 + 1) % q) % q * ((x2 * x2 + s * x2 + 1) % q) % q;
        });
        n += 1 + f.chi(c);  // two points at infinity when c is a square
        ASSERT_EQ(genus2_count(f, c, Fe(s)), n) << q << ' ' << s;
      }
    }
  }
  EXPECT_EQ(genus2_count(make_field(113), Fe(1), Fe(55)), 102);
}

TEST(JInvariant, Examples) {
  const PrimeField f = make_field(101);
  EXPECT_EQ(j_invariant(f, LegendreCurve{Fe(1), f.reduce(-1)}), Fe(1728 % 101));
  EXPECT_EQ(j_invariant(f, LegendreCurve{Fe(1), Fe(2)}), Fe(1728 % 101));
  for (std::uint32_t lam = 2; lam < 101; ++lam) {
    EXPECT_EQ(j_invariant(f, LegendreCurve{Fe(1), Fe(lam)}),
              j_invariant(f, LegendreCurve{Fe(3), f.sub(Fe(1), Fe(lam))}));
  }
  // x(x-1)(x-4) as a cubic has the same j as its Legendre form.
  const LegendreCurve leg{Fe(1), Fe(4)};
  const Cubic cub{Fe(1), f.reduce(-5), Fe(4), Fe(0)};
  EXPECT_EQ(j_invariant(f, leg), j_invariant(f, cub));
}

TEST(Isogenous, Examples) {
  EXPECT_TRUE(is_isogenous(Trace(6), Trace(6)));
  EXPECT_FALSE(is_isogenous(Trace(4), Trace(-4)));
  EXPECT_TRUE(is_isogenous(Trace(0), Trace(0)));
}
