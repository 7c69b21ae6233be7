#include <gtest/gtest.h>

#include <set>

#include "isocensus/ff.hpp"

using namespace isocensus;

TEST(PrimeField, ZetaAndNonresidue) {
  const PrimeField f13 = make_field(13);
  EXPECT_EQ(f13.zeta(), Fe(5));
  EXPECT_EQ(f13.nonresidue(), Fe(2));
  const PrimeField f5 = make_field(5);
  EXPECT_EQ(f5.zeta(), Fe(2));
  EXPECT_EQ(f5.nonresidue(), Fe(2));
  EXPECT_EQ(make_field(113).zeta(), Fe(15));
}

TEST(PrimeField, RejectsBadModuli) {
  auto code_of = [](std::uint32_t q) {
    try {
      make_field(q);
    } catch (const FieldError& e) {
      return static_cast<int>(e.code());
    }
    return -1;
  };
  EXPECT_EQ(code_of(7), static_cast<int>(FieldErrc::not_one_mod_four));
  EXPECT_EQ(code_of(16), static_cast<int>(FieldErrc::even_modulus));
  EXPECT_EQ(code_of(25), static_cast<int>(FieldErrc::composite_modulus));
  EXPECT_NO_THROW(make_odd_field(7));
  EXPECT_FALSE(make_odd_field(7).has_zeta());
  EXPECT_THROW(make_odd_field(7).zeta(), std::logic_error);
}

TEST(PrimeField, Legendre) {
  const PrimeField f = make_field(13);
  EXPECT_EQ(legendre(f, Fe(1)), 1);
  EXPECT_EQ(legendre(f, Fe(0)), 0);
  EXPECT_EQ(legendre(f, Fe(2)), -1);
}

TEST(PrimeField, LegendreMatchesSquaresTable) {
  for (std::uint32_t q : primes_in_range(3, 200, false)) {
    const PrimeField f = make_odd_field(q);
    std::set<std::uint32_t> squares;
    for (std::uint32_t x = 1; x < q; ++x) squares.insert(x * x % q);
    for (std::uint32_t a = 1; a < q; ++a) {
      ASSERT_EQ(f.chi(Fe(a)), squares.count(a) ? 1 : -1) << q << ' ' << a;
    }
    ASSERT_EQ(f.chi(Fe(0)), 0);
  }
}

TEST(PrimeField, SqrtMod) {
  EXPECT_EQ(sqrt_mod(make_field(113), Fe(106)), Fe(28));
  EXPECT_EQ(sqrt_mod(make_field(13), Fe(0)), Fe(0));
  EXPECT_FALSE(sqrt_mod(make_field(13), Fe(2)).has_value());
  for (std::uint32_t q : {3u, 7u, 13u, 97u, 65537u, 1000003u}) {
    const PrimeField f = make_odd_field(q);
    for (std::uint32_t a = 1; a < std::min<std::uint32_t>(q, 500); ++a) {
      auto r = sqrt_mod(f, Fe(a));
      ASSERT_EQ(r.has_value(), f.chi(Fe(a)) == 1);
      if (r) {
        ASSERT_EQ(f.mul(*r, *r), Fe(a));
        ASSERT_LE(r->v, q - r->v);
      }
    }
  }
}

TEST(PrimeField, ElemArithmetic) {
  const PrimeField f = make_field(101);
  auto a = f(7), b = f(-3);
  EXPECT_EQ((a * b).raw(), 80u);
  EXPECT_EQ((a / b * b), a);
  EXPECT_EQ(a.inv() * a, 1);
  EXPECT_EQ(f(2).pow(100), 1);
  EXPECT_EQ((a / 7), 1);
  EXPECT_THROW(f.inv(Fe(0)), std::domain_error);
  EXPECT_EQ(f.square_class(Fe(4)), Fe(1));
  EXPECT_EQ(f.square_class(f.nonresidue()), f.nonresidue());
}

TEST(PrimeField, PrimesInRange) {
  EXPECT_EQ(primes_in_range(3, 30, false),
            (std::vector<std::uint32_t>{3, 5, 7, 11, 13, 17, 19, 23, 29}));
  EXPECT_EQ(primes_in_range(3, 30, true), (std::vector<std::uint32_t>{5, 13, 17, 29}));
  EXPECT_TRUE(is_prime(2147483647ull));
  EXPECT_FALSE(is_prime(3215031751ull));
}
