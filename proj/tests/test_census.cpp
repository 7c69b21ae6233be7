#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "isocensus/census.hpp"

using namespace isocensus;

namespace {

using Sextic = std::array<std::uint32_t, 7>;  // coefficient of X^i Z^(6-i)

std::vector<std::uint64_t> poly_mul(const std::vector<std::uint64_t>& a,
                                    const std::vector<std::uint64_t>& b, std::uint64_t q) {
  std::vector<std::uint64_t> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % q;
  return r;
}

// Smallest sextic in the orbit under X -> aX + bZ, Z -> cX + dZ and square scalings.
Sextic gl2_canonical(const Sextic& f, std::uint32_t q) {
  std::vector<std::uint64_t> squares;
  for (std::uint64_t e = 1; e < q; ++e) squares.push_back(e * e % q);
  std::sort(squares.begin(), squares.end());
  squares.erase(std::unique(squares.begin(), squares.end()), squares.end());
  Sextic best;
  best.fill(q);
  for (std::uint64_t a = 0; a < q; ++a)
    for (std::uint64_t b = 0; b < q; ++b)
      for (std::uint64_t c = 0; c < q; ++c)
        for (std::uint64_t d = 0; d < q; ++d) {
          if ((a * d + q * q - b * c) % q == 0) continue;
          std::vector<std::uint64_t> g(7, 0);
          for (int i = 0; i < 7; ++i) {
            if (f[i] == 0) continue;
            std::vector<std::uint64_t> p{1};
            for (int k = 0; k < i; ++k) p = poly_mul(p, {b, a}, q);
            for (int k = 0; k < 6 - i; ++k) p = poly_mul(p, {d, c}, q);
            for (int k = 0; k < 7; ++k) g[k] = (g[k] + f[i] * p[k]) % q;
          }
          for (std::uint64_t e : squares) {
            Sextic h;
            for (int k = 0; k < 7; ++k) h[k] = static_cast<std::uint32_t>(e * g[k] % q);
            best = std::min(best, h);
          }
        }
  return best;
}

int naive_cubic_trace(std::uint32_t q, std::uint64_t c, std::uint64_t s) {
  std::vector<int> roots_of(q, 0);
  for (std::uint64_t y = 0; y < q; ++y) ++roots_of[y * y % q];
  std::int64_t n = 1;
  for (std::uint64_t x = 0; x < q; ++x) n += roots_of[c * ((x + 1) % q) % q * ((x * x + s * x + 1) % q) % q];
  return static_cast<int>(q + 1 - n);
}

struct BruteCensus {
  std::int64_t classes = 0;
  std::int64_t pairs = 0;
};

BruteCensus brute_census(std::uint32_t q) {
  const PrimeField f = make_odd_field(q);
  std::map<Sextic, int> trace_of_class;
  for (std::uint32_t s = 0; s < q; ++s) {
    if (s == 2 || s == q - 2) continue;
    for (std::uint32_t c : {1u, f.nonresidue().v}) {
      const std::uint32_t cs = static_cast<std::uint32_t>(std::uint64_t(c) * ((s + 1) % q) % q);
      const Sextic sextic{c, 0, cs, 0, cs, 0, c};
      const Sextic key = gl2_canonical(sextic, q);
      const int tr = naive_cubic_trace(q, c, s);
      auto [it, inserted] = trace_of_class.emplace(key, tr);
      EXPECT_EQ(it->second, tr) << "trace not constant on a class, q=" << q;
    }
  }
  std::map<int, std::int64_t> by_trace;
  for (const auto& [key, tr] : trace_of_class) ++by_trace[tr];
  BruteCensus out;
  out.classes = static_cast<std::int64_t>(trace_of_class.size());
  for (const auto& [tr, m] : by_trace) out.pairs += m * (m - 1) / 2;
  return out;
}

auto pair_key(const PairRecord& p) {
  return std::make_tuple(p.first, p.second, p.t1, p.c1, p.t2, p.c2, p.kind, p.flags.bits);
}

}  // namespace

TEST(Pq, KnownValues) {
  const std::map<std::uint32_t, std::int64_t> known{{3, 0}, {5, 0}, {7, 0}, {11, 3}, {13, 6}};
  for (const auto& [q, p] : known) EXPECT_EQ(compute_Pq(make_odd_field(q)).pairs, p) << q;
}

TEST(Pq, MatchesGl2BruteForce) {
  for (std::uint32_t q : {3u, 5u, 7u, 11u, 13u}) {
    const BruteCensus brute = brute_census(q);
    const PqResult r = compute_Pq(make_odd_field(q));
    EXPECT_EQ(r.num_classes, brute.classes) << q;
    EXPECT_EQ(r.pairs, brute.pairs) << q;
    EXPECT_EQ(expected_class_count(q), brute.classes) << q;
  }
}

TEST(Pq, FastSweepMatchesReference) {
  for (std::uint32_t q : primes_in_range(3, 400, false)) {
    const PrimeField f = make_odd_field(q);
    const PqResult fast = compute_Pq(f);
    const PqResult ref = compute_Pq_reference(f);
    ASSERT_EQ(fast.pairs, ref.pairs) << q;
    ASSERT_EQ(fast.histogram, ref.histogram) << q;
    ASSERT_EQ(fast.num_classes, ref.num_classes) << q;
    ASSERT_EQ(fast.num_classes, expected_class_count(q)) << q;
  }
}

TEST(Pq, ClassCountFormulas) {
  // -2 is a square mod 11 (3^2 = 9), not mod 13.
  EXPECT_EQ(expected_class_count(11), 10);
  EXPECT_EQ(expected_class_count(13), 11);
  EXPECT_EQ(stated_class_count(11), 8);
  EXPECT_EQ(stated_class_count(13), 11);
}

TEST(Records, EnumerationIsCanonicalAndDeterministic) {
  const PrimeField f = make_field(1009);
  const LegendreTraceTable table(f);
  const auto one = enumerate_rw(f, &table, 1);
  const auto four = enumerate_rw(f, &table, 4);
  const auto direct = enumerate_rw(f, nullptr, 1);
  ASSERT_EQ(one.size(), four.size());
  ASSERT_EQ(one.size(), direct.size());
  std::set<CurveClass> seen;
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].signature, four[i].signature);
    EXPECT_EQ(one[i].signature, direct[i].signature);
    EXPECT_EQ(canonical_t(f, one[i].t), one[i].t);
    EXPECT_TRUE(seen.insert({one[i].t, one[i].c}).second);
    if (i > 0) EXPECT_TRUE(one[i - 1] < one[i]);
  }
}

TEST(Pairs, FindPairsMatchesBruteForce) {
  const std::vector<PairMode> modes{PairMode::isogenous(), PairMode::doubly(),
                                    PairMode::one_minus_rho()};
  for (std::uint32_t q : primes_in_range(5, 61, true)) {
    const PrimeField f = make_field(q);
    const auto records = enumerate_rw(f);
    for (const PairMode& mode : modes) {
      const auto fast = find_pairs(f, records, mode);
      const auto slow = find_pairs_bruteforce(f, records, mode);
      ASSERT_EQ(fast.size(), slow.size()) << q << ' ' << mode.name;
      for (std::size_t i = 0; i < fast.size(); ++i) ASSERT_EQ(pair_key(fast[i]), pair_key(slow[i]));
    }
  }
}

TEST(Pairs, GoldenPairAt113) {
  const PrimeField f = make_field(113);
  const PrimeCensus census = census_prime(f);
  const CurveClass a = canonical_class(f, Fe(107), Fe(1));
  const CurveClass b = canonical_class(f, Fe(23), Fe(1));
  bool found = false;
  for (const PairRecord& p : census.doubly) {
    const CurveClass x{p.t1, p.c1}, y{p.t2, p.c2};
    if ((x == a && y == b) || (x == b && y == a)) {
      found = true;
      EXPECT_EQ(p.flags.to_string(), "F1+F2+F3+F123");
      EXPECT_EQ(p.kind, "doubly_isogenous");
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(census.delta.total, static_cast<std::int64_t>(census.doubly.size()));
}

TEST(Pairs, DoublyImpliesIsogenous) {
  const PrimeField f = make_field(1009);
  const auto records = enumerate_rw(f);
  const auto doubly = find_pairs(f, records, PairMode::doubly());
  for (const PairRecord& p : doubly) {
    EXPECT_EQ(records[p.first].trace_E, records[p.second].trace_E);
    EXPECT_EQ(records[p.first].signature, records[p.second].signature);
  }
}

TEST(Families, ClassifyPair) {
  const PrimeField f = make_field(113);
  const FamilyFlags golden = classify_pair(f, Fe(8), Fe(2));
  EXPECT_EQ(golden.to_string(), "F1+F2+F3+F123");
  EXPECT_TRUE(classify_pair(f, Fe(1), Fe(1)).has(kFamily1));
  EXPECT_TRUE(classify_pair(f, Fe(4), Fe(4)).has(kFamily2));
  EXPECT_EQ(FamilyFlags{}.to_string(), "NONE");
}

TEST(Families, DeltaBreakdown) {
  std::vector<PairRecord> pairs(3);
  pairs[0].flags.bits = kFamily1 | kFamily2;
  pairs[2].flags.bits = kFamily4;
  const DeltaBreakdown d = delta_breakdown(pairs);
  EXPECT_EQ(d.total, 3);
  EXPECT_EQ(d.none, 1);
  EXPECT_EQ(d.family1, 1);
  EXPECT_EQ(d.family2, 1);
  EXPECT_EQ(d.family3, 0);
  EXPECT_EQ(d.family4, 1);
  EXPECT_EQ(d.flagged(), 2);
}

TEST(Stats, RangeStats) {
  const RangeStats one = range_stats({{11, 3}});
  EXPECT_DOUBLE_EQ(one.mean, 3 / std::pow(11.0, 1.5));
  EXPECT_DOUBLE_EQ(one.min, one.max);
  EXPECT_DOUBLE_EQ(one.stddev, 0.0);
  const RangeStats two = range_stats({{11, 3}, {13, 6}});
  const double a = 3 / std::pow(11.0, 1.5), b = 6 / std::pow(13.0, 1.5);
  EXPECT_NEAR(two.mean, (a + b) / 2, 1e-15);
  EXPECT_NEAR(two.stddev, std::abs(a - b) / 2, 1e-15);
  EXPECT_THROW(range_stats({}), std::invalid_argument);
}

TEST(Stats, PrimesNearest) {
  const auto near = primes_nearest(8192, 4, false);
  EXPECT_EQ(near, (std::vector<std::uint32_t>{8171, 8179, 8191, 8209}));
  for (std::uint32_t q : primes_nearest(8192, 10, true)) EXPECT_EQ(q % 4, 1u);
}
