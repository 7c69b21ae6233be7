#pragma once

// Per-prime censuses: isogenous pairs among all D4 curves, doubly and
// H-isogenous pairs among curves with rational Weierstrass points, family
// breakdowns, and summary statistics over ranges of primes.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isocensus/d4.hpp"
#include "isocensus/ec.hpp"
#include "isocensus/ff.hpp"

namespace isocensus {

struct PqResult {
  std::uint32_t q = 0;
  std::map<int, std::int64_t> histogram;  // trace of E -> number of classes
  std::int64_t pairs = 0;                 // sum over traces of C(M, 2)
  std::int64_t num_classes = 0;
  std::int64_t self_paired = 0;  // classes with a single (s, c) model
};

/// P(q) over classes of pairs (s, c), s != +-2, c in {1, w}, modulo
/// (s, c) ~ other_model(s, c). Works for every odd prime.
PqResult compute_Pq(const PrimeField& field);

/// Same census with one trace_cubic call per class; the reference for compute_Pq.
PqResult compute_Pq_reference(const PrimeField& field);

/// The commonly stated class count: q - 3 when the s = -6 class is
/// self-paired (-2 a square), q - 2 otherwise.
std::int64_t stated_class_count(std::uint32_t q);

/// The count of classes actually present: q - 1 when -2 is a square, q - 2 otherwise.
std::int64_t expected_class_count(std::uint32_t q);

struct CurveRecord {
  Fe t, c, s, invariant;
  Trace trace_E;
  OrbitTraces traces{};
  CoverSignature signature;

  friend bool operator<(const CurveRecord& a, const CurveRecord& b) {
    return CurveClass{a.t, a.c} < CurveClass{b.t, b.c};
  }
};

CurveRecord make_record(const D4Curve& z, const LegendreTraceTable* table = nullptr);

/// Canonical t in [2, q - 2] (1 < t < q - 1) with both twists, sorted by (t, c).
/// Records are built on `workers` threads when workers > 1.
std::vector<CurveRecord> enumerate_rw(const PrimeField& field,
                                      const LegendreTraceTable* table = nullptr,
                                      unsigned workers = 1);

enum class PairKind { isogenous, doubly_isogenous, h_isogenous };

struct PairMode {
  PairKind kind = PairKind::doubly_isogenous;
  TorsionSubgroup subgroup = TorsionSubgroup::zero();  // used by h_isogenous
  std::string name;                                    // kind column in pairs.csv

  static PairMode isogenous();
  static PairMode doubly();
  static PairMode one_minus_rho();
  static PairMode subgroup_cover(const TorsionSubgroup& h, std::string name);
};

enum FamilyFlag : unsigned {
  kFamily1 = 1u << 0,
  kFamily2 = 1u << 1,
  kFamily3 = 1u << 2,
  kFamily4 = 1u << 3,
  kFamily123 = 1u << 4,
};

struct FamilyFlags {
  unsigned bits = 0;

  bool has(FamilyFlag f) const noexcept { return (bits & f) != 0; }
  bool any() const noexcept { return bits != 0; }
  /// "F1+F2+..." or "NONE".
  std::string to_string() const;
  friend bool operator==(FamilyFlags, FamilyFlags) = default;
};

/// Evaluates the four family equations and the triple-intersection test in F_q.
FamilyFlags classify_pair(const PrimeField& field, Fe invariant1, Fe invariant2);

struct PairRecord {
  std::uint32_t q = 0;
  std::size_t first = 0, second = 0;  // indices into the record list, first < second
  Fe t1, c1, t2, c2;
  std::string kind;
  FamilyFlags flags;
};

/// Signature used to compare curves under a mode.
CoverSignature mode_signature(const CurveRecord& r, const PairMode& mode);

/// Groups records by (trace_E, mode signature) and emits all unordered pairs
/// within each group, ordered by (first, second). Family flags are filled in.
std::vector<PairRecord> find_pairs(const PrimeField& field, const std::vector<CurveRecord>& records,
                                   const PairMode& mode);

/// Exhaustive pairwise comparison; the reference for find_pairs.
std::vector<PairRecord> find_pairs_bruteforce(const PrimeField& field,
                                              const std::vector<CurveRecord>& records,
                                              const PairMode& mode);

struct DeltaBreakdown {
  std::int64_t total = 0;
  std::int64_t none = 0;
  std::int64_t family1 = 0, family2 = 0, family3 = 0, family4 = 0, family123 = 0;
  std::int64_t flagged() const noexcept { return total - none; }
};

DeltaBreakdown delta_breakdown(const std::vector<PairRecord>& pairs);

struct RangeStats {
  std::vector<std::pair<std::uint32_t, std::int64_t>> values;  // (q, P(q))
  double mean = 0, stddev = 0, min = 0, max = 0;  // of P(q) / q^{3/2}; population stddev
};

/// Throws std::invalid_argument on an empty list.
RangeStats range_stats(const std::vector<std::pair<std::uint32_t, std::int64_t>>& values);

/// Everything the census computes for one prime q = 1 (mod 4).
struct PrimeCensus {
  std::uint32_t q = 0;
  std::vector<CurveRecord> records;
  std::vector<PairRecord> doubly;
  std::vector<PairRecord> one_minus_rho;
  DeltaBreakdown delta;
  std::int64_t doubly_also_rho = 0;  // doubly pairs that are also [1 - rho*]-isogenous
};

PrimeCensus census_prime(const PrimeField& field, unsigned workers = 1);

/// The `num` odd primes closest to `center` (ties to the smaller), ascending.
std::vector<std::uint32_t> primes_nearest(std::uint32_t center, std::size_t num,
                                          bool one_mod_four);

}  // namespace isocensus
