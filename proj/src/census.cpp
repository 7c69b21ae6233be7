#include "isocensus/census.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

namespace isocensus {

namespace {

bool minus_two_is_square(std::uint32_t q) {
  const PrimeField field = make_odd_field(q);
  return field.chi(field.reduce(-2)) == 1;
}

bool singular_s(std::uint32_t q, std::uint32_t s) { return s == 2 % q || s == q - 2; }

template <class TraceOf>
PqResult tally_classes(const PrimeField& field, TraceOf&& trace_of) {
  const std::uint32_t q = field.q();
  const Fe w = field.nonresidue();
  PqResult out;
  out.q = q;
  for (std::uint32_t s = 0; s < q; ++s) {
    if (singular_s(q, s)) continue;
    for (Fe c : {Fe(1), w}) {
      const Model self{Fe(s), c};
      const Model partner = other_model(field, Fe(s), c);
      if (partner < self) continue;
      if (partner == self) ++out.self_paired;
      ++out.num_classes;
      ++out.histogram[trace_of(s, c).value];
    }
  }
  for (const auto& [trace, count] : out.histogram) out.pairs += count * (count - 1) / 2;
  return out;
}

}  // namespace

PqResult compute_Pq(const PrimeField& field) {
  const std::uint32_t q = field.q();
  const auto chi = field.chi_table();
  // E_s: y^2 = (x + 1)(x^2 + 1) + s x (x + 1); step every x-value by x (x + 1) per s.
  std::vector<std::uint32_t> value(q), step(q);
  for (std::uint64_t x = 0; x < q; ++x) {
    value[x] = static_cast<std::uint32_t>((x + 1) * ((x * x + 1) % q) % q);
    step[x] = static_cast<std::uint32_t>(x * (x + 1) % q);
  }
  std::vector<int> trace(q, 0);
  for (std::uint32_t s = 0; s < q; ++s) {
    std::int32_t sum = 0;
    for (std::uint32_t x = 0; x < q; ++x) {
      sum += chi[value[x]];
      std::uint32_t next = value[x] + step[x];
      value[x] = next >= q ? next - q : next;
    }
    trace[s] = -sum;
  }
  return tally_classes(field, [&](std::uint32_t s, Fe c) {
    return Trace(field.chi(c) * trace[s]);
  });
}

PqResult compute_Pq_reference(const PrimeField& field) {
  return tally_classes(field, [&](std::uint32_t s, Fe c) {
    // c (x + 1)(x^2 + s x + 1) = c x^3 + c (s + 1) x^2 + c (s + 1) x + c.
    auto k = field(c);
    auto b = k * (field(Fe(s)) + 1);
    return trace_cubic(field, Cubic{k.value(), b.value(), b.value(), k.value()});
  });
}

std::int64_t stated_class_count(std::uint32_t q) {
  return minus_two_is_square(q) ? static_cast<std::int64_t>(q) - 3 : static_cast<std::int64_t>(q) - 2;
}

std::int64_t expected_class_count(std::uint32_t q) {
  return minus_two_is_square(q) ? static_cast<std::int64_t>(q) - 1 : static_cast<std::int64_t>(q) - 2;
}

// Curve records

CurveRecord make_record(const D4Curve& z, const LegendreTraceTable* table) {
  CurveRecord r;
  r.t = z.t();
  r.c = z.c();
  r.s = z.s();
  r.invariant = z.invariant();
  r.traces = orbit_traces(z, table);
  r.trace_E = r.traces[0];
  r.signature = full_signature(r.traces);
  return r;
}

std::vector<CurveRecord> enumerate_rw(const PrimeField& field, const LegendreTraceTable* table,
                                      unsigned workers) {
  const std::uint32_t q = field.q();
  std::vector<Fe> canonical;
  for (std::uint32_t t = 2; t + 1 < q; ++t) {
    if (valid_t(field, Fe(t)) && canonical_t(field, Fe(t)) == Fe(t)) canonical.push_back(Fe(t));
  }
  const Fe twists[2] = {Fe(1), field.nonresidue()};
  std::vector<CurveRecord> out(2 * canonical.size());
  auto build = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = make_record(from_t(field, canonical[i / 2], twists[i % 2]), table);
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(out.size() / 64 + 1)));
  if (workers == 1) {
    build(0, out.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (out.size() + workers - 1) / workers;
    for (unsigned k = 0; k < workers; ++k) {
      const std::size_t begin = std::min(out.size(), k * chunk);
      const std::size_t end = std::min(out.size(), begin + chunk);
      pool.emplace_back(build, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

// Pairing

PairMode PairMode::isogenous() { return {PairKind::isogenous, TorsionSubgroup::full(), "isogenous"}; }

PairMode PairMode::doubly() {
  return {PairKind::doubly_isogenous, TorsionSubgroup::zero(), "doubly_isogenous"};
}

PairMode PairMode::one_minus_rho() {
  return {PairKind::h_isogenous, one_minus_rho_kernel(), "one_minus_rho"};
}

PairMode PairMode::subgroup_cover(const TorsionSubgroup& h, std::string name) {
  return {PairKind::h_isogenous, h, std::move(name)};
}

std::string FamilyFlags::to_string() const {
  static const std::pair<FamilyFlag, const char*> names[] = {
      {kFamily1, "F1"}, {kFamily2, "F2"}, {kFamily3, "F3"}, {kFamily4, "F4"}, {kFamily123, "F123"}};
  std::string out;
  for (const auto& [flag, name] : names) {
    if (!has(flag)) continue;
    if (!out.empty()) out += '+';
    out += name;
  }
  return out.empty() ? "NONE" : out;
}

FamilyFlags classify_pair(const PrimeField& field, Fe invariant1, Fe invariant2) {
  auto a = field(invariant1), b = field(invariant2);
  auto ab = a * b;
  FamilyFlags flags;
  if ((a * ab + ab * b - 3 * ab + 1).is_zero()) flags.bits |= kFamily1;
  if ((ab - 16).is_zero()) flags.bits |= kFamily2;
  if ((ab * ab - 768 * ab + 4096 * a + 4096 * b).is_zero()) flags.bits |= kFamily3;
  auto left = b * b + 16 * a * ab - 48 * ab + 256 * a;
  auto right = a * a + 16 * ab * b - 48 * ab + 256 * b;
  if ((left * right).is_zero()) flags.bits |= kFamily4;
  if ((16 * (a + b) - 47).is_zero() && (ab - 16).is_zero()) flags.bits |= kFamily123;
  return flags;
}

CoverSignature mode_signature(const CurveRecord& r, const PairMode& mode) {
  switch (mode.kind) {
    case PairKind::isogenous: return CoverSignature({r.trace_E, r.trace_E});
    case PairKind::doubly_isogenous: return r.signature;
    case PairKind::h_isogenous: return cover_signature(r.traces, mode.subgroup);
  }
  throw std::logic_error("unknown pair kind");
}

namespace {

PairRecord make_pair_record(const PrimeField& field, const std::vector<CurveRecord>& records,
                            std::size_t i, std::size_t j, const PairMode& mode) {
  PairRecord p;
  p.q = field.q();
  p.first = i;
  p.second = j;
  p.t1 = records[i].t;
  p.c1 = records[i].c;
  p.t2 = records[j].t;
  p.c2 = records[j].c;
  p.kind = mode.name;
  p.flags = classify_pair(field, records[i].invariant, records[j].invariant);
  return p;
}

}  // namespace

std::vector<PairRecord> find_pairs(const PrimeField& field, const std::vector<CurveRecord>& records,
                                   const PairMode& mode) {
  std::map<std::pair<Trace, CoverSignature>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < records.size(); ++i) {
    groups[{records[i].trace_E, mode_signature(records[i], mode)}].push_back(i);
  }
  std::vector<std::pair<std::size_t, std::size_t>> index_pairs;
  for (const auto& [key, members] : groups) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        index_pairs.emplace_back(members[a], members[b]);
      }
    }
  }
  std::sort(index_pairs.begin(), index_pairs.end());
  std::vector<PairRecord> out;
  out.reserve(index_pairs.size());
  for (auto [i, j] : index_pairs) out.push_back(make_pair_record(field, records, i, j, mode));
  return out;
}

std::vector<PairRecord> find_pairs_bruteforce(const PrimeField& field,
                                              const std::vector<CurveRecord>& records,
                                              const PairMode& mode) {
  std::vector<PairRecord> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      if (records[i].trace_E != records[j].trace_E) continue;
      if (mode_signature(records[i], mode) != mode_signature(records[j], mode)) continue;
      out.push_back(make_pair_record(field, records, i, j, mode));
    }
  }
  return out;
}

DeltaBreakdown delta_breakdown(const std::vector<PairRecord>& pairs) {
  DeltaBreakdown d;
  for (const PairRecord& p : pairs) {
    ++d.total;
    if (!p.flags.any()) ++d.none;
    if (p.flags.has(kFamily1)) ++d.family1;
    if (p.flags.has(kFamily2)) ++d.family2;
    if (p.flags.has(kFamily3)) ++d.family3;
    if (p.flags.has(kFamily4)) ++d.family4;
    if (p.flags.has(kFamily123)) ++d.family123;
  }
  return d;
}

RangeStats range_stats(const std::vector<std::pair<std::uint32_t, std::int64_t>>& values) {
  if (values.empty()) throw std::invalid_argument("range statistics need at least one prime");
  RangeStats out;
  out.values = values;
  std::vector<double> ratios;
  ratios.reserve(values.size());
  for (auto [q, p] : values) ratios.push_back(static_cast<double>(p) / std::pow(double(q), 1.5));
  double sum = 0;
  for (double r : ratios) sum += r;
  out.mean = sum / static_cast<double>(ratios.size());
  double var = 0;
  for (double r : ratios) var += (r - out.mean) * (r - out.mean);
  out.stddev = std::sqrt(var / static_cast<double>(ratios.size()));
  auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  out.min = *lo;
  out.max = *hi;
  return out;
}

PrimeCensus census_prime(const PrimeField& field, unsigned workers) {
  PrimeCensus out;
  out.q = field.q();
  const LegendreTraceTable table(field);
  out.records = enumerate_rw(field, &table, workers);
  out.doubly = find_pairs(field, out.records, PairMode::doubly());
  out.one_minus_rho = find_pairs(field, out.records, PairMode::one_minus_rho());
  out.delta = delta_breakdown(out.doubly);
  std::set<std::pair<std::size_t, std::size_t>> rho;
  for (const PairRecord& p : out.one_minus_rho) rho.emplace(p.first, p.second);
  for (const PairRecord& p : out.doubly) out.doubly_also_rho += rho.count({p.first, p.second});
  return out;
}

std::vector<std::uint32_t> primes_nearest(std::uint32_t center, std::size_t num, bool one_mod_four) {
  std::vector<std::uint32_t> out;
  if (num == 0) return out;
  std::int64_t down = center, up = static_cast<std::int64_t>(center) + 1;
  auto accept = [&](std::int64_t n) {
    return n >= 3 && n % 2 == 1 && (!one_mod_four || n % 4 == 1) && is_prime(static_cast<std::uint64_t>(n));
  };
  while (out.size() < num) {
    // Take whichever side is closer; ties go to the smaller candidate.
    while (down >= 3 && !accept(down)) --down;
    while (!accept(up)) ++up;
    if (down >= 3 && center - down <= up - static_cast<std::int64_t>(center)) {
      out.push_back(static_cast<std::uint32_t>(down--));
    } else {
      out.push_back(static_cast<std::uint32_t>(up++));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace isocensus
