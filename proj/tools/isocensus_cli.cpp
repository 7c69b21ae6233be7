// Command-line driver for the D4 isogeny census.
//
//   isocensus pq     --min 3 --max 200
//   isocensus census --min 4000 --max 8000 --workers 8
//   isocensus pairs  --q 113 --mode doubly
//   isocensus verify --suite intersection --min 100 --max 1000

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "isocensus/census.hpp"
#include "isocensus/ff.hpp"
#include "isocensus/sweep.hpp"
#include "isocensus/verify.hpp"

namespace fs = std::filesystem;
using namespace isocensus;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JobOptions {
  std::uint32_t q = 0;
  std::uint32_t q_min = 0, q_max = 0;
  std::string mode = "doubly";
  std::string suite;
  unsigned workers = 1;
  std::string out = "census_out";
  std::string format = "csv";
  std::uint64_t seed = 0;
  int samples = 100;
};

std::vector<std::uint32_t> select_primes(const JobOptions& opts, bool one_mod_four) {
  if (opts.q != 0) {
    if (!is_prime(opts.q) || opts.q < 3) {
      throw UsageError("--q " + std::to_string(opts.q) + " is not an odd prime");
    }
    if (one_mod_four && opts.q % 4 != 1) {
      throw UsageError("--q " + std::to_string(opts.q) + " is not 1 mod 4");
    }
    return {opts.q};
  }
  if (opts.q_max == 0) throw UsageError("give --q or --min/--max");
  if (opts.q_min > opts.q_max) throw UsageError("--min exceeds --max");
  return primes_in_range(opts.q_min, opts.q_max, one_mod_four);
}

fs::path output_root(const JobOptions& opts) {
  if (const char* env = std::getenv("ISOGENY_CENSUS_OUT"); env && *env) return env;
  return opts.out;
}

nlohmann::ordered_json csv_to_json(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> header;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  if (std::getline(in, line)) header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    cells.resize(std::max(cells.size(), header.size()));
    for (std::size_t i = 0; i < header.size(); ++i) {
      const std::string& v = cells[i];
      char* end = nullptr;
      long long n = std::strtoll(v.c_str(), &end, 10);
      if (!v.empty() && end && *end == '\0') {
        row[header[i]] = n;
      } else {
        row[header[i]] = v;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_aggregate(const fs::path& dir, const std::string& name, const std::string& csv,
                     const std::string& format) {
  fs::create_directories(dir);
  fs::path path = dir / (name + (format == "json" ? ".json" : ".csv"));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (format == "json") {
    out << csv_to_json(csv).dump(2) << '\n';
  } else {
    out << csv;
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<std::string> bodies_named(const std::vector<PrimeResult>& results, const std::string& name) {
  std::vector<std::string> out;
  for (const PrimeResult& r : results) {
    for (const PrimeOutput& o : r.outputs) {
      if (o.name == name) out.push_back(o.body);
    }
  }
  return out;
}

void log_line(const std::string& line) { std::cerr << line << '\n'; }

int cmd_pq(const JobOptions& opts) {
  const auto primes = select_primes(opts, false);
  const fs::path dir = output_root(opts) / "pq";
  SweepStats stats;
  auto results = run_sweep(
      primes, dir / "primes", {"pq"},
      [](std::uint32_t q) {
        const PqResult r = compute_Pq(make_odd_field(q));
        std::ostringstream os;
        os << "q,P,num_classes\n" << q << ',' << r.pairs << ',' << r.num_classes << '\n';
        return std::vector<PrimeOutput>{{"pq", os.str()}};
      },
      opts.workers, &stats, log_line);
  const std::string merged = merge_csv(bodies_named(results, "pq"));
  write_aggregate(dir, "pq", merged, opts.format);
  std::cout << merged;

  std::vector<std::pair<std::uint32_t, std::int64_t>> values;
  std::istringstream in(merged);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::uint32_t q = 0;
    long long p = 0;
    if (std::sscanf(line.c_str(), "%u,%lld", &q, &p) == 2) values.emplace_back(q, p);
  }
  if (!values.empty()) {
    const RangeStats rs = range_stats(values);
    std::cout << "# primes=" << values.size() << " mean=" << rs.mean << " std=" << rs.stddev
              << " min=" << rs.min << " max=" << rs.max << " (P/q^1.5)\n";
  }
  std::cerr << "computed " << stats.computed << ", resumed " << stats.resumed << '\n';
  return kExitOk;
}

std::string curves_csv(const PrimeField& field, const std::vector<CurveRecord>& records) {
  std::ostringstream os;
  os << "q,t,c,s,I,trace_E,sig\n";
  for (const CurveRecord& r : records) {
    os << field.q() << ',' << r.t.v << ',' << r.c.v << ',' << r.s.v << ',' << r.invariant.v << ','
       << r.trace_E.value << ',' << r.signature.to_string() << '\n';
  }
  return os.str();
}

std::string pairs_csv(const std::vector<PairRecord>& pairs, std::uint32_t q) {
  std::ostringstream os;
  os << "q,t1,c1,t2,c2,kind,flags\n";
  for (const PairRecord& p : pairs) {
    os << q << ',' << p.t1.v << ',' << p.c1.v << ',' << p.t2.v << ',' << p.c2.v << ',' << p.kind
       << ',' << p.flags.to_string() << '\n';
  }
  return os.str();
}

int cmd_pairs(const JobOptions& opts) {
  PairMode mode;
  if (opts.mode == "doubly") {
    mode = PairMode::doubly();
  } else if (opts.mode == "one-minus-rho") {
    mode = PairMode::one_minus_rho();
  } else {
    throw UsageError("--mode must be doubly or one-minus-rho");
  }
  const auto primes = select_primes(opts, true);
  const unsigned inner = primes.size() == 1 ? opts.workers : 1;
  const fs::path dir = output_root(opts) / opts.mode;
  SweepStats stats;
  auto results = run_sweep(
      primes, dir / "primes", {"curves", "pairs"},
      [&](std::uint32_t q) {
        const PrimeField field = make_field(q);
        const LegendreTraceTable table(field);
        const auto records = enumerate_rw(field, &table, inner);
        const auto pairs = find_pairs(field, records, mode);
        return std::vector<PrimeOutput>{{"curves", curves_csv(field, records)},
                                        {"pairs", pairs_csv(pairs, q)}};
      },
      primes.size() == 1 ? 1 : opts.workers, &stats, log_line);
  write_aggregate(dir, "curves", merge_csv(bodies_named(results, "curves")), opts.format);
  const std::string merged = merge_csv(bodies_named(results, "pairs"));
  write_aggregate(dir, "pairs", merged, opts.format);
  if (primes.size() == 1) std::cout << merged;
  for (const PrimeResult& r : results) {
    const std::string& body = r.outputs[1].body;
    const auto rows = std::count(body.begin(), body.end(), '\n') - 1;
    std::cerr << "q=" << r.q << " pairs=" << rows << '\n';
  }
  return kExitOk;
}

int cmd_census(const JobOptions& opts) {
  const auto primes = select_primes(opts, true);
  const unsigned inner = primes.size() == 1 ? opts.workers : 1;
  const fs::path dir = output_root(opts) / "census";
  SweepStats stats;
  auto results = run_sweep(
      primes, dir / "primes", {"census"},
      [&](std::uint32_t q) {
        const PrimeCensus c = census_prime(make_field(q), inner);
        const DeltaBreakdown& d = c.delta;
        std::ostringstream os;
        os << "q,curves,delta,delta0,delta1,delta2,delta3,delta4,delta123,one_minus_rho,"
              "doubly_also_rho\n"
           << q << ',' << c.records.size() << ',' << d.total << ',' << d.none << ',' << d.family1
           << ',' << d.family2 << ',' << d.family3 << ',' << d.family4 << ',' << d.family123 << ','
           << c.one_minus_rho.size() << ',' << c.doubly_also_rho << '\n';
        return std::vector<PrimeOutput>{{"census", os.str()}};
      },
      primes.size() == 1 ? 1 : opts.workers, &stats, log_line);
  const std::string merged = merge_csv(bodies_named(results, "census"));
  write_aggregate(dir, "census", merged, opts.format);
  std::cout << merged;
  return kExitOk;
}

int cmd_verify(const JobOptions& opts) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), opts.suite) == names.end()) {
    throw UsageError("--suite must be one of family1, family2, intersection, tables, weil, isogeny");
  }
  SuiteOptions options;
  options.seed = opts.seed;
  options.samples = opts.samples;
  if (opts.suite != "weil") options.primes = select_primes(opts, true);
  const auto results = run_suite(opts.suite, options);
  bool failed = false;
  std::ostringstream csv;
  csv << "suite,property,checked,failures,status,detail\n";
  for (const PropertyResult& r : results) {
    const char* status = r.failures > 0 ? "FAIL" : (r.checked == 0 ? "VACUOUS" : "PASS");
    failed = failed || r.failures > 0;
    csv << r.suite << ',' << r.property << ',' << r.checked << ',' << r.failures << ',' << status
        << ',' << r.detail << '\n';
  }
  if (opts.format == "json") {
    std::cout << csv_to_json(csv.str()).dump(2) << '\n';
  } else {
    std::cout << csv.str();
  }
  return failed ? kExitVerify : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Census of genus-2 curves with D4-action over prime fields"};
  app.require_subcommand(1);
  JobOptions opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--q", opts.q, "Single prime");
    sub->add_option("--min", opts.q_min, "Smallest prime of the range");
    sub->add_option("--max", opts.q_max, "Largest prime of the range");
    sub->add_option("--workers", opts.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", opts.out, "Output directory (ISOGENY_CENSUS_OUT overrides)");
    sub->add_option("--format", opts.format, "Aggregate format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* pq = app.add_subcommand("pq", "P(q): isogenous pairs among all D4 curves");
  add_common(pq);
  auto* census = app.add_subcommand("census", "Doubly and [1-rho*]-isogenous pair counts per prime");
  add_common(census);
  auto* pairs = app.add_subcommand("pairs", "Curve records and pair lists per prime");
  add_common(pairs);
  pairs->add_option("--mode", opts.mode, "doubly or one-minus-rho");
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  add_common(verify);
  verify->add_option("--suite", opts.suite, "family1, family2, intersection, tables, weil, isogeny")
      ->required();
  verify->add_option("--seed", opts.seed, "Sampling seed");
  verify->add_option("--samples", opts.samples, "Sampled parameters per prime");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (pq->parsed()) return cmd_pq(opts);
    if (census->parsed()) return cmd_census(opts);
    if (pairs->parsed()) return cmd_pairs(opts);
    if (verify->parsed()) return cmd_verify(opts);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::runtime_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
