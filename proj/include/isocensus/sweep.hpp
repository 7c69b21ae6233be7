#pragma once

// Resumable sweeps over many primes. Each prime writes its own files, each
// ending in a "#checksum,<fnv1a64 hex>" footer; a prime whose files all verify
// is skipped on the next run.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace isocensus {

std::uint64_t fnv1a64(std::string_view data);
std::string checksum_footer(std::string_view body);

/// Writes body plus footer through a temporary file and rename.
void write_checked(const std::filesystem::path& path, const std::string& body);

/// The body when the file exists and its footer matches; nullopt otherwise.
std::optional<std::string> read_checked(const std::filesystem::path& path);

/// One named output of a per-prime job, e.g. {"pairs", csv text with header}.
struct PrimeOutput {
  std::string name;
  std::string body;
};

struct PrimeResult {
  std::uint32_t q = 0;
  std::vector<PrimeOutput> outputs;  // in the order of `names`
  bool resumed = false;
};

struct SweepStats {
  std::size_t computed = 0;
  std::size_t resumed = 0;
};

/// Per-prime output files live at dir / ("q" + q + "." + name + ".csv").
std::filesystem::path prime_file(const std::filesystem::path& dir, std::uint32_t q,
                                 const std::string& name);

/// Runs `job` for every prime without verified files in `dir`, on `workers`
/// threads pulling primes from a shared queue. Results are sorted by q.
/// `log` (optional) receives one line per finished prime.
std::vector<PrimeResult> run_sweep(const std::vector<std::uint32_t>& primes,
                                   const std::filesystem::path& dir,
                                   const std::vector<std::string>& names,
                                   const std::function<std::vector<PrimeOutput>(std::uint32_t)>& job,
                                   unsigned workers, SweepStats* stats = nullptr,
                                   const std::function<void(const std::string&)>& log = {});

/// Concatenates per-prime CSV bodies that share a header line.
std::string merge_csv(const std::vector<std::string>& bodies);

}  // namespace isocensus
