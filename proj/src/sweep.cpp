#include "isocensus/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace isocensus {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string checksum_footer(std::string_view body) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "#checksum,%016llx\n",
                static_cast<unsigned long long>(fnv1a64(body)));
  return buf;
}

void write_checked(const fs::path& path, const std::string& body) {
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << body << checksum_footer(body);
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::optional<std::string> read_checked(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto pos = text.rfind("#checksum,");
  if (pos == std::string::npos) return std::nullopt;
  std::string body = text.substr(0, pos);
  if (text.substr(pos) != checksum_footer(body)) return std::nullopt;
  return body;
}

fs::path prime_file(const fs::path& dir, std::uint32_t q, const std::string& name) {
  return dir / ("q" + std::to_string(q) + "." + name + ".csv");
}

std::vector<PrimeResult> run_sweep(const std::vector<std::uint32_t>& primes, const fs::path& dir,
                                   const std::vector<std::string>& names,
                                   const std::function<std::vector<PrimeOutput>(std::uint32_t)>& job,
                                   unsigned workers, SweepStats* stats,
                                   const std::function<void(const std::string&)>& log) {
  std::vector<std::uint32_t> order = primes;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  std::vector<PrimeResult> results(order.size());

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> computed{0}, resumed{0};
  std::mutex log_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= order.size()) return;
      const std::uint32_t q = order[i];
      PrimeResult& r = results[i];
      r.q = q;
      try {
        std::vector<PrimeOutput> cached;
        for (const std::string& name : names) {
          auto body = read_checked(prime_file(dir, q, name));
          if (!body) break;
          cached.push_back({name, std::move(*body)});
        }
        if (cached.size() == names.size()) {
          r.outputs = std::move(cached);
          r.resumed = true;
          ++resumed;
        } else {
          r.outputs = job(q);
          for (const PrimeOutput& out : r.outputs) write_checked(prime_file(dir, q, out.name), out.body);
          ++computed;
        }
        if (log) {
          std::lock_guard lock(log_mutex);
          log("q=" + std::to_string(q) + (r.resumed ? " resumed" : " done"));
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = order.size();
        return;
      }
    }
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(order.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < workers; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  if (stats) {
    stats->computed = computed;
    stats->resumed = resumed;
  }
  return results;
}

std::string merge_csv(const std::vector<std::string>& bodies) {
  std::string header;
  std::string rows;
  for (const std::string& body : bodies) {
    const auto eol = body.find('\n');
    if (eol == std::string::npos) continue;
    std::string head = body.substr(0, eol + 1);
    if (header.empty()) {
      header = head;
    } else if (head != header) {
      throw std::runtime_error("per-prime files disagree on the CSV header");
    }
    rows += body.substr(eol + 1);
  }
  return header + rows;
}

}  // namespace isocensus
