#include <gtest/gtest.h>

#include <atomic>
#include <fstream>

#include "isocensus/sweep.hpp"

using namespace isocensus;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("isocensus_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<PrimeOutput> square_job(std::uint32_t q) {
  return {{"sq", "q,sq\n" + std::to_string(q) + "," + std::to_string(q * q) + "\n"}};
}

}  // namespace

TEST(Checksum, RoundTripAndCorruption) {
  const fs::path dir = scratch_dir("checksum");
  const fs::path file = dir / "a.csv";
  write_checked(file, "q,x\n5,1\n");
  EXPECT_EQ(read_checked(file), std::optional<std::string>("q,x\n5,1\n"));
  {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << "q,x\n5,2\n" << checksum_footer("q,x\n5,1\n");
  }
  EXPECT_FALSE(read_checked(file).has_value());
  EXPECT_FALSE(read_checked(dir / "missing.csv").has_value());
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
}

TEST(Sweep, ResumeSkipsVerifiedPrimes) {
  const fs::path dir = scratch_dir("resume");
  const std::vector<std::uint32_t> primes{13, 5, 29, 17};
  std::atomic<int> calls{0};
  auto job = [&](std::uint32_t q) {
    ++calls;
    return square_job(q);
  };
  SweepStats first;
  const auto a = run_sweep(primes, dir, {"sq"}, job, 2, &first);
  EXPECT_EQ(calls.load(), 4);
  EXPECT_EQ(first.computed, 4u);
  ASSERT_EQ(a.size(), 4u);
  EXPECT_EQ(a[0].q, 5u);
  EXPECT_EQ(a[3].q, 29u);

  fs::remove(prime_file(dir, 17, "sq"));
  SweepStats second;
  const auto b = run_sweep(primes, dir, {"sq"}, job, 2, &second);
  EXPECT_EQ(calls.load(), 5);
  EXPECT_EQ(second.computed, 1u);
  EXPECT_EQ(second.resumed, 3u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].outputs[0].body, b[i].outputs[0].body);
  }
  EXPECT_EQ(merge_csv({a[0].outputs[0].body, a[1].outputs[0].body}), "q,sq\n5,25\n13,169\n");
}

TEST(Sweep, OutputIndependentOfWorkerCount) {
  std::vector<std::uint32_t> primes;
  for (std::uint32_t q = 3; q < 400; q += 2) primes.push_back(q);
  const auto one = run_sweep(primes, scratch_dir("w1"), {"sq"}, square_job, 1);
  const auto many = run_sweep(primes, scratch_dir("w8"), {"sq"}, square_job, 8);
  ASSERT_EQ(one.size(), many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].q, many[i].q);
    EXPECT_EQ(one[i].outputs[0].body, many[i].outputs[0].body);
  }
}

TEST(Sweep, FailuresPropagate) {
  auto job = [](std::uint32_t q) -> std::vector<PrimeOutput> {
    if (q == 7) throw std::runtime_error("boom");
    return square_job(q);
  };
  EXPECT_THROW(run_sweep({3, 5, 7, 11}, scratch_dir("fail"), {"sq"}, job, 2), std::runtime_error);
  EXPECT_THROW(merge_csv({"a,b\n1,2\n", "a,c\n1,2\n"}), std::runtime_error);
}
