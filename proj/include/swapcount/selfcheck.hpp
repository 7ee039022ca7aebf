#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swapcount/bigcount.hpp"
#include "swapcount/core.hpp"
#include "swapcount/random.hpp"

namespace swapcount {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelfTestOptions {
  bool quick = false;
  // Directory of table caches to verify (every *.bin file in it).
  std::optional<std::filesystem::path> cache;
  std::uint64_t seed = kDefaultSeed;
};

// Runs the oracle-equivalence, sampler, culture and table-consistency checks.
// `report` is called after each check.
std::vector<CheckResult> run_selftest(const SelfTestOptions& options,
                                      const std::function<void(const CheckResult&)>& report = {});

// Verifies one cache file; throws CacheError on any inconsistency.
void verify_cache_file(const std::filesystem::path& path);

// --- brute-force building blocks ------------------------------------------

// counts[r] = number of permutations of m elements with r inversions, by
// enumerating all m! permutations.
std::vector<BigCount> mahonian_census(int m);
// counts[r] = number of n-voter elections at distance r from a fixed one,
// by enumerating all (m!)^n elections.
std::vector<BigCount> election_census(int m, int n);
// Every election at swap distance exactly r from e, in lexicographic order.
std::vector<Election> enumerate_at_distance(const Election& e, std::int64_t r);

double chi_square_statistic(std::span<const std::int64_t> observed, std::span<const double> expected);
// Upper critical value of the chi-square distribution at significance alpha.
double chi_square_critical(int degrees_of_freedom, double alpha);

}  // namespace swapcount
