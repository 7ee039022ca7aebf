#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "swapcount/bigcount.hpp"

namespace swapcount {

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of permutations of m elements with exactly r inversions, for every
/// 1 <= m <= max_m and 0 <= r <= m(m-1)/2. Row 0 holds the empty permutation.
///
/// Built once by the standard recurrence
///   T[m][r] = T[m][r-1] + T[m-1][r] - T[m-1][r-m]
/// and immutable afterwards; safe to share across threads.
class MahonianTable {
 public:
  explicit MahonianTable(int max_m);

  int max_m() const { return static_cast<int>(rows_.size()) - 1; }
  // Zero outside 0 <= r <= max_swaps(m).
  BigCount value(int m, std::int64_t r) const;
  const BigCount& at(int m, std::int64_t r) const { return rows_.at(m).at(r); }
  std::span<const BigCount> row(int m) const { return rows_.at(m); }

  void save(const std::filesystem::path& path) const;
  // Throws CacheError on a malformed file or a row whose sum is not m!.
  static MahonianTable load(const std::filesystem::path& path);

 private:
  explicit MahonianTable(std::vector<std::vector<BigCount>> rows) : rows_(std::move(rows)) {}
  std::vector<std::vector<BigCount>> rows_;
};

/// T_E[n][r]: number of n-voter, m-candidate elections at swap distance
/// exactly r from any fixed election, for 0 <= n <= max_n. Row 0 is {1}.
class ElectionCountTable {
 public:
  ElectionCountTable(const MahonianTable& mahonian, int m, int max_n);

  int candidates() const { return m_; }
  int max_n() const { return static_cast<int>(rows_.size()) - 1; }
  BigCount value(int n, std::int64_t r) const;
  const BigCount& at(int n, std::int64_t r) const { return rows_.at(n).at(r); }
  std::span<const BigCount> row(int n) const { return rows_.at(n); }

  void save(const std::filesystem::path& path) const;
  // Throws CacheError on a malformed file or a row whose sum is not (m!)^n.
  static ElectionCountTable load(const std::filesystem::path& path);

 private:
  ElectionCountTable(int m, std::vector<std::vector<BigCount>> rows) : m_(m), rows_(std::move(rows)) {}
  int m_;
  std::vector<std::vector<BigCount>> rows_;
};

// Everything the exact sampler needs for elections with m candidates and up
// to max_n voters.
struct CountingTables {
  MahonianTable mahonian;
  ElectionCountTable elections;

  static CountingTables build(int m, int max_n);
  bool covers(int m, int n) const { return elections.candidates() == m && n <= elections.max_n(); }
};

}  // namespace swapcount
