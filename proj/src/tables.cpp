#include "swapcount/tables.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>

#include "swapcount/core.hpp"

namespace swapcount {

namespace {

const BigCount kZero = 0;

const BigCount& lookup(const std::vector<std::vector<BigCount>>& rows, std::size_t i, std::int64_t r) {
  if (i >= rows.size() || r < 0 || r >= static_cast<std::int64_t>(rows[i].size())) return kZero;
  return rows[i][r];
}

}  // namespace

MahonianTable::MahonianTable(int max_m) {
  if (max_m < 1) throw std::invalid_argument("MahonianTable: max_m must be >= 1");
  rows_.resize(max_m + 1);
  rows_[0] = {BigCount(1)};
  for (int m = 1; m <= max_m; ++m) {
    const std::int64_t u = max_swaps(m);
    auto& row = rows_[m];
    row.resize(u + 1);
    row[0] = 1;
    for (std::int64_t r = 1; r <= u; ++r) {
      // mpz_class is signed, so the subtraction is safe in any order.
      BigCount v = row[r - 1] + lookup(rows_, m - 1, r) - lookup(rows_, m - 1, r - m);
      assert(sgn(v) >= 0);
      if (sgn(v) < 0) throw std::logic_error("MahonianTable: negative entry");
      row[r] = std::move(v);
    }
  }
}

BigCount MahonianTable::value(int m, std::int64_t r) const { return lookup(rows_, m, r); }

ElectionCountTable::ElectionCountTable(const MahonianTable& mahonian, int m, int max_n) : m_(m) {
  if (m < 1 || m > mahonian.max_m()) throw std::invalid_argument("ElectionCountTable: Mahonian table does not cover m");
  if (max_n < 1) throw std::invalid_argument("ElectionCountTable: max_n must be >= 1");
  const std::int64_t u = max_swaps(m);
  const auto votes = mahonian.row(m);
  rows_.resize(max_n + 1);
  rows_[0] = {BigCount(1)};
  rows_[1].assign(votes.begin(), votes.end());
  for (int n = 2; n <= max_n; ++n) {
    const std::int64_t top = u * n;
    auto& row = rows_[n];
    const auto& prev = rows_[n - 1];
    row.resize(top + 1);
    for (std::int64_t r = 0; r <= top; ++r) {
      const std::int64_t lo = std::max<std::int64_t>(r - u * (n - 1), 0);
      const std::int64_t hi = std::min<std::int64_t>(r, u);
      BigCount sum = 0;
      for (std::int64_t i = lo; i <= hi; ++i) mpz_addmul(sum.get_mpz_t(), votes[i].get_mpz_t(), prev[r - i].get_mpz_t());
      row[r] = std::move(sum);
    }
  }
}

BigCount ElectionCountTable::value(int n, std::int64_t r) const { return lookup(rows_, n, r); }

CountingTables CountingTables::build(int m, int max_n) {
  MahonianTable mahonian(m);
  ElectionCountTable elections(mahonian, m, max_n);
  return CountingTables{std::move(mahonian), std::move(elections)};
}

}  // namespace swapcount
