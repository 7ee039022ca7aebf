#pragma once

#include <cstdint>
#include <vector>

#include "swapcount/core.hpp"
#include "swapcount/random.hpp"
#include "swapcount/tables.hpp"

namespace swapcount {

// Swaps assigned to each vote; entries lie in [0, m(m-1)/2] and sum to r.
using SwapAllocation = std::vector<int>;

/// Lehmer code of a permutation: t[i] counts the later entries smaller than
/// the entry at position i, so 0 <= t[i] <= m-1-i and the entries sum to the
/// inversion count. The code determines the permutation uniquely.
struct InversionTable {
  std::vector<int> t;

  int size() const { return static_cast<int>(t.size()); }
  std::int64_t inversions() const;
  bool valid() const;
  friend bool operator==(const InversionTable&, const InversionTable&) = default;
  friend auto operator<=>(const InversionTable&, const InversionTable&) = default;
};

InversionTable inversion_table_of(const std::vector<int>& permutation);
std::vector<int> permutation_from(const InversionTable& table);

// Draws how many swaps each of n votes receives so that the full two-step
// procedure is uniform over R(E, r). Throws std::out_of_range if r is outside
// [0, n*m(m-1)/2] and std::invalid_argument if the tables do not cover (m, n).
SwapAllocation sample_allocation(int m, int n, std::int64_t r, const CountingTables& tables, RandomSource& rng);

// Uniform Lehmer code with exactly r inversions, filled position by position.
InversionTable sample_inversion_table(int m, std::int64_t r, const MahonianTable& mahonian, RandomSource& rng);

// Reorders v by the permutation encoded in t: position j of the result holds
// v's candidate at position sigma[j]. The result is at swap distance
// t.inversions() from v.
Vote perturb_vote(const Vote& v, const InversionTable& t);

// Uniform draw from the elections at swap distance exactly r from e.
Election sample_election_at_distance(const Election& e, std::int64_t r, const CountingTables& tables,
                                     RandomSource& rng);

}  // namespace swapcount
