// Plurality #Swap-Bribery with unit prices, parameterized by the number of
// voters.
//
// Every election E' at distance r where p wins splits the voters by their
// top choice in E': a p-group P (nonempty, at least as large as every other
// group) and one group per other candidate that some voter ranks first.
// We fix P explicitly (canonical order: ascending bitmask), then walk the
// remaining candidates in index order and let each one take a block of the
// still-unassigned voters (or none). Assigning blocks in candidate-index
// order is what makes every E' correspond to exactly one path, and the
// submask transitions enumerate the set partitions of the non-p voters
// implicitly.
//
// The local factor for a block B topped by c is the group contribution:
// the number of vote tuples for B at total distance k that all rank c first,
// i.e. the convolution over v in B of T_V[m-1][k - pos_v(c)].

#include <bit>
#include <unordered_map>

#include "swapcount/bribery.hpp"

namespace swapcount {

namespace {

using Row = std::vector<BigCount>;

bool is_zero(const Row& row) {
  for (const auto& x : row) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

Row convolve(const Row& a, const Row& b, std::size_t length) {
  Row out(length, 0);
  for (std::size_t i = 0; i < a.size() && i < length; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < length; ++j) {
      if (sgn(b[j]) == 0) continue;
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return out;
}

void accumulate(Row& into, const Row& add) {
  if (into.empty()) {
    into = add;
    return;
  }
  for (std::size_t i = 0; i < add.size(); ++i) into[i] += add[i];
}

// Swaps in one vote that bring c to the top: pos_v(c) to move c up, then any
// rearrangement of the other m-1 candidates.
Row single_vote_row(const Vote& v, CandidateId c, std::size_t length, const MahonianTable& mahonian) {
  const int m = v.size();
  const int pos = v.position_of(c);
  Row row(length, 0);
  for (std::int64_t k = 0; k <= max_swaps(m - 1); ++k) {
    const std::size_t at = static_cast<std::size_t>(pos + k);
    if (at >= length) break;
    row[at] = mahonian.at(m - 1, k);
  }
  return row;
}

Row group_row(const Election& e, VoterGroup group, CandidateId c, std::size_t length, const MahonianTable& mahonian) {
  Row row(length, 0);
  row[0] = 1;
  for (int voter : group) row = convolve(row, single_vote_row(e.vote(voter), c, length, mahonian), length);
  return row;
}

// Group rows keyed by (voter bitmask, candidate), built by peeling off the
// lowest voter of the mask.
class GroupRowCache {
 public:
  GroupRowCache(const Election& e, std::size_t length, const MahonianTable& mahonian)
      : e_(e), length_(length), mahonian_(mahonian) {}

  const Row& get(std::uint32_t mask, CandidateId c) {
    const std::uint64_t key = (static_cast<std::uint64_t>(mask) << 16) | static_cast<std::uint64_t>(c);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    Row row;
    const int lowest = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    const Row single = single_vote_row(e_.vote(lowest), c, length_, mahonian_);
    row = rest == 0 ? single : convolve(get(rest, c), single, length_);
    return cache_.emplace(key, std::move(row)).first->second;
  }

 private:
  const Election& e_;
  std::size_t length_;
  const MahonianTable& mahonian_;
  std::unordered_map<std::uint64_t, Row> cache_;
};

}  // namespace

BigCount vgc_swap_plurality(const Election& e, VoterGroup group, std::int64_t r, CandidateId p,
                            const MahonianTable& mahonian) {
  if (r < 0) return 0;
  if (mahonian.max_m() < e.candidate_count() - 1) {
    throw std::invalid_argument("vgc_swap_plurality: Mahonian table does not cover m-1");
  }
  const Row row = group_row(e, group, p, static_cast<std::size_t>(r) + 1, mahonian);
  return row[r];
}

BigCount count_plurality_swap_bribery(const Election& e, CandidateId p, std::int64_t r,
                                      const MahonianTable& mahonian, const Guards& guards) {
  const int m = e.candidate_count();
  const int n = e.voter_count();
  if (p < 0 || p >= m) throw std::out_of_range("count_plurality_swap_bribery: candidate out of range");
  if (r < 0) throw std::invalid_argument("count_plurality_swap_bribery: negative radius");
  if (n > guards.max_voters_fpt_n || n > 30) {
    throw GuardExceeded("max-voters-fpt-n",
                        "Plurality #Swap-Bribery is exponential in the number of voters; n=" + std::to_string(n) +
                            " exceeds the limit of " + std::to_string(guards.max_voters_fpt_n) +
                            " (use the brute-force oracle on tiny instances or estimate by sampling)");
  }
  if (r > max_swaps(m) * n) return 0;
  if (m == 1) return 1;  // r == 0 here and p is the only candidate
  if (mahonian.max_m() < m - 1) {
    throw std::invalid_argument("count_plurality_swap_bribery: Mahonian table does not cover m-1");
  }

  const std::size_t length = static_cast<std::size_t>(r) + 1;
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  GroupRowCache rows(e, length, mahonian);
  BigCount total = 0;

  for (std::uint32_t p_group = 1; p_group <= full; ++p_group) {
    const int cap = std::popcount(p_group);
    const std::uint32_t rest = full ^ p_group;
    const Row& base = rows.get(p_group, p);
    if (is_zero(base)) continue;
    if (rest == 0) {
      total += base[r];
      continue;
    }

    // dp[S]: ways with the voters in S (a subset of `rest`) already assigned
    // to the candidates processed so far. Empty row means zero.
    std::vector<Row> dp(std::size_t{1} << n);
    dp[0] = base;
    for (CandidateId c = 0; c < m; ++c) {
      if (c == p) continue;
      std::vector<Row> next = dp;
      for (std::uint32_t covered = rest;; covered = (covered - 1) & rest) {
        const std::uint32_t s = rest ^ covered;  // iterate all submasks of rest
        if (!dp[s].empty()) {
          const std::uint32_t open = rest ^ s;
          for (std::uint32_t block = open; block != 0; block = (block - 1) & open) {
            if (std::popcount(block) > cap) continue;
            const Row& local = rows.get(block, c);
            if (is_zero(local)) continue;
            accumulate(next[s | block], convolve(dp[s], local, length));
          }
        }
        if (covered == 0) break;
      }
      dp = std::move(next);
    }
    if (!dp[rest].empty()) total += dp[rest][r];
  }
  return total;
}

BigCount count_plurality_swap_bribery(const Election& e, CandidateId p, std::int64_t r, const Guards& guards) {
  const MahonianTable mahonian(std::max(1, e.candidate_count() - 1));
  return count_plurality_swap_bribery(e, p, r, mahonian, guards);
}

}  // namespace swapcount
