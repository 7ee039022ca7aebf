#include "swapcount/sampler.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace swapcount {

std::int64_t InversionTable::inversions() const {
  std::int64_t total = 0;
  for (int x : t) total += x;
  return total;
}

bool InversionTable::valid() const {
  const int m = size();
  for (int i = 0; i < m; ++i) {
    if (t[i] < 0 || t[i] > m - 1 - i) return false;
  }
  return true;
}

InversionTable inversion_table_of(const std::vector<int>& permutation) {
  const int m = static_cast<int>(permutation.size());
  InversionTable table{std::vector<int>(m, 0)};
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (permutation[j] < permutation[i]) ++table.t[i];
    }
  }
  return table;
}

std::vector<int> permutation_from(const InversionTable& table) {
  if (!table.valid()) throw std::invalid_argument("permutation_from: invalid inversion table");
  const int m = table.size();
  std::vector<int> remaining(m);
  for (int i = 0; i < m; ++i) remaining[i] = i;
  std::vector<int> permutation(m);
  for (int i = 0; i < m; ++i) {
    permutation[i] = remaining[table.t[i]];
    remaining.erase(remaining.begin() + table.t[i]);
  }
  return permutation;
}

SwapAllocation sample_allocation(int m, int n, std::int64_t r, const CountingTables& tables, RandomSource& rng) {
  if (!tables.covers(m, n)) {
    throw std::invalid_argument("sample_allocation: tables do not cover m=" + std::to_string(m) +
                                ", n=" + std::to_string(n));
  }
  const std::int64_t u = max_swaps(m);
  if (r < 0 || r > u * n) throw std::out_of_range("sample_allocation: radius outside [0, n*u(m)]");

  const auto& votes = tables.elections.row(1);
  SwapAllocation allocation(n, 0);
  BigCount draw, term;
  std::int64_t left = r;
  for (int k = 0; k < n; ++k) {
    const int rest = n - k - 1;
    const std::int64_t lo = std::max<std::int64_t>(left - u * rest, 0);
    const std::int64_t hi = std::min<std::int64_t>(left, u);
    if (lo == hi) {
      allocation[k] = static_cast<int>(lo);
      left -= lo;
      continue;
    }
    // P(i) = T_V[m][i] * T_E[rest][left - i] / T_E[rest + 1][left]
    draw = rng.uniform_below(tables.elections.at(rest + 1, left));
    std::int64_t chosen = hi;
    for (std::int64_t i = lo; i < hi; ++i) {
      mpz_mul(term.get_mpz_t(), votes[i].get_mpz_t(), tables.elections.at(rest, left - i).get_mpz_t());
      if (draw < term) {
        chosen = i;
        break;
      }
      draw -= term;
    }
    allocation[k] = static_cast<int>(chosen);
    left -= chosen;
  }
  assert(left == 0);
  return allocation;
}

InversionTable sample_inversion_table(int m, std::int64_t r, const MahonianTable& mahonian, RandomSource& rng) {
  if (m < 1 || m > mahonian.max_m()) throw std::invalid_argument("sample_inversion_table: table does not cover m");
  if (r < 0 || r > max_swaps(m)) throw std::out_of_range("sample_inversion_table: r outside [0, m(m-1)/2]");

  InversionTable table{std::vector<int>(m, 0)};
  std::int64_t left = r;
  // Position i holds up to (m-1-i) balls; the later positions behave like a
  // permutation of `width - 1` elements.
  for (int i = 0; i + 1 < m && left > 0; ++i) {
    const int width = m - i;
    const int capacity = width - 1;
    const std::int64_t lo = std::max<std::int64_t>(left - max_swaps(width - 1), 0);
    const std::int64_t hi = std::min<std::int64_t>(left, capacity);
    std::int64_t chosen = hi;
    if (lo != hi) {
      // P(k) = T_V[width-1][left-k] / T_V[width][left]
      BigCount draw = rng.uniform_below(mahonian.at(width, left));
      for (std::int64_t k = lo; k < hi; ++k) {
        const BigCount& w = mahonian.at(width - 1, left - k);
        if (draw < w) {
          chosen = k;
          break;
        }
        draw -= w;
      }
    }
    table.t[i] = static_cast<int>(chosen);
    left -= chosen;
  }
  assert(left == 0);
  return table;
}

Vote perturb_vote(const Vote& v, const InversionTable& t) {
  if (t.size() != v.size()) throw std::invalid_argument("perturb_vote: table length differs from vote length");
  const std::vector<int> sigma = permutation_from(t);
  std::vector<CandidateId> ranking(v.size());
  for (int j = 0; j < v.size(); ++j) ranking[j] = v.at(sigma[j]);
  return Vote(std::move(ranking));
}

Election sample_election_at_distance(const Election& e, std::int64_t r, const CountingTables& tables,
                                     RandomSource& rng) {
  const int m = e.candidate_count();
  const int n = e.voter_count();
  const SwapAllocation allocation = sample_allocation(m, n, r, tables, rng);
  std::vector<Vote> votes;
  votes.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (allocation[i] == 0) {
      votes.push_back(e.vote(i));
    } else {
      votes.push_back(perturb_vote(e.vote(i), sample_inversion_table(m, allocation[i], tables.mahonian, rng)));
    }
  }
  return e.with_votes(std::move(votes));
}

}  // namespace swapcount
