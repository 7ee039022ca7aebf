// Exhaustive reference counters. Slow by design; they exist to check the
// fast algorithms on tiny instances.

#include <algorithm>
#include <functional>
#include <numeric>

#include "swapcount/bribery.hpp"

namespace swapcount {

namespace {

// All votes at each distance from v: census[k] lists the rankings at swap
// distance k.
std::vector<std::vector<Vote>> census(const Vote& v) {
  const int m = v.size();
  std::vector<std::vector<Vote>> by_distance(static_cast<std::size_t>(max_swaps(m)) + 1);
  std::vector<CandidateId> ranking(v.ranking().begin(), v.ranking().end());
  std::sort(ranking.begin(), ranking.end());
  do {
    Vote u(ranking);
    by_distance[swap_distance(v, u)].push_back(std::move(u));
  } while (std::next_permutation(ranking.begin(), ranking.end()));
  return by_distance;
}

BigCount elections_at_distance(int m, int n, std::int64_t r) {
  const MahonianTable mahonian(m);
  const ElectionCountTable counts(mahonian, m, n);
  return counts.value(n, r);
}

}  // namespace

BigCount brute_force_count_swap(const Election& e, CandidateId p, std::int64_t r, Rule rule, const Guards& guards) {
  const int m = e.candidate_count();
  const int n = e.voter_count();
  if (p < 0 || p >= m) throw std::out_of_range("brute_force_count_swap: candidate out of range");
  if (r < 0) throw std::invalid_argument("brute_force_count_swap: negative radius");
  if (r > max_swaps(m) * n) return 0;

  const BigCount leaves = elections_at_distance(m, n, r);
  if (factorial(m) * n > guards.oracle_state_budget || leaves > guards.oracle_state_budget) {
    throw GuardExceeded("oracle-state-budget", "brute-force swap enumeration would visit " + to_decimal(leaves) +
                                                   " elections, above the budget of " +
                                                   std::to_string(guards.oracle_state_budget));
  }

  std::vector<std::vector<std::vector<Vote>>> near;
  for (int i = 0; i < n; ++i) near.push_back(census(e.vote(i)));

  std::vector<Vote> current(e.votes().begin(), e.votes().end());
  BigCount hits = 0;
  std::uint64_t visited = 0;
  std::function<void(int, std::int64_t)> walk = [&](int i, std::int64_t left) {
    if (i == n) {
      if (left != 0) return;
      ++visited;
      if (is_winner(e.with_votes(current), rule, p)) ++hits;
      return;
    }
    const std::int64_t cap = max_swaps(m) * (n - i - 1);
    for (std::int64_t k = std::max<std::int64_t>(0, left - cap); k <= std::min(left, max_swaps(m)); ++k) {
      for (const Vote& u : near[i][k]) {
        current[i] = u;
        walk(i + 1, left - k);
      }
    }
  };
  walk(0, r);
  if (BigCount(static_cast<unsigned long>(visited)) != leaves) {
    throw std::logic_error("brute_force_count_swap: enumeration visited " + std::to_string(visited) +
                           " elections, expected " + to_decimal(leaves));
  }
  return hits;
}

BigCount brute_force_count_shift(const Election& e, CandidateId p, std::int64_t r, const CostFunction& costs,
                                 ShiftMode mode, Rule rule, const Guards& guards) {
  const int m = e.candidate_count();
  const int n = e.voter_count();
  if (p < 0 || p >= m) throw std::out_of_range("brute_force_count_shift: candidate out of range");
  if (r < 0) throw std::invalid_argument("brute_force_count_shift: negative budget");
  if (costs.voters() != n) throw std::invalid_argument("brute_force_count_shift: cost function size mismatch");

  const bool forward = mode == ShiftMode::Constructive;
  std::vector<int> options(n);
  double space = 1.0;
  for (int i = 0; i < n; ++i) {
    const int pos = e.vote(i).position_of(p);
    options[i] = std::min(forward ? pos : m - 1 - pos, costs.max_shift(i));
    space *= options[i] + 1;
  }
  if (space > static_cast<double>(guards.oracle_state_budget)) {
    throw GuardExceeded("oracle-state-budget", "brute-force shift enumeration over " + std::to_string(space) +
                                                   " shift vectors exceeds the budget of " +
                                                   std::to_string(guards.oracle_state_budget));
  }

  std::vector<Vote> current(e.votes().begin(), e.votes().end());
  BigCount hits = 0;
  std::function<void(int, std::int64_t)> walk = [&](int i, std::int64_t left) {
    if (i == n) {
      if (left != 0) return;
      const bool wins = is_winner(e.with_votes(current), rule, p);
      if (wins == forward) ++hits;
      return;
    }
    const Vote& v = e.vote(i);
    const int pos = v.position_of(p);
    for (int l = 0; l <= options[i]; ++l) {
      const std::int64_t c = costs(i, l);
      if (c > left) break;  // costs are nondecreasing
      std::vector<CandidateId> ranking(v.ranking().begin(), v.ranking().end());
      const int to = forward ? pos - l : pos + l;
      ranking.erase(ranking.begin() + pos);
      ranking.insert(ranking.begin() + to, p);
      current[i] = Vote(std::move(ranking));
      walk(i + 1, left - c);
    }
    current[i] = v;
  };
  walk(0, r);
  return hits;
}

}  // namespace swapcount
