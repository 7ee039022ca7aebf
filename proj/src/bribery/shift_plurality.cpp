#include <algorithm>
#include <map>
#include <numeric>

#include "swapcount/bribery.hpp"

namespace swapcount {

namespace {

// One available action at a voter: shifting p by `shift` positions costs
// `cost` and leaves p on top afterwards iff `top`.
struct Action {
  int shift;
  std::int64_t cost;
  bool top;
};

void check_costs(const Election& e, const CostFunction& costs) {
  if (costs.voters() != e.voter_count()) {
    throw std::invalid_argument("cost function covers " + std::to_string(costs.voters()) + " voters, election has " +
                                std::to_string(e.voter_count()));
  }
}

std::vector<Action> forward_actions(const Vote& v, int voter, CandidateId p, const CostFunction& costs) {
  const int pos = v.position_of(p);
  std::vector<Action> actions;
  for (int l = 0; l <= std::min(pos, costs.max_shift(voter)); ++l) actions.push_back({l, costs(voter, l), l == pos});
  return actions;
}

std::vector<Action> backward_actions(const Vote& v, int voter, CandidateId p, const CostFunction& costs) {
  const int pos = v.position_of(p);
  const int room = v.size() - 1 - pos;
  std::vector<Action> actions;
  for (int l = 0; l <= std::min(room, costs.max_shift(voter)); ++l) {
    actions.push_back({l, costs(voter, l), pos == 0 && l == 0});
  }
  return actions;
}

// L[s][x] over the voters of a group, one voter at a time.
template <typename ActionsOf>
GroupWays group_table(VoterGroup group, std::int64_t max_cost, ActionsOf actions_of) {
  const std::size_t width = static_cast<std::size_t>(max_cost) + 1;
  GroupWays ways(group.size() + 1, std::vector<BigCount>(width, 0));
  ways[0][0] = 1;
  int seen = 0;
  for (int voter : group) {
    GroupWays next(group.size() + 1, std::vector<BigCount>(width, 0));
    const std::vector<Action> actions = actions_of(voter);
    for (int s = 0; s <= seen; ++s) {
      for (std::size_t x = 0; x < width; ++x) {
        if (sgn(ways[s][x]) == 0) continue;
        for (const Action& a : actions) {
          const std::size_t to = x + static_cast<std::size_t>(a.cost);
          if (to >= width) continue;
          next[s + (a.top ? 1 : 0)][to] += ways[s][x];
        }
      }
    }
    ways = std::move(next);
    ++seen;
  }
  return ways;
}

BigCount lookup(const GroupWays& ways, std::int64_t r, int s) {
  if (s < 0 || s >= static_cast<int>(ways.size()) || r < 0) return 0;
  if (r >= static_cast<std::int64_t>(ways[s].size())) return 0;
  return ways[s][r];
}

// Global table over groups: row s' holds counts by cost.
using ScoreCostTable = std::vector<std::vector<BigCount>>;

// new[s' + s''][x + y] += old[s'][x] * local[s''][y], restricted to the s''
// accepted by `keep`.
template <typename Keep>
void fold_group(const ScoreCostTable& old, const GroupWays& local, ScoreCostTable& out, Keep keep) {
  const std::size_t width = out.front().size();
  for (std::size_t s1 = 0; s1 < old.size(); ++s1) {
    for (std::size_t x = 0; x < width; ++x) {
      if (sgn(old[s1][x]) == 0) continue;
      for (std::size_t s2 = 0; s2 < local.size(); ++s2) {
        if (!keep(static_cast<int>(s2))) continue;
        if (s1 + s2 >= out.size()) continue;
        for (std::size_t y = 0; x + y < width; ++y) {
          if (sgn(local[s2][y]) == 0) continue;
          mpz_addmul(out[s1 + s2][x + y].get_mpz_t(), old[s1][x].get_mpz_t(), local[s2][y].get_mpz_t());
        }
      }
    }
  }
}

}  // namespace

GroupWays vgc_shift_plus_table(const Election& e, VoterGroup group, std::int64_t max_cost, CandidateId p,
                               const CostFunction& costs) {
  check_costs(e, costs);
  if (max_cost < 0) throw std::invalid_argument("vgc_shift_plus: negative budget");
  return group_table(group, max_cost, [&](int voter) { return forward_actions(e.vote(voter), voter, p, costs); });
}

BigCount vgc_shift_plus(const Election& e, VoterGroup group, std::int64_t r, CandidateId p, int s,
                        const CostFunction& costs) {
  if (r < 0) return 0;
  return lookup(vgc_shift_plus_table(e, group, r, p, costs), r, s);
}

GroupWays vgc_shift_minus_table(const Election& e, VoterGroup group, std::int64_t max_cost, CandidateId p,
                                const CostFunction& costs) {
  check_costs(e, costs);
  if (max_cost < 0) throw std::invalid_argument("vgc_shift_minus: negative budget");
  CandidateId d = -1;
  for (int voter : group) {
    const Vote& v = e.vote(voter);
    if (v.size() < 2) throw std::invalid_argument("vgc_shift_minus: needs at least two candidates");
    const CandidateId choice = v.top() == p ? v.at(1) : v.top();
    if (d == -1) d = choice;
    if (choice != d) {
      throw std::invalid_argument("vgc_shift_minus: voters in a group must share their non-p choice");
    }
  }
  return group_table(group, max_cost, [&](int voter) { return backward_actions(e.vote(voter), voter, p, costs); });
}

BigCount vgc_shift_minus(const Election& e, VoterGroup group, std::int64_t r, CandidateId p, int s,
                         const CostFunction& costs) {
  if (r < 0) return 0;
  return lookup(vgc_shift_minus_table(e, group, r, p, costs), r, s);
}

BigCount count_plurality_shift_constructive(const Election& e, CandidateId p, std::int64_t r,
                                            const CostFunction& costs) {
  const int m = e.candidate_count();
  const int n = e.voter_count();
  if (p < 0 || p >= m) throw std::out_of_range("count_plurality_shift_constructive: candidate out of range");
  if (r < 0) throw std::invalid_argument("count_plurality_shift_constructive: negative budget");
  check_costs(e, costs);

  // Voters that already rank p first can only take the empty shift; the rest
  // are grouped by their top choice.
  std::map<CandidateId, std::vector<int>> groups;
  int base = 0;
  for (int i = 0; i < n; ++i) {
    if (e.vote(i).top() == p) {
      ++base;
    } else {
      groups[e.vote(i).top()].push_back(i);
    }
  }
  const int movable = n - base;
  const std::size_t width = static_cast<std::size_t>(r) + 1;

  std::vector<GroupWays> locals;
  std::vector<int> sizes;
  for (const auto& [top, members] : groups) {
    locals.push_back(vgc_shift_plus_table(e, members, r, p, costs));
    sizes.push_back(static_cast<int>(members.size()));
  }

  BigCount total = 0;
  for (int target = base; target <= base + movable; ++target) {
    ScoreCostTable table(movable + 1, std::vector<BigCount>(width, 0));
    table[0][0] = 1;
    for (std::size_t g = 0; g < locals.size(); ++g) {
      ScoreCostTable next(movable + 1, std::vector<BigCount>(width, 0));
      const int size = sizes[g];
      fold_group(table, locals[g], next, [&](int gained) { return size - gained <= target; });
      table = std::move(next);
    }
    total += table[target - base][r];
  }
  return total;
}

BigCount count_plurality_shift_destructive(const Election& e, CandidateId p, std::int64_t r,
                                           const CostFunction& costs) {
  const int m = e.candidate_count();
  const int n = e.voter_count();
  if (p < 0 || p >= m) throw std::out_of_range("count_plurality_shift_destructive: candidate out of range");
  if (r < 0) throw std::invalid_argument("count_plurality_shift_destructive: negative budget");
  check_costs(e, costs);
  if (m == 1) return 0;  // p is the only candidate and always wins

  std::map<CandidateId, std::vector<int>> groups;
  int base = 0;
  for (int i = 0; i < n; ++i) {
    const Vote& v = e.vote(i);
    if (v.top() == p) ++base;
    groups[v.top() == p ? v.at(1) : v.top()].push_back(i);
  }
  const std::size_t width = static_cast<std::size_t>(r) + 1;

  std::vector<GroupWays> locals;
  std::vector<int> sizes;
  for (const auto& [choice, members] : groups) {
    locals.push_back(vgc_shift_minus_table(e, members, r, p, costs));
    sizes.push_back(static_cast<int>(members.size()));
  }

  BigCount total = 0;
  for (int target = 0; target <= base; ++target) {
    // beaten[false]: no non-p choice above target yet; beaten[true]: some is.
    ScoreCostTable clear(base + 1, std::vector<BigCount>(width, 0));
    ScoreCostTable beaten(base + 1, std::vector<BigCount>(width, 0));
    clear[0][0] = 1;
    for (std::size_t g = 0; g < locals.size(); ++g) {
      ScoreCostTable next_clear(base + 1, std::vector<BigCount>(width, 0));
      ScoreCostTable next_beaten(base + 1, std::vector<BigCount>(width, 0));
      const int size = sizes[g];
      fold_group(clear, locals[g], next_clear, [&](int kept) { return size - kept <= target; });
      fold_group(clear, locals[g], next_beaten, [&](int kept) { return size - kept > target; });
      fold_group(beaten, locals[g], next_beaten, [](int) { return true; });
      clear = std::move(next_clear);
      beaten = std::move(next_beaten);
    }
    total += beaten[target][r];
  }
  return total;
}

}  // namespace swapcount
