// Borda #Constructive Shift-Bribery, FPT in the budget.
//
// Guess the total number of positions L that p moves; then p ends with
// score(p) + L points. A candidate whose score exceeds that is critical and
// must be passed in at least score(c) - score(p) - L votes. A pass costs
// one position, so more than L units of total demand rules the guess out.
// For unit costs L equals r.

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <tuple>

#include "swapcount/bribery.hpp"

namespace swapcount {

namespace {

struct State {
  std::int64_t cost;
  int shift;
  std::vector<int> demand;
  friend auto operator<=>(const State&, const State&) = default;
};

BigCount count_for_total_shift(const Election& e, CandidateId p, std::int64_t r, const CostFunction& costs,
                               int total_shift, const std::vector<std::int64_t>& borda) {
  const int m = e.candidate_count();
  const int n = e.voter_count();
  const std::int64_t final_score = borda[p] + total_shift;

  std::vector<CandidateId> critical;
  std::vector<int> demand;
  int total_demand = 0;
  for (CandidateId c = 0; c < m; ++c) {
    if (c == p || borda[c] <= final_score) continue;
    critical.push_back(c);
    demand.push_back(static_cast<int>(borda[c] - final_score));
    total_demand += demand.back();
  }
  if (total_demand > total_shift) return 0;

  // Largest shift still available from voter i onward.
  std::vector<int> reach(n + 1, 0);
  for (int i = n - 1; i >= 0; --i) {
    reach[i] = reach[i + 1] + std::min(e.vote(i).position_of(p), costs.max_shift(i));
  }
  if (reach[0] < total_shift) return 0;

  std::map<State, BigCount> layer;
  layer.emplace(State{0, 0, demand}, 1);
  for (int i = 0; i < n; ++i) {
    const Vote& v = e.vote(i);
    const int options = std::min(v.position_of(p), costs.max_shift(i));
    std::vector<GainVector> gains;
    for (int l = 0; l <= options; ++l) gains.push_back(gain_vector(v, p, l, critical));

    std::map<State, BigCount> next;
    for (const auto& [state, ways] : layer) {
      for (int l = 0; l <= options; ++l) {
        const std::int64_t cost = state.cost + costs(i, l);
        const int shift = state.shift + l;
        if (cost > r || shift > total_shift) continue;
        if (shift + reach[i + 1] < total_shift) continue;
        State to{cost, shift, state.demand};
        int left = 0;
        for (std::size_t k = 0; k < critical.size(); ++k) {
          to.demand[k] = std::max(0, to.demand[k] - gains[l].g[k]);
          left += to.demand[k];
        }
        if (left > total_shift - shift) continue;
        next[std::move(to)] += ways;
      }
    }
    layer = std::move(next);
  }
  auto it = layer.find(State{r, total_shift, std::vector<int>(critical.size(), 0)});
  return it == layer.end() ? BigCount(0) : it->second;
}

}  // namespace

BigCount count_borda_shift_constructive(const Election& e, CandidateId p, std::int64_t r, const CostFunction& costs,
                                        const Guards& guards) {
  const int m = e.candidate_count();
  const int n = e.voter_count();
  if (p < 0 || p >= m) throw std::out_of_range("count_borda_shift_constructive: candidate out of range");
  if (r < 0) throw std::invalid_argument("count_borda_shift_constructive: negative budget");
  if (costs.voters() != n) throw std::invalid_argument("count_borda_shift_constructive: cost function size mismatch");
  if (r > guards.max_radius_fpt_r) {
    throw GuardExceeded("max-radius-fpt-r",
                        "Borda #Constructive Shift-Bribery is exponential in the budget; r=" + std::to_string(r) +
                            " exceeds the limit of " + std::to_string(guards.max_radius_fpt_r));
  }

  const std::vector<std::int64_t> borda = scores(e, Rule::Borda);
  if (costs.is_unit()) return count_for_total_shift(e, p, r, costs, static_cast<int>(r), borda);

  int most = 0;
  for (int i = 0; i < n; ++i) most += std::min(e.vote(i).position_of(p), costs.max_shift(i));
  BigCount total = 0;
  for (int shift = 0; shift <= most; ++shift) total += count_for_total_shift(e, p, r, costs, shift, borda);
  return total;
}

}  // namespace swapcount
