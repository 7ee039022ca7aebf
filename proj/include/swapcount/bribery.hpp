#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swapcount/bigcount.hpp"
#include "swapcount/core.hpp"
#include "swapcount/tables.hpp"

namespace swapcount {

// Limits for the algorithms that are exponential in a parameter.
struct Guards {
  int max_voters_fpt_n = 10;                      // Plurality #Swap-Bribery
  int max_radius_fpt_r = 12;                      // Borda #Constructive Shift-Bribery
  std::uint64_t oracle_state_budget = 10'000'000;  // brute-force enumerations
};

class GuardExceeded : public std::runtime_error {
 public:
  GuardExceeded(std::string guard, const std::string& message)
      : std::runtime_error(message), guard_(std::move(guard)) {}
  const std::string& guard() const { return guard_; }

 private:
  std::string guard_;
};

// Raised for problem/rule combinations that have no exact algorithm here.
class UnsupportedProblem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-voter cost of shifting the designated candidate by `shift` positions.
/// cost(v, 0) == 0 and costs are nondecreasing in the shift amount.
class CostFunction {
 public:
  static CostFunction unit(int n, int m);
  // Row v lists the costs for shifts 0, 1, 2, ... of voter v.
  explicit CostFunction(std::vector<std::vector<std::int64_t>> costs);

  int voters() const { return static_cast<int>(costs_.size()); }
  // Largest shift amount with a defined cost for voter v.
  int max_shift(int voter) const { return static_cast<int>(costs_[voter].size()) - 1; }
  std::int64_t operator()(int voter, int shift) const { return costs_[voter][shift]; }
  bool is_unit() const;

 private:
  std::vector<std::vector<std::int64_t>> costs_;
};

enum class ShiftMode { Constructive, Destructive };

const char* mode_name(ShiftMode mode);
ShiftMode parse_mode(const std::string& text);

// Indices of the voters of an election that form one group.
using VoterGroup = std::span<const int>;

// ways[s][x]: number of shift assignments inside a group with total cost x
// that leave the designated candidate on top in exactly s of its votes.
using GroupWays = std::vector<std::vector<BigCount>>;

/// Which critical candidates the designated candidate passes when shifted
/// forward by a given amount in one vote. `valid` is false for shift amounts
/// that are not available in that vote.
struct GainVector {
  bool valid = true;
  std::vector<int> g;
};

GainVector gain_vector(const Vote& v, CandidateId p, int shift, std::span<const CandidateId> critical);

// --- #Swap-Bribery, Plurality, unit prices --------------------------------

// Ways to perform exactly r swaps inside the group so that every vote in it
// ranks p first. `mahonian` must cover m - 1.
BigCount vgc_swap_plurality(const Election& e, VoterGroup group, std::int64_t r, CandidateId p,
                            const MahonianTable& mahonian);

// |{E' in R(E, r) : p is a Plurality winner of E'}|. Exponential in the number
// of voters; throws GuardExceeded above guards.max_voters_fpt_n.
BigCount count_plurality_swap_bribery(const Election& e, CandidateId p, std::int64_t r,
                                      const MahonianTable& mahonian, const Guards& guards = {});
BigCount count_plurality_swap_bribery(const Election& e, CandidateId p, std::int64_t r,
                                      const Guards& guards = {});

// Exhaustive enumeration of R(E, r); works for both rules.
BigCount brute_force_count_swap(const Election& e, CandidateId p, std::int64_t r, Rule rule,
                                const Guards& guards = {});

// --- #Shift-Bribery, Plurality ---------------------------------------------

GroupWays vgc_shift_plus_table(const Election& e, VoterGroup group, std::int64_t max_cost, CandidateId p,
                               const CostFunction& costs);
BigCount vgc_shift_plus(const Election& e, VoterGroup group, std::int64_t r, CandidateId p, int s,
                        const CostFunction& costs);

// Group precondition: every voter either ranks p first and d second, or
// ranks d first, for a single candidate d. Throws std::invalid_argument
// otherwise.
GroupWays vgc_shift_minus_table(const Election& e, VoterGroup group, std::int64_t max_cost, CandidateId p,
                                const CostFunction& costs);
BigCount vgc_shift_minus(const Election& e, VoterGroup group, std::int64_t r, CandidateId p, int s,
                         const CostFunction& costs);

BigCount count_plurality_shift_constructive(const Election& e, CandidateId p, std::int64_t r,
                                            const CostFunction& costs);
BigCount count_plurality_shift_destructive(const Election& e, CandidateId p, std::int64_t r,
                                           const CostFunction& costs);

// --- #Shift-Bribery, Borda ---------------------------------------------------

// Exponential in r; throws GuardExceeded above guards.max_radius_fpt_r.
BigCount count_borda_shift_constructive(const Election& e, CandidateId p, std::int64_t r,
                                        const CostFunction& costs, const Guards& guards = {});

// Enumerates every per-voter shift vector of total cost exactly r. The only
// exact route for Borda destructive shift-bribery.
BigCount brute_force_count_shift(const Election& e, CandidateId p, std::int64_t r, const CostFunction& costs,
                                 ShiftMode mode, Rule rule, const Guards& guards = {});

}  // namespace swapcount
