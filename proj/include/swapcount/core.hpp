#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace swapcount {

// Dense candidate index in [0, m).
using CandidateId = int;

// Number of adjacent swaps needed to reverse a vote over m candidates.
constexpr std::int64_t max_swaps(int m) {
  return static_cast<std::int64_t>(m) * (m - 1) / 2;
}

// A strict total order over candidates 0..m-1, most preferred first.
class Vote {
 public:
  Vote() = default;
  // Throws std::invalid_argument unless `ranking` is a permutation of 0..m-1.
  explicit Vote(std::vector<CandidateId> ranking);

  static Vote identity(int m);

  int size() const { return static_cast<int>(ranking_.size()); }
  CandidateId at(int position) const { return ranking_[position]; }
  CandidateId top() const { return ranking_.front(); }
  // 0 for the top-ranked candidate.
  int position_of(CandidateId c) const { return positions_[c]; }
  std::span<const CandidateId> ranking() const { return ranking_; }

  Vote reversed() const;

  friend bool operator==(const Vote& a, const Vote& b) { return a.ranking_ == b.ranking_; }
  friend auto operator<=>(const Vote& a, const Vote& b) { return a.ranking_ <=> b.ranking_; }

 private:
  std::vector<CandidateId> ranking_;
  std::vector<int> positions_;
};

class Election {
 public:
  // Names must be unique, votes nonempty and all of length names.size().
  Election(std::vector<std::string> names, std::vector<Vote> votes);
  // Candidates get default names "c0", "c1", ...
  Election(int m, std::vector<Vote> votes);

  int candidate_count() const { return static_cast<int>(names_.size()); }
  int voter_count() const { return static_cast<int>(votes_.size()); }
  const Vote& vote(int i) const { return votes_[i]; }
  std::span<const Vote> votes() const { return votes_; }
  const std::vector<std::string>& names() const { return names_; }

  // Same candidates, different votes.
  Election with_votes(std::vector<Vote> votes) const;

  friend bool operator==(const Election& a, const Election& b) {
    return a.names_ == b.names_ && a.votes_ == b.votes_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Vote> votes_;
};

enum class Rule { Plurality, Borda };

const char* rule_name(Rule rule);
// Accepts "plurality" / "borda" (case-insensitive); throws std::invalid_argument.
Rule parse_rule(const std::string& text);

std::int64_t score(const Election& e, Rule rule, CandidateId c);
std::vector<std::int64_t> scores(const Election& e, Rule rule);
// All candidates attaining the maximum score, ascending by index.
std::vector<CandidateId> winners(const Election& e, Rule rule);
bool is_winner(const Election& e, Rule rule, CandidateId c);

// Kendall tau distance (inversion count), O(m log m).
std::int64_t swap_distance(const Vote& u, const Vote& v);
std::int64_t election_swap_distance(const Election& a, const Election& b);

// Inversions of a sequence of distinct integers, by merge counting.
std::int64_t count_inversions(std::span<const int> sequence);

}  // namespace swapcount
