#include "swapcount/core.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "swapcount/bigcount.hpp"

namespace swapcount {

BigCount factorial(int k) {
  BigCount result = 1;
  for (int i = 2; i <= k; ++i) result *= i;
  return result;
}

BigCount power(const BigCount& base, unsigned long exponent) {
  BigCount result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
  return result;
}

std::uint64_t low_word(const BigCount& value) {
  std::uint64_t word = 0;
  const std::size_t limbs = mpz_size(value.get_mpz_t());
  const int limb_bits = mp_bits_per_limb;
  for (std::size_t i = 0; i < limbs && i * limb_bits < 64; ++i) {
    word |= static_cast<std::uint64_t>(mpz_getlimbn(value.get_mpz_t(), i)) << (i * limb_bits);
  }
  return word;
}

Vote::Vote(std::vector<CandidateId> ranking) : ranking_(std::move(ranking)) {
  const int m = static_cast<int>(ranking_.size());
  if (m == 0) throw std::invalid_argument("vote must rank at least one candidate");
  positions_.assign(m, -1);
  for (int pos = 0; pos < m; ++pos) {
    const CandidateId c = ranking_[pos];
    if (c < 0 || c >= m || positions_[c] != -1) {
      throw std::invalid_argument("vote is not a permutation of 0.." + std::to_string(m - 1));
    }
    positions_[c] = pos;
  }
}

Vote Vote::identity(int m) {
  std::vector<CandidateId> ranking(m);
  for (int i = 0; i < m; ++i) ranking[i] = i;
  return Vote(std::move(ranking));
}

Vote Vote::reversed() const {
  return Vote(std::vector<CandidateId>(ranking_.rbegin(), ranking_.rend()));
}

Election::Election(std::vector<std::string> names, std::vector<Vote> votes)
    : names_(std::move(names)), votes_(std::move(votes)) {
  if (names_.empty()) throw std::invalid_argument("election needs at least one candidate");
  if (votes_.empty()) throw std::invalid_argument("election needs at least one voter");
  if (std::set<std::string>(names_.begin(), names_.end()).size() != names_.size()) {
    throw std::invalid_argument("candidate names must be unique");
  }
  for (const Vote& v : votes_) {
    if (v.size() != candidate_count()) {
      throw std::invalid_argument("vote length does not match candidate count");
    }
  }
}

static std::vector<std::string> default_names(int m) {
  std::vector<std::string> names;
  names.reserve(m);
  for (int i = 0; i < m; ++i) names.push_back("c" + std::to_string(i));
  return names;
}

Election::Election(int m, std::vector<Vote> votes) : Election(default_names(m), std::move(votes)) {}

Election Election::with_votes(std::vector<Vote> votes) const { return Election(names_, std::move(votes)); }

const char* rule_name(Rule rule) {
  switch (rule) {
    case Rule::Plurality: return "plurality";
    case Rule::Borda: return "borda";
  }
  return "?";
}

Rule parse_rule(const std::string& text) {
  std::string lower;
  for (char ch : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "plurality") return Rule::Plurality;
  if (lower == "borda") return Rule::Borda;
  throw std::invalid_argument("unknown rule '" + text + "' (expected plurality or borda)");
}

std::vector<std::int64_t> scores(const Election& e, Rule rule) {
  const int m = e.candidate_count();
  std::vector<std::int64_t> result(m, 0);
  for (const Vote& v : e.votes()) {
    if (rule == Rule::Plurality) {
      ++result[v.top()];
    } else {
      for (int pos = 0; pos < m; ++pos) result[v.at(pos)] += m - 1 - pos;
    }
  }
  return result;
}

std::int64_t score(const Election& e, Rule rule, CandidateId c) {
  if (c < 0 || c >= e.candidate_count()) throw std::out_of_range("candidate index out of range");
  std::int64_t total = 0;
  const int m = e.candidate_count();
  for (const Vote& v : e.votes()) {
    if (rule == Rule::Plurality) {
      total += v.top() == c ? 1 : 0;
    } else {
      total += m - 1 - v.position_of(c);
    }
  }
  return total;
}

std::vector<CandidateId> winners(const Election& e, Rule rule) {
  const auto s = scores(e, rule);
  const std::int64_t best = *std::max_element(s.begin(), s.end());
  std::vector<CandidateId> result;
  for (CandidateId c = 0; c < static_cast<int>(s.size()); ++c) {
    if (s[c] == best) result.push_back(c);
  }
  return result;
}

bool is_winner(const Election& e, Rule rule, CandidateId c) {
  const auto s = scores(e, rule);
  return s[c] == *std::max_element(s.begin(), s.end());
}

namespace {

std::int64_t merge_count(std::vector<int>& values, std::vector<int>& scratch, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t count = merge_count(values, scratch, lo, mid) + merge_count(values, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (values[j] < values[i]) {
      count += static_cast<std::int64_t>(mid - i);
      scratch[k++] = values[j++];
    } else {
      scratch[k++] = values[i++];
    }
  }
  while (i < mid) scratch[k++] = values[i++];
  while (j < hi) scratch[k++] = values[j++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, values.begin() + lo);
  return count;
}

}  // namespace

std::int64_t count_inversions(std::span<const int> sequence) {
  std::vector<int> values(sequence.begin(), sequence.end());
  std::vector<int> scratch(values.size());
  return merge_count(values, scratch, 0, values.size());
}

std::int64_t swap_distance(const Vote& u, const Vote& v) {
  if (u.size() != v.size()) throw std::invalid_argument("swap_distance: votes have different lengths");
  // Positions in u of v's ranking; inversions of that sequence are the
  // pairs the two votes order differently.
  std::vector<int> relabeled(v.size());
  for (int pos = 0; pos < v.size(); ++pos) relabeled[pos] = u.position_of(v.at(pos));
  return count_inversions(relabeled);
}

std::int64_t election_swap_distance(const Election& a, const Election& b) {
  if (a.candidate_count() != b.candidate_count() || a.voter_count() != b.voter_count()) {
    throw std::invalid_argument("election_swap_distance: elections differ in shape");
  }
  std::int64_t total = 0;
  for (int i = 0; i < a.voter_count(); ++i) total += swap_distance(a.vote(i), b.vote(i));
  return total;
}

}  // namespace swapcount
