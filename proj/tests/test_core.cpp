#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "swapcount/core.hpp"
#include "swapcount/election_io.hpp"

using namespace swapcount;

namespace {
// a=0, b=1, c=2
const Vote abc({0, 1, 2});
const Vote bac({1, 0, 2});
const Vote bca({1, 2, 0});
const Vote cba({2, 1, 0});
}  // namespace

TEST_CASE("vote validation") {
  CHECK_THROWS_AS(Vote({0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Vote({0, 3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Election(3, {abc, Vote({0, 1})}), std::invalid_argument);
  CHECK_THROWS_AS(Election(3, {}), std::invalid_argument);
  CHECK(abc.position_of(2) == 2);
  CHECK(abc.reversed() == cba);
}

TEST_CASE("scores") {
  CHECK(score(Election(3, {abc}), Rule::Borda, 0) == 2);
  CHECK(score(Election(3, {abc, bac}), Rule::Borda, 1) == 3);
  CHECK(score(Election(3, {abc, bac}), Rule::Plurality, 2) == 0);
}

TEST_CASE("winners") {
  CHECK(winners(Election(3, {abc}), Rule::Plurality) == std::vector<CandidateId>{0});
  CHECK(winners(Election(2, {Vote({0, 1}), Vote({1, 0})}), Rule::Plurality) == std::vector<CandidateId>{0, 1});
  const Election e(3, {abc, bac, bca});
  CHECK(scores(e, Rule::Borda) == std::vector<std::int64_t>{3, 5, 1});
  CHECK(winners(e, Rule::Borda) == std::vector<CandidateId>{1});
  CHECK(is_winner(e, Rule::Plurality, 1));
  CHECK_FALSE(is_winner(e, Rule::Plurality, 0));
}

TEST_CASE("score sums") {
  Mt64Source rng(3);
  for (int k = 0; k < 50; ++k) {
    const int m = oracle::between(1, 7, rng);
    const int n = oracle::between(1, 9, rng);
    const Election e = oracle::random_election(m, n, rng);
    std::int64_t borda = 0, plurality = 0;
    for (CandidateId c = 0; c < m; ++c) {
      borda += score(e, Rule::Borda, c);
      plurality += score(e, Rule::Plurality, c);
    }
    CHECK(borda == n * max_swaps(m));
    CHECK(plurality == n);
    for (CandidateId c = 0; c < m; ++c) {
      CHECK(is_winner(e, Rule::Borda, c) == oracle::wins(e, true, c));
      CHECK(is_winner(e, Rule::Plurality, c) == oracle::wins(e, false, c));
    }
  }
}

TEST_CASE("swap distance") {
  CHECK(swap_distance(abc, abc) == 0);
  CHECK(swap_distance(abc, bac) == 1);
  CHECK(swap_distance(abc, cba) == 3);
  CHECK_THROWS_AS(swap_distance(abc, Vote({0, 1})), std::invalid_argument);

  CHECK(election_swap_distance(Election(3, {abc, bac}), Election(3, {abc, bac})) == 0);
  CHECK(election_swap_distance(Election(3, {abc, abc}), Election(3, {bac, bca})) == 3);
  const Election e(3, {abc, bca});
  CHECK(election_swap_distance(e, Election(3, {abc.reversed(), bca.reversed()})) == 6);
}

TEST_CASE("swap distance is a metric and matches the pairwise count") {
  Mt64Source rng(11);
  for (int k = 0; k < 300; ++k) {
    const int m = oracle::between(1, 6, rng);
    const Election e = oracle::random_election(m, 3, rng);
    const Vote &u = e.vote(0), &v = e.vote(1), &w = e.vote(2);
    CHECK(swap_distance(u, v) == oracle::naive_distance(u, v));
    CHECK(swap_distance(u, v) == swap_distance(v, u));
    CHECK((swap_distance(u, v) == 0) == (u == v));
    CHECK(swap_distance(u, w) <= swap_distance(u, v) + swap_distance(v, w));
  }
  std::vector<int> big(200);
  for (int i = 0; i < 200; ++i) big[i] = 199 - i;
  CHECK(count_inversions(big) == 199 * 200 / 2);
}

TEST_CASE("native election format round trip") {
  const Election e({"alice", "bob, jr", "carol"}, {abc, bca, cba});
  std::stringstream buffer;
  write_election(buffer, e, {"seed=1"});
  CHECK(buffer.str().rfind("# seed=1\n3 3\n", 0) == 0);
  CHECK(read_election(buffer) == e);
}

TEST_CASE("native election format errors") {
  std::istringstream missing("3 2\n0,a\n1,b\n2,c\n0,1,2\n");
  CHECK_THROWS_AS(read_election(missing), FormatError);
  std::istringstream short_vote("2 1\n0,a\n1,b\n0\n");
  CHECK_THROWS_AS(read_election(short_vote), FormatError);
  std::istringstream repeated("2 1\n0,a\n1,b\n1,1\n");
  CHECK_THROWS_AS(read_election(repeated), FormatError);
  std::istringstream duplicate_names("2 1\n0,a\n1,a\n0,1\n");
  CHECK_THROWS_AS(read_election(duplicate_names), FormatError);
}

TEST_CASE("PrefLib soc reader") {
  std::istringstream in(
      "# FILE NAME: 00004-00000001.soc\n"
      "# NUMBER ALTERNATIVES: 3\n"
      "# ALTERNATIVE NAME 1: Ann\n"
      "# ALTERNATIVE NAME 2: Ben\n"
      "# ALTERNATIVE NAME 3: Ann\n"
      "2: 2,1,3\n"
      "1: 3,2,1\n");
  const Election e = read_preflib_soc(in);
  REQUIRE(e.voter_count() == 3);
  CHECK(e.vote(0) == bac);
  CHECK(e.vote(1) == bac);
  CHECK(e.vote(2) == cba);
  CHECK(e.names()[0] == "Ann");
  CHECK(e.names()[2] == "Ann #3");

  std::istringstream partial("# NUMBER ALTERNATIVES: 3\n1: 2,1\n");
  CHECK_THROWS_AS(read_preflib_soc(partial), FormatError);
}

TEST_CASE("rule names") {
  CHECK(parse_rule("Borda") == Rule::Borda);
  CHECK(std::string(rule_name(Rule::Plurality)) == "plurality");
  CHECK_THROWS_AS(parse_rule("copeland"), std::invalid_argument);
}
