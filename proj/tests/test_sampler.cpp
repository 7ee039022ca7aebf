#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "swapcount/sampler.hpp"

using namespace swapcount;

TEST_CASE("Lehmer codes") {
  for (const auto& p : oracle::permutations(5)) {
    const InversionTable t = inversion_table_of(p);
    CHECK(t.valid());
    CHECK(t.inversions() == oracle::naive_inversions(p));
    CHECK(permutation_from(t) == p);
  }
  CHECK_THROWS_AS(permutation_from(InversionTable{{3, 0, 0}}), std::invalid_argument);
}

TEST_CASE("allocation examples") {
  const CountingTables tables = CountingTables::build(3, 2);
  const CountingTables small = CountingTables::build(2, 2);
  Mt64Source rng(5);
  CHECK(sample_allocation(3, 2, 0, tables, rng) == SwapAllocation{0, 0});
  for (int k = 0; k < 20; ++k) CHECK(sample_allocation(2, 2, 2, small, rng) == SwapAllocation{1, 1});
  int first = 0;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) {
    const auto a = sample_allocation(3, 2, 1, tables, rng);
    CHECK(a[0] + a[1] == 1);
    first += a[0];
  }
  CHECK(std::abs(first - draws / 2) < 4 * std::sqrt(draws * 0.25));
  CHECK_THROWS_AS(sample_allocation(3, 2, 7, tables, rng), std::out_of_range);
  CHECK_THROWS_AS(sample_allocation(3, 3, 1, tables, rng), std::invalid_argument);
}

TEST_CASE("inversion table examples") {
  const MahonianTable mahonian(6);
  Mt64Source rng(6);
  CHECK(sample_inversion_table(4, 0, mahonian, rng).t == std::vector<int>{0, 0, 0, 0});
  CHECK(sample_inversion_table(3, 3, mahonian, rng).t == std::vector<int>{2, 1, 0});
  std::map<std::vector<int>, int> seen;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) ++seen[sample_inversion_table(3, 1, mahonian, rng).t];
  REQUIRE(seen.size() == 2);
  for (const auto& [t, count] : seen) CHECK(std::abs(count - draws / 2) < 3 * std::sqrt(draws * 0.25));
}

TEST_CASE("inversion tables are uniform over each Mahonian class") {
  const MahonianTable mahonian(5);
  Mt64Source rng(8);
  for (std::int64_t r = 0; r <= max_swaps(5); ++r) {
    std::map<std::vector<int>, int> seen;
    const int draws = 3000;
    for (int k = 0; k < draws; ++k) {
      const auto t = sample_inversion_table(5, r, mahonian, rng);
      CHECK(t.valid());
      CHECK(t.inversions() == r);
      ++seen[t.t];
    }
    const double classes = mahonian.at(5, r).get_d();
    CHECK(seen.size() == static_cast<std::size_t>(classes));
    const double p = 1.0 / classes;
    for (const auto& [t, count] : seen) CHECK(std::abs(count - draws * p) <= 5 * std::sqrt(draws * p * (1 - p)) + 1);
  }
}

TEST_CASE("perturb_vote") {
  const Vote v({2, 0, 3, 1});
  CHECK(perturb_vote(v, InversionTable{{0, 0, 0, 0}}) == v);
  CHECK(perturb_vote(v, InversionTable{{3, 2, 1, 0}}) == v.reversed());
  const Vote abc({0, 1, 2});
  std::vector<Vote> outputs;
  for (const auto& t : {InversionTable{{1, 0, 0}}, InversionTable{{0, 1, 0}}}) outputs.push_back(perturb_vote(abc, t));
  std::sort(outputs.begin(), outputs.end());
  CHECK(outputs == std::vector<Vote>{Vote({0, 2, 1}), Vote({1, 0, 2})});
  for (const auto& p : oracle::permutations(5)) {
    const InversionTable t = inversion_table_of(p);
    CHECK(swap_distance(Vote::identity(5), perturb_vote(Vote::identity(5), t)) == t.inversions());
  }
}

TEST_CASE("samples sit at the requested distance") {
  const CountingTables tables = CountingTables::build(4, 3);
  Mt64Source rng(9);
  const Election e = oracle::random_election(4, 3, rng);
  CHECK(sample_election_at_distance(e, 0, tables, rng) == e);
  for (int k = 0; k < 2000; ++k) {
    const auto r = static_cast<std::int64_t>(rng.uniform_below(19));
    CHECK(election_swap_distance(e, sample_election_at_distance(e, r, tables, rng)) == r);
  }
}

TEST_CASE("sampler covers R(E,2) uniformly for m=3, n=2") {
  const CountingTables tables = CountingTables::build(3, 2);
  const Election e(3, {Vote({0, 1, 2}), Vote({1, 2, 0})});
  const auto support = oracle::ball_surface(e, 2);
  REQUIRE(BigCount(static_cast<unsigned long>(support.size())) == tables.elections.at(2, 2));
  std::map<std::vector<Vote>, int> seen;
  Mt64Source rng(10);
  const int draws = 20000;
  for (int k = 0; k < draws; ++k) {
    const Election x = sample_election_at_distance(e, 2, tables, rng);
    ++seen[std::vector<Vote>(x.votes().begin(), x.votes().end())];
  }
  CHECK(seen.size() == support.size());
  const double p = 1.0 / support.size();
  for (const auto& x : support) {
    const int count = seen[std::vector<Vote>(x.votes().begin(), x.votes().end())];
    CHECK(std::abs(count - draws * p) <= 4 * std::sqrt(draws * p * (1 - p)));
  }
}

TEST_CASE("sampling is deterministic under a seed") {
  const CountingTables tables = CountingTables::build(6, 5);
  Mt64Source a(77), b(77), g(1);
  const Election e = oracle::random_election(6, 5, g);
  for (int k = 0; k < 50; ++k) CHECK(sample_election_at_distance(e, 20, tables, a) == sample_election_at_distance(e, 20, tables, b));
}

TEST_CASE("big-integer uniform draws stay in range") {
  Mt64Source rng(12);
  const BigCount bound = power(BigCount(10), 40) + 7;
  for (int k = 0; k < 200; ++k) {
    const BigCount x = rng.uniform_below(bound);
    CHECK(x >= 0);
    CHECK(x < bound);
  }
  for (int k = 0; k < 200; ++k) CHECK(rng.uniform_below(BigCount(1)) == 0);
}
