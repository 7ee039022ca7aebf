#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "swapcount/bribery.hpp"
#include "swapcount/experiments.hpp"

using namespace swapcount;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RadiusEstimate radius(double rho, std::int64_t wins, std::int64_t samples) {
  return RadiusEstimate{rho, 0, samples, {wins, samples - wins}};
}

}  // namespace

TEST_CASE("normalized radii") {
  CHECK(normalized_to_swaps(0.0, 10, 100) == 0);
  CHECK(normalized_to_swaps(1.0, 10, 100) == 4500);
  CHECK(normalized_to_swaps(0.05, 10, 100) == 225);
  // 0.5 * 3 = 1.5 -> 2 and 0.5 * 5 = 2.5 -> 2 (ties to even)
  CHECK(normalized_to_swaps(0.5, 3, 1) == 2);
  CHECK(normalized_to_swaps(0.5, 2, 5) == 2);
  CHECK(normalized_to_swaps(0.1, 10, 50) == 225);
  CHECK_THROWS_AS(normalized_to_swaps(1.5, 3, 3), std::invalid_argument);
}

TEST_CASE("distance grids") {
  const DistanceGrid coarse = DistanceGrid::coarse();
  CHECK(coarse.size() == 20);
  CHECK(coarse[0] == doctest::Approx(0.05));
  CHECK(coarse[19] == doctest::Approx(1.0));
  const DistanceGrid fine = DistanceGrid::fine();
  CHECK(fine.size() == 40);
  CHECK(fine[39] == doctest::Approx(0.5));
  CHECK_THROWS_AS(DistanceGrid({0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(DistanceGrid({0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0,0.1"), std::invalid_argument);
  CHECK(parse_grid("0.1,0.2").size() == 2);
}

TEST_CASE("thresholds") {
  EstimateResult res{"x", Rule::Plurality, 0, {radius(0.05, 100, 100), radius(0.1, 100, 100)}};
  CHECK_FALSE(threshold(res, 0).has_value());
  res.radii = {radius(0.05, 90, 100), radius(0.10, 60, 100), radius(0.15, 40, 100), radius(0.2, 70, 100)};
  CHECK(*threshold(res, 0) == doctest::Approx(0.15));
  res.radii = {radius(0.05, 50, 100), radius(0.10, 49, 100)};
  CHECK(*threshold(res, 0) == doctest::Approx(0.10));
}

TEST_CASE("score margins") {
  std::vector<Vote> votes;
  for (int i = 0; i < 40; ++i) votes.push_back(Vote({0, 1, 2}));
  for (int i = 0; i < 30; ++i) votes.push_back(Vote({1, 0, 2}));
  for (int i = 0; i < 30; ++i) votes.push_back(Vote({2, 1, 0}));
  CHECK(*score_margin(Election(3, votes), Rule::Plurality) == 10);
  CHECK_FALSE(score_margin(Election(2, {Vote({0, 1}), Vote({1, 0})}), Rule::Plurality).has_value());
  CHECK(*score_margin(Election(3, {Vote({0, 1, 2}), Vote({1, 0, 2}), Vote({1, 2, 0})}), Rule::Borda) == 2);
}

TEST_CASE("estimates at small radius and against exact probabilities") {
  const Election e(3, {Vote({0, 1, 2}), Vote({1, 0, 2})});
  const CountingTables tables = CountingTables::build(3, 2);
  Mt64Source rng(41);
  const Rule rules[] = {Rule::Plurality, Rule::Borda};
  const auto at_zero = estimate_radius(e, rules, 0, 50, tables, rng);
  CHECK(at_zero[0].frequency(0) == 1.0);
  CHECK(at_zero[0].frequency(1) == 1.0);
  CHECK(at_zero[1].frequency(0) == 1.0);

  const std::int64_t samples = 20000;
  for (std::int64_t r = 1; r <= 3; ++r) {
    const auto est = estimate_radius(e, rules, r, samples, tables, rng);
    const double total = tables.elections.at(2, r).get_d();
    for (int q = 0; q < 2; ++q) {
      double sum = 0;
      for (CandidateId c = 0; c < 3; ++c) {
        const double p = oracle::count_winning(e, c, r, q == 1) / total;
        CHECK(std::abs(est[q].frequency(c) - p) <= 4 * std::sqrt(p * (1 - p) / samples) + 1e-12);
        sum += est[q].frequency(c);
      }
      CHECK(sum >= 1.0);
    }
  }
}

TEST_CASE("experiment pipeline is deterministic and independent of the worker count") {
  const auto dir = std::filesystem::temp_directory_path() / "swapcount-test-experiment";
  std::filesystem::remove_all(dir);
  const auto specs = desk_dataset(4, 6, 2, 8);
  const auto manifest = write_dataset(dir, specs);
  const auto dataset = load_dataset(manifest);
  ExperimentConfig config;
  config.grid = DistanceGrid({0.1, 0.3, 0.6});
  config.samples = 40;
  config.jobs = 1;
  const ExperimentOutput one = run_experiment(dataset, config);
  config.jobs = 3;
  const ExperimentOutput three = run_experiment(dataset, config);
  write_estimates_csv(dir / "a.csv", one.estimates);
  write_estimates_csv(dir / "b.csv", three.estimates);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(one.estimates.size() == 8 * 2 * 3 * 4);
  CHECK(one.summary.size() + one.excluded.size() == 16);

  const auto reread = read_estimates_csv(dir / "a.csv");
  const ExperimentOutput again = summarize(dataset, reread);
  REQUIRE(again.summary.size() == one.summary.size());
  for (std::size_t i = 0; i < again.summary.size(); ++i) {
    CHECK(again.summary[i].election_id == one.summary[i].election_id);
    CHECK(again.summary[i].threshold == one.summary[i].threshold);
  }
  CHECK(slurp(dir / "a.csv").rfind("election_id,rule,radius_norm,radius_swaps,candidate,wins,samples,frequency\n", 0) == 0);

  const ExperimentOutput empty = run_experiment({}, config);
  CHECK(empty.estimates.empty());
  CHECK(empty.summary.empty());
  std::filesystem::remove_all(dir);
}

TEST_CASE("Hoeffding bound behind the 500-sample choice") {
  CHECK(2.0 * std::exp(-2.0 * 500 * 0.1 * 0.1) < 0.001);
}
