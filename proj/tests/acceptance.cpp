// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Thresholds and sizes are fixed here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "oracles.hpp"
#include "swapcount/bribery.hpp"
#include "swapcount/cultures.hpp"
#include "swapcount/experiments.hpp"
#include "swapcount/sampler.hpp"
#include "swapcount/selfcheck.hpp"
#include "swapcount/tables.hpp"

using namespace swapcount;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::vector<std::int64_t>> cost_rows(int n, int m, bool unit, RandomSource& rng) {
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(m, 0));
  for (auto& row : rows) {
    for (int l = 1; l < m; ++l) row[l] = row[l - 1] + (unit ? 1 : oracle::between(1, 3, rng));
  }
  return rows;
}

Outcome mahonian_exactness() {
  const auto start = Clock::now();
  const MahonianTable table(7);
  for (int m = 1; m <= 7; ++m) {
    const auto census = oracle::inversion_census(m);
    for (std::int64_t r = 0; r <= max_swaps(m); ++r) {
      if (table.at(m, r) != census.at(r)) return {false, "mismatch at m=" + std::to_string(m) + " r=" + std::to_string(r)};
    }
  }
  const double t = seconds_since(start);
  return {t < 5.0, "m<=7 all r exact, " + format_fixed(t) + "s (limit 5s)"};
}

Outcome election_count_exactness() {
  const auto start = Clock::now();
  const MahonianTable mahonian(3);
  const ElectionCountTable table(mahonian, 3, 3);
  for (int n = 1; n <= 3; ++n) {
    std::map<std::int64_t, std::int64_t> census;
    const Election base(3, std::vector<Vote>(n, Vote::identity(3)));
    oracle::for_each_election(3, n, [&](const Election& x) { ++census[oracle::naive_election_distance(base, x)]; });
    for (std::int64_t r = 0; r <= 9; ++r) {
      const std::int64_t expected = census.count(r) ? census.at(r) : 0;
      if (table.value(n, r) != expected) {
        return {false, "mismatch at n=" + std::to_string(n) + " r=" + std::to_string(r)};
      }
    }
  }
  const double t = seconds_since(start);
  return {t < 30.0, "m=3 n<=3 r<=9 exact, " + format_fixed(t) + "s (limit 30s)"};
}

Outcome sampler_distance() {
  Mt64Source rng(101);
  std::map<int, CountingTables> tables;
  for (int m = 1; m <= 5; ++m) tables.emplace(m, CountingTables::build(m, 4));
  int good = 0;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) {
    const int m = oracle::between(1, 5, rng);
    const int n = oracle::between(1, 4, rng);
    const Election e = oracle::random_election(m, n, rng);
    const auto r = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(max_swaps(m) * n) + 1));
    const Election x = sample_election_at_distance(e, r, tables.at(m), rng);
    good += oracle::naive_election_distance(e, x) == r;
  }
  return {good == draws, std::to_string(good) + "/" + std::to_string(draws) + " at exact distance"};
}

Outcome sampler_uniformity() {
  Mt64Source rng(102);
  const CountingTables tables = CountingTables::build(3, 2);
  const Election e(3, {Vote({0, 1, 2}), Vote({2, 0, 1})});
  const int draws = 20000;
  bool pass = true;
  std::ostringstream detail;
  for (std::int64_t r : {1, 2, 3}) {
    const auto support = oracle::ball_surface(e, r);
    std::map<std::vector<Vote>, std::size_t> index;
    for (std::size_t i = 0; i < support.size(); ++i) {
      index[std::vector<Vote>(support[i].votes().begin(), support[i].votes().end())] = i;
    }
    std::vector<std::int64_t> observed(support.size(), 0);
    for (int k = 0; k < draws; ++k) {
      const Election x = sample_election_at_distance(e, r, tables, rng);
      const auto it = index.find(std::vector<Vote>(x.votes().begin(), x.votes().end()));
      if (it == index.end()) return {false, "sample outside R(E,r)"};
      ++observed[it->second];
    }
    const std::vector<double> expected(support.size(), static_cast<double>(draws) / support.size());
    const double stat = chi_square_statistic(observed, expected);
    const double critical = chi_square_critical(static_cast<int>(support.size()) - 1, 0.001);
    pass = pass && stat <= critical;
    detail << "r=" << r << " chi2=" << format_fixed(stat) << "<=" << format_fixed(critical) << " ";
  }
  return {pass, detail.str()};
}

Outcome swap_oracle() {
  const auto start = Clock::now();
  Mt64Source rng(103);
  const MahonianTable mahonian(4);
  const int instances = 250;
  int nonzero = 0;
  for (int k = 0; k < instances; ++k) {
    const int m = oracle::between(1, 4, rng);
    const int n = oracle::between(1, 3, rng);
    const Election e = oracle::random_election(m, n, rng);
    const CandidateId p = oracle::between(0, m - 1, rng);
    const std::int64_t r = oracle::between(0, 5, rng);
    const BigCount slow = brute_force_count_swap(e, p, r, Rule::Plurality);
    if (count_plurality_swap_bribery(e, p, r, mahonian) != slow) return {false, "mismatch on instance " + std::to_string(k)};
    nonzero += sgn(slow) != 0;
  }
  const double t = seconds_since(start);
  return {t < 120.0, std::to_string(instances) + " instances equal (" + std::to_string(nonzero) + " nonzero), " +
                         format_fixed(t) + "s (limit 120s)"};
}

Outcome shift_plurality_oracle() {
  Mt64Source rng(104);
  const int instances = 250;
  int nonzero = 0;
  for (int k = 0; k < instances; ++k) {
    const int m = oracle::between(1, 5, rng);
    const int n = oracle::between(1, 4, rng);
    const Election e = oracle::random_election(m, n, rng);
    const CandidateId p = oracle::between(0, m - 1, rng);
    const std::int64_t r = oracle::between(0, 4, rng);
    const CostFunction costs(cost_rows(n, m, false, rng));
    const BigCount con = brute_force_count_shift(e, p, r, costs, ShiftMode::Constructive, Rule::Plurality);
    const BigCount des = brute_force_count_shift(e, p, r, costs, ShiftMode::Destructive, Rule::Plurality);
    if (count_plurality_shift_constructive(e, p, r, costs) != con) return {false, "constructive mismatch #" + std::to_string(k)};
    if (count_plurality_shift_destructive(e, p, r, costs) != des) return {false, "destructive mismatch #" + std::to_string(k)};
    nonzero += (sgn(con) != 0) + (sgn(des) != 0);
  }
  return {true, std::to_string(instances) + " instances equal in both modes (" + std::to_string(nonzero) +
                    " nonzero counts)"};
}

Outcome shift_borda_oracle() {
  Mt64Source rng(105);
  const int instances = 250;
  int nonzero = 0;
  for (int k = 0; k < instances; ++k) {
    const int m = oracle::between(1, 6, rng);
    const int n = oracle::between(1, 5, rng);
    const Election e = oracle::random_election(m, n, rng);
    const CandidateId p = oracle::between(0, m - 1, rng);
    const std::int64_t r = oracle::between(0, 4, rng);
    const CostFunction costs(cost_rows(n, m, k % 2 == 0, rng));
    const BigCount slow = brute_force_count_shift(e, p, r, costs, ShiftMode::Constructive, Rule::Borda);
    if (count_borda_shift_constructive(e, p, r, costs) != slow) return {false, "mismatch on instance " + std::to_string(k)};
    nonzero += sgn(slow) != 0;
  }
  return {true, std::to_string(instances) + " instances equal, unit and non-unit costs (" + std::to_string(nonzero) +
                    " nonzero)"};
}

Outcome frequency_consistency() {
  Mt64Source rng(106);
  const Election e(3, {Vote({0, 1, 2}), Vote({1, 2, 0})});
  const std::int64_t r = 2;
  const std::int64_t samples = 20000;
  const CountingTables tables = CountingTables::build(3, 2);
  const Rule rules[] = {Rule::Plurality, Rule::Borda};
  const auto est = estimate_radius(e, rules, r, samples, tables, rng);
  const double total = tables.elections.at(2, r).get_d();
  double worst = 0.0;
  for (int q = 0; q < 2; ++q) {
    for (CandidateId c = 0; c < 3; ++c) {
      const double p = brute_force_count_swap(e, c, r, rules[q]).get_d() / total;
      const double sigma = std::sqrt(p * (1 - p) / samples);
      const double dev = std::abs(est[q].frequency(c) - p);
      if (sigma == 0.0) {
        if (dev != 0.0) return {false, "degenerate probability not matched exactly"};
        continue;
      }
      worst = std::max(worst, dev / sigma);
    }
  }
  return {worst <= 4.0, "largest deviation " + format_fixed(worst) + " sigma (limit 4)"};
}

Outcome hoeffding() {
  const double bound = 2.0 * std::exp(-2.0 * 500 * 0.1 * 0.1);
  return {bound < 0.001, "2*exp(-10) = " + format_fixed(bound)};
}

struct DeskResults {
  std::map<std::string, std::map<Rule, std::vector<double>>> thresholds;  // culture cell -> rule -> values
  std::map<std::string, std::map<Rule, int>> none;
  double seconds = 0.0;
};

DeskResults run_desk() {
  const auto start = Clock::now();
  const auto dir = std::filesystem::temp_directory_path() / "swapcount-acceptance-desk";
  std::filesystem::remove_all(dir);
  const auto manifest = write_dataset(dir, desk_dataset(10, 50, 20, 2021));
  const auto dataset = load_dataset(manifest);
  ExperimentConfig config;
  config.grid = DistanceGrid::coarse();
  config.samples = 200;
  config.base_seed = 2021;
  config.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const ExperimentOutput out = run_experiment(dataset, config);
  DeskResults res;
  for (const auto& row : out.summary) {
    const std::string cell = row.culture + (row.params.empty() ? "" : "(" + row.params + ")");
    if (row.threshold) {
      res.thresholds[cell][row.rule].push_back(*row.threshold);
    } else {
      ++res.none[cell][row.rule];
    }
  }
  std::filesystem::remove_all(dir);
  res.seconds = seconds_since(start);
  return res;
}

double mean(const std::vector<double>& xs) {
  return xs.empty() ? std::nan("") : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

Outcome conclusion_borda_robust(const DeskResults& desk) {
  std::map<Rule, std::vector<double>> pooled;
  int none = 0;
  for (const char* cell : {"ic", "urn(alpha=0.1)", "mallows(phi=0.5)"}) {
    for (Rule rule : {Rule::Plurality, Rule::Borda}) {
      const auto it = desk.thresholds.find(cell);
      if (it != desk.thresholds.end() && it->second.count(rule)) {
        const auto& xs = it->second.at(rule);
        pooled[rule].insert(pooled[rule].end(), xs.begin(), xs.end());
      }
      const auto n = desk.none.find(cell);
      if (n != desk.none.end() && n->second.count(rule)) none += n->second.at(rule);
    }
  }
  const double borda = mean(pooled[Rule::Borda]);
  const double plurality = mean(pooled[Rule::Plurality]);
  const bool pass = borda >= plurality && desk.seconds < 900.0;
  return {pass, "mean threshold borda " + format_fixed(borda) + " (" + std::to_string(pooled[Rule::Borda].size()) +
                    " elections) vs plurality " + format_fixed(plurality) + " (" +
                    std::to_string(pooled[Rule::Plurality].size()) + "), " + std::to_string(none) +
                    " without threshold, " + format_fixed(desk.seconds) + "s (limit 900s)"};
}

Outcome conclusion_culture(const DeskResults& desk) {
  bool pass = true;
  std::ostringstream detail;
  for (Rule rule : {Rule::Plurality, Rule::Borda}) {
    auto get = [&](const char* cell) {
      const auto it = desk.thresholds.find(cell);
      return it == desk.thresholds.end() || !it->second.count(rule) ? std::vector<double>{} : it->second.at(rule);
    };
    const double mallows = mean(get("mallows(phi=0.2)"));
    const double ic = mean(get("ic"));
    pass = pass && mallows > ic;
    detail << rule_name(rule) << ": mallows(0.2) " << format_fixed(mallows) << " > ic " << format_fixed(ic) << "; ";
  }
  return {pass, detail.str()};
}

Outcome culture_degeneracies() {
  Mt64Source rng(107);
  CultureSpec mallows;
  mallows.kind = CultureKind::Mallows;
  mallows.phi = 0.0;
  mallows.m = 10;
  mallows.n = 100;
  for (int k = 0; k < 20; ++k) {
    const Election e = generate(mallows, rng);
    for (const Vote& v : e.votes()) {
      if (v != e.vote(0)) return {false, "mallows(phi=0) produced distinct votes"};
    }
  }

  CultureSpec urn;
  urn.kind = CultureKind::Urn;
  urn.alpha = 0.0;
  urn.m = 3;
  urn.n = 1;
  const auto perms = oracle::permutations(3);
  std::vector<std::int64_t> counts(6, 0);
  const int draws = 50000;
  for (int k = 0; k < draws; ++k) {
    const Election e = generate(urn, rng);
    const auto ranking = e.vote(0).ranking();
    const auto it = std::find(perms.begin(), perms.end(), std::vector<int>(ranking.begin(), ranking.end()));
    ++counts[it - perms.begin()];
  }
  const std::vector<double> expected(6, draws / 6.0);
  const double stat = chi_square_statistic(counts, expected);
  const double critical = chi_square_critical(5, 0.001);
  if (stat > critical) return {false, "urn(alpha=0) chi2 " + format_fixed(stat) + " > " + format_fixed(critical)};

  int checked = 0;
  for (CultureKind kind : {CultureKind::SPConitzer, CultureKind::SPWalsh, CultureKind::SPOC, CultureKind::SingleCrossing}) {
    for (int k = 0; k < 250; ++k) {
      CultureSpec spec;
      spec.kind = kind;
      spec.m = oracle::between(1, 12, rng);
      spec.n = oracle::between(1, 60, rng);
      const Generated g = generate_detailed(spec, rng);
      bool ok = true;
      if (kind == CultureKind::SingleCrossing) {
        ok = is_single_crossing(g.election);
      } else {
        for (const Vote& v : g.election.votes()) {
          ok = ok && (kind == CultureKind::SPOC ? is_single_peaked_on_circle(v, g.axis) : is_single_peaked(v, g.axis));
        }
      }
      if (!ok) return {false, std::string(culture_name(kind)) + " output failed its verifier"};
      ++checked;
    }
  }
  return {true, "mallows(0) identical; urn(0) chi2 " + format_fixed(stat) + " <= " + format_fixed(critical) + "; " +
                    std::to_string(checked) + " structured elections verified"};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& run) {
    Outcome o{false, ""};
    try {
      o = run();
    } catch (const std::exception& err) {
      o = {false, std::string("exception: ") + err.what()};
    }
    failures += !o.pass;
    std::printf("[%s] criterion %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "Mahonian exactness", mahonian_exactness);
  report(2, "election-count exactness", election_count_exactness);
  report(3, "sampler exact distance", sampler_distance);
  report(4, "sampler uniformity", sampler_uniformity);
  report(5, "swap oracle equivalence", swap_oracle);
  report(6, "Plurality shift oracle equivalence", shift_plurality_oracle);
  report(7, "Borda constructive shift oracle equivalence", shift_borda_oracle);
  report(8, "frequency consistency", frequency_consistency);
  report(9, "Hoeffding bound", hoeffding);
  DeskResults desk;
  bool desk_ok = true;
  std::string desk_error;
  try {
    desk = run_desk();
  } catch (const std::exception& err) {
    desk_ok = false;
    desk_error = err.what();
  }
  report(10, "Borda thresholds at least Plurality's", [&] {
    return desk_ok ? conclusion_borda_robust(desk) : Outcome{false, desk_error};
  });
  report(11, "thresholds track culture", [&] {
    return desk_ok ? conclusion_culture(desk) : Outcome{false, desk_error};
  });
  report(12, "culture degeneracies", culture_degeneracies);
  std::printf("%d of 12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
