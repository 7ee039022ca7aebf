#include "swapcount/selfcheck.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "swapcount/bribery.hpp"
#include "swapcount/cultures.hpp"
#include "swapcount/experiments.hpp"
#include "swapcount/sampler.hpp"
#include "swapcount/tables.hpp"

namespace swapcount {

namespace {

std::vector<std::vector<CandidateId>> all_permutations(int m) {
  std::vector<CandidateId> p(m);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<CandidateId>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Vote random_vote(int m, RandomSource& rng) {
  std::vector<CandidateId> ranking(m);
  std::iota(ranking.begin(), ranking.end(), 0);
  for (int i = m - 1; i > 0; --i) std::swap(ranking[i], ranking[rng.uniform_below(static_cast<std::uint64_t>(i) + 1)]);
  return Vote(std::move(ranking));
}

Election random_election(int m, int n, RandomSource& rng) {
  std::vector<Vote> votes;
  for (int i = 0; i < n; ++i) votes.push_back(random_vote(m, rng));
  return Election(m, std::move(votes));
}

int between(int lo, int hi, RandomSource& rng) {
  return lo + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(hi - lo + 1)));
}

CostFunction random_costs(int n, int m, int lo_step, int hi_step, RandomSource& rng) {
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(m, 0));
  for (auto& row : rows) {
    for (int l = 1; l < m; ++l) row[l] = row[l - 1] + between(lo_step, hi_step, rng);
  }
  return CostFunction(std::move(rows));
}

std::string instance(const Election& e, CandidateId p, std::int64_t r) {
  std::ostringstream out;
  out << "m=" << e.candidate_count() << " n=" << e.voter_count() << " p=" << p << " r=" << r << " votes=";
  for (const Vote& v : e.votes()) {
    out << '[';
    for (int k = 0; k < v.size(); ++k) out << (k ? "," : "") << v.at(k);
    out << ']';
  }
  return out.str();
}

CheckResult check_mahonian(bool quick) {
  CheckResult res{"mahonian-census", true, ""};
  const int top = quick ? 6 : 7;
  const MahonianTable table(top);
  for (int m = 1; m <= top; ++m) {
    const auto census = mahonian_census(m);
    for (std::size_t r = 0; r < census.size(); ++r) {
      if (table.at(m, static_cast<std::int64_t>(r)) != census[r]) {
        res.passed = false;
        res.detail = "T_V[" + std::to_string(m) + "][" + std::to_string(r) + "] differs from the census";
        return res;
      }
    }
  }
  res.detail = "m <= " + std::to_string(top) + " match the permutation census";
  return res;
}

CheckResult check_election_counts(bool quick) {
  CheckResult res{"election-count-census", true, ""};
  const int top = quick ? 2 : 3;
  const MahonianTable mahonian(3);
  const ElectionCountTable counts(mahonian, 3, top);
  for (int n = 1; n <= top; ++n) {
    const auto census = election_census(3, n);
    for (std::int64_t r = 0; r <= 9; ++r) {
      const BigCount expected = r < static_cast<std::int64_t>(census.size()) ? census[r] : BigCount(0);
      if (counts.value(n, r) != expected) {
        res.passed = false;
        res.detail = "T_E[" + std::to_string(n) + "][" + std::to_string(r) + "] differs for m=3";
        return res;
      }
    }
  }
  res.detail = "m=3, n <= " + std::to_string(top) + ", r <= 9 match the election census";
  return res;
}

CheckResult check_sampler_distance(bool quick, RandomSource& rng) {
  CheckResult res{"sampler-distance", true, ""};
  const int draws = quick ? 1000 : 10000;
  std::map<int, CountingTables> tables;
  for (int m = 1; m <= 5; ++m) tables.emplace(m, CountingTables::build(m, 4));
  for (int k = 0; k < draws; ++k) {
    const int m = between(1, 5, rng);
    const int n = between(1, 4, rng);
    const Election e = random_election(m, n, rng);
    const auto r = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(max_swaps(m) * n) + 1));
    const Election drawn = sample_election_at_distance(e, r, tables.at(m), rng);
    if (election_swap_distance(e, drawn) != r) {
      res.passed = false;
      res.detail = "sample at wrong distance for " + instance(e, 0, r);
      return res;
    }
  }
  res.detail = std::to_string(draws) + " samples at exact distance";
  return res;
}

CheckResult check_sampler_uniformity(bool quick, RandomSource& rng) {
  CheckResult res{"sampler-uniformity", true, ""};
  const int draws = quick ? 5000 : 20000;
  const CountingTables tables = CountingTables::build(3, 2);
  const Election e(3, {Vote({0, 1, 2}), Vote({2, 0, 1})});
  std::ostringstream detail;
  for (std::int64_t r : {1, 2, 3}) {
    const auto support = enumerate_at_distance(e, r);
    std::map<std::vector<Vote>, std::size_t> index;
    for (std::size_t i = 0; i < support.size(); ++i) {
      index[std::vector<Vote>(support[i].votes().begin(), support[i].votes().end())] = i;
    }
    std::vector<std::int64_t> observed(support.size(), 0);
    for (int k = 0; k < draws; ++k) {
      const Election drawn = sample_election_at_distance(e, r, tables, rng);
      auto it = index.find(std::vector<Vote>(drawn.votes().begin(), drawn.votes().end()));
      if (it == index.end()) {
        res.passed = false;
        res.detail = "sample outside R(E, " + std::to_string(r) + ")";
        return res;
      }
      ++observed[it->second];
    }
    const std::vector<double> expected(support.size(), static_cast<double>(draws) / support.size());
    const double stat = chi_square_statistic(observed, expected);
    const double critical = chi_square_critical(static_cast<int>(support.size()) - 1, 0.001);
    detail << "r=" << r << " |R|=" << support.size() << " chi2=" << format_fixed(stat) << "/"
           << format_fixed(critical) << "; ";
    if (stat > critical) res.passed = false;
  }
  res.detail = detail.str();
  return res;
}

CheckResult check_swap_oracle(bool quick, RandomSource& rng, const Guards& guards) {
  CheckResult res{"swap-plurality-oracle", true, ""};
  const int instances = quick ? 40 : 200;
  const MahonianTable mahonian(4);
  for (int k = 0; k < instances; ++k) {
    const int m = between(1, 4, rng);
    const int n = between(1, 3, rng);
    const Election e = random_election(m, n, rng);
    const CandidateId p = between(0, m - 1, rng);
    const std::int64_t r = between(0, 5, rng);
    const BigCount fast = count_plurality_swap_bribery(e, p, r, mahonian, guards);
    const BigCount slow = brute_force_count_swap(e, p, r, Rule::Plurality, guards);
    if (fast != slow) {
      res.passed = false;
      res.detail = "fast " + to_decimal(fast) + " vs oracle " + to_decimal(slow) + " on " + instance(e, p, r);
      return res;
    }
  }
  res.detail = std::to_string(instances) + " instances agree";
  return res;
}

CheckResult check_shift_plurality(bool quick, RandomSource& rng, const Guards& guards) {
  CheckResult res{"shift-plurality-oracle", true, ""};
  const int instances = quick ? 40 : 200;
  for (int k = 0; k < instances; ++k) {
    const int m = between(1, 5, rng);
    const int n = between(1, 4, rng);
    const Election e = random_election(m, n, rng);
    const CandidateId p = between(0, m - 1, rng);
    const std::int64_t r = between(0, 4, rng);
    const CostFunction costs = random_costs(n, m, 1, 3, rng);
    const BigCount con = count_plurality_shift_constructive(e, p, r, costs);
    const BigCount con_oracle = brute_force_count_shift(e, p, r, costs, ShiftMode::Constructive, Rule::Plurality, guards);
    const BigCount des = count_plurality_shift_destructive(e, p, r, costs);
    const BigCount des_oracle = brute_force_count_shift(e, p, r, costs, ShiftMode::Destructive, Rule::Plurality, guards);
    if (con != con_oracle || des != des_oracle) {
      res.passed = false;
      res.detail = "constructive " + to_decimal(con) + "/" + to_decimal(con_oracle) + ", destructive " +
                   to_decimal(des) + "/" + to_decimal(des_oracle) + " on " + instance(e, p, r);
      return res;
    }
  }
  res.detail = std::to_string(instances) + " instances agree in both modes";
  return res;
}

CheckResult check_shift_borda(bool quick, RandomSource& rng, const Guards& guards) {
  CheckResult res{"shift-borda-oracle", true, ""};
  const int instances = quick ? 40 : 200;
  for (int k = 0; k < instances; ++k) {
    const int m = between(1, 6, rng);
    const int n = between(1, 5, rng);
    const Election e = random_election(m, n, rng);
    const CandidateId p = between(0, m - 1, rng);
    const std::int64_t r = between(0, 4, rng);
    const bool unit = k % 2 == 0;
    const CostFunction costs = unit ? CostFunction::unit(n, m) : random_costs(n, m, 1, 3, rng);
    const BigCount fast = count_borda_shift_constructive(e, p, r, costs, guards);
    const BigCount slow = brute_force_count_shift(e, p, r, costs, ShiftMode::Constructive, Rule::Borda, guards);
    if (fast != slow) {
      res.passed = false;
      res.detail = std::string(unit ? "unit" : "non-unit") + " costs: fast " + to_decimal(fast) + " vs oracle " +
                   to_decimal(slow) + " on " + instance(e, p, r);
      return res;
    }
  }
  res.detail = std::to_string(instances) + " instances agree (unit and non-unit costs)";
  return res;
}

CheckResult check_frequencies(bool quick, RandomSource& rng, const Guards& guards) {
  CheckResult res{"frequency-consistency", true, ""};
  const std::int64_t samples = quick ? 5000 : 20000;
  const Election e(3, {Vote({0, 1, 2}), Vote({0, 2, 1})});
  const std::int64_t r = 2;
  const CountingTables tables = CountingTables::build(3, 2);
  const Rule rules[] = {Rule::Plurality, Rule::Borda};
  const auto est = estimate_radius(e, rules, r, samples, tables, rng);
  const double total = tables.elections.at(2, r).get_d();
  std::ostringstream detail;
  for (std::size_t q = 0; q < 2; ++q) {
    for (CandidateId c = 0; c < 3; ++c) {
      const double p = brute_force_count_swap(e, c, r, rules[q], guards).get_d() / total;
      const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(samples));
      const double f = est[q].frequency(c);
      if (std::abs(f - p) > 4 * sigma + 1e-12) {
        res.passed = false;
        detail << rule_name(rules[q]) << " c" << c << " freq " << format_fixed(f) << " exact " << format_fixed(p)
               << "; ";
      }
    }
  }
  res.detail = res.passed ? "all frequencies within 4 sigma of the exact ratios" : detail.str();
  return res;
}

CheckResult check_hoeffding() {
  CheckResult res{"hoeffding-bound", true, ""};
  const double bound = 2.0 * std::exp(-2.0 * 500 * 0.1 * 0.1);
  res.passed = bound < 0.001;
  res.detail = "2*exp(-2*500*0.01) = " + std::to_string(bound);
  return res;
}

std::vector<std::int64_t> single_vote_histogram(const CultureSpec& base, int draws, RandomSource& rng) {
  std::vector<std::int64_t> counts(6, 0);
  const auto perms = all_permutations(3);
  for (int k = 0; k < draws; ++k) {
    CultureSpec spec = base;
    spec.m = 3;
    spec.n = 1;
    const Election e = generate(spec, rng);
    const auto ranking = e.vote(0).ranking();
    const auto it = std::find(perms.begin(), perms.end(), std::vector<CandidateId>(ranking.begin(), ranking.end()));
    ++counts[it - perms.begin()];
  }
  return counts;
}

CheckResult check_cultures(bool quick, RandomSource& rng) {
  CheckResult res{"culture-degeneracies", true, ""};
  std::ostringstream detail;

  CultureSpec mallows{CultureKind::Mallows, 0.0, 0.0, 1, 10, 50};
  for (int k = 0; k < 20; ++k) {
    const Election e = generate(mallows, rng);
    for (const Vote& v : e.votes()) {
      if (v != e.vote(0)) {
        res.passed = false;
        detail << "mallows(phi=0) produced distinct votes; ";
        break;
      }
    }
  }

  const int draws = quick ? 10000 : 50000;
  const double critical = chi_square_critical(5, 0.001);
  const std::vector<double> uniform(6, draws / 6.0);
  for (const auto& [label, spec] : {std::pair{"urn(alpha=0)", CultureSpec{CultureKind::Urn, 0.0}},
                                    std::pair{"mallows(phi=1)", CultureSpec{CultureKind::Mallows, 0.0, 1.0}}}) {
    const auto counts = single_vote_histogram(spec, draws, rng);
    const double stat = chi_square_statistic(counts, uniform);
    detail << label << " chi2=" << format_fixed(stat) << "/" << format_fixed(critical) << "; ";
    if (stat > critical) res.passed = false;
  }

  const int elections = quick ? 50 : 200;
  int structured = 0;
  for (CultureKind kind :
       {CultureKind::SPConitzer, CultureKind::SPWalsh, CultureKind::SPOC, CultureKind::SingleCrossing}) {
    for (int k = 0; k < elections; ++k) {
      CultureSpec spec{kind};
      spec.m = between(1, 10, rng);
      spec.n = between(1, 30, rng);
      const Generated g = generate_detailed(spec, rng);
      bool ok = true;
      if (kind == CultureKind::SingleCrossing) {
        ok = is_single_crossing(g.election);
      } else {
        for (const Vote& v : g.election.votes()) {
          ok = ok && (kind == CultureKind::SPOC ? is_single_peaked_on_circle(v, g.axis) : is_single_peaked(v, g.axis));
        }
      }
      if (!ok) {
        res.passed = false;
        detail << culture_name(kind) << " output failed its verifier; ";
      }
      ++structured;
    }
  }
  detail << structured << " structured elections verified";
  res.detail = detail.str();
  return res;
}

CheckResult check_cache(const std::optional<std::filesystem::path>& dir, std::uint64_t seed) {
  CheckResult res{"table-cache", true, ""};
  try {
    if (dir) {
      int files = 0;
      for (const auto& item : std::filesystem::directory_iterator(*dir)) {
        if (item.path().extension() != ".bin") continue;
        verify_cache_file(item.path());
        ++files;
      }
      res.detail = std::to_string(files) + " cache files verified in " + dir->string();
      if (files == 0) {
        res.passed = false;
        res.detail = "no .bin cache files in " + dir->string();
      }
      return res;
    }
    // Round trip through a scratch file, then make sure a flipped byte is
    // caught by the row checksums.
    const auto scratch = std::filesystem::temp_directory_path() /
                         ("swapcount-selftest-" + std::to_string(derive_seed(seed, {fnv1a("cache")})) + ".bin");
    const MahonianTable table(8);
    table.save(scratch);
    const MahonianTable loaded = MahonianTable::load(scratch);
    for (int m = 0; m <= 8; ++m) {
      if (!std::ranges::equal(table.row(m), loaded.row(m))) throw CacheError("round trip changed row " + std::to_string(m));
    }
    {
      std::fstream f(scratch, std::ios::in | std::ios::out | std::ios::binary);
      f.seekg(-1, std::ios::end);
      char last = 0;
      f.get(last);
      f.seekp(-1, std::ios::end);
      f.put(static_cast<char>(last ^ 0x01));
    }
    bool caught = false;
    try {
      (void)MahonianTable::load(scratch);
    } catch (const CacheError&) {
      caught = true;
    }
    std::filesystem::remove(scratch);
    res.passed = caught;
    res.detail = caught ? "round trip exact; corrupted copy rejected" : "corrupted cache was accepted";
  } catch (const std::exception& err) {
    res.passed = false;
    res.detail = err.what();
  }
  return res;
}

}  // namespace

std::vector<BigCount> mahonian_census(int m) {
  std::vector<BigCount> counts(static_cast<std::size_t>(max_swaps(m)) + 1, 0);
  for (const auto& p : all_permutations(m)) ++counts[count_inversions(p)];
  return counts;
}

std::vector<BigCount> election_census(int m, int n) {
  const auto perms = all_permutations(m);
  const Vote base = Vote::identity(m);
  std::vector<std::int64_t> distance;
  for (const auto& p : perms) distance.push_back(swap_distance(base, Vote(p)));
  std::vector<BigCount> counts(static_cast<std::size_t>(max_swaps(m) * n) + 1, 0);
  std::vector<std::size_t> digit(n, 0);
  while (true) {
    std::int64_t r = 0;
    for (std::size_t d : digit) r += distance[d];
    ++counts[r];
    int i = 0;
    while (i < n && ++digit[i] == perms.size()) digit[i++] = 0;
    if (i == n) break;
  }
  return counts;
}

std::vector<Election> enumerate_at_distance(const Election& e, std::int64_t r) {
  const int m = e.candidate_count();
  const int n = e.voter_count();
  const auto perms = all_permutations(m);
  std::vector<Election> out;
  std::vector<std::size_t> digit(n, 0);
  while (true) {
    std::vector<Vote> votes;
    std::int64_t d = 0;
    for (int i = 0; i < n; ++i) {
      votes.emplace_back(perms[digit[i]]);
      d += swap_distance(e.vote(i), votes.back());
    }
    if (d == r) out.push_back(e.with_votes(std::move(votes)));
    int i = n - 1;
    while (i >= 0 && ++digit[i] == perms.size()) digit[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

double chi_square_statistic(std::span<const std::int64_t> observed, std::span<const double> expected) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double diff = static_cast<double>(observed[i]) - expected[i];
    stat += diff * diff / expected[i];
  }
  return stat;
}

double chi_square_critical(int degrees_of_freedom, double alpha) {
  if (degrees_of_freedom < 1) return 0.0;
  const boost::math::chi_squared dist(degrees_of_freedom);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

void verify_cache_file(const std::filesystem::path& path) {
  try {
    (void)MahonianTable::load(path);
    return;
  } catch (const CacheError& err) {
    if (std::string(err.what()) != "table cache: not a Mahonian table") throw;
  }
  (void)ElectionCountTable::load(path);
}

std::vector<CheckResult> run_selftest(const SelfTestOptions& options,
                                      const std::function<void(const CheckResult&)>& report) {
  Mt64Source rng(options.seed);
  const Guards guards;
  const bool quick = options.quick;
  const std::vector<std::pair<std::string, std::function<CheckResult()>>> checks{
      {"mahonian-census", [&] { return check_mahonian(quick); }},
      {"election-count-census", [&] { return check_election_counts(quick); }},
      {"sampler-distance", [&] { return check_sampler_distance(quick, rng); }},
      {"sampler-uniformity", [&] { return check_sampler_uniformity(quick, rng); }},
      {"swap-plurality-oracle", [&] { return check_swap_oracle(quick, rng, guards); }},
      {"shift-plurality-oracle", [&] { return check_shift_plurality(quick, rng, guards); }},
      {"shift-borda-oracle", [&] { return check_shift_borda(quick, rng, guards); }},
      {"frequency-consistency", [&] { return check_frequencies(quick, rng, guards); }},
      {"hoeffding-bound", [&] { return check_hoeffding(); }},
      {"culture-degeneracies", [&] { return check_cultures(quick, rng); }},
      {"table-cache", [&] { return check_cache(options.cache, options.seed); }},
  };
  std::vector<CheckResult> results;
  for (const auto& [name, check] : checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult res;
    try {
      res = check();
    } catch (const std::exception& err) {
      res.passed = false;
      res.detail = std::string("exception: ") + err.what();
    }
    res.name = name;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (report) report(res);
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace swapcount
