#include "swapcount/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "swapcount/election_io.hpp"
#include "swapcount/sampler.hpp"

namespace swapcount {

namespace {

std::vector<double> even_grid(double step, int count) {
  std::vector<double> radii;
  for (int k = 1; k <= count; ++k) radii.push_back(k * step);
  return radii;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) fields.push_back(trim(field));
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

std::ofstream open_csv(const std::filesystem::path& path, const std::vector<std::string>& header) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& line : header) out << "# " << line << '\n';
  return out;
}

// Counting tables for every candidate count in the dataset, each covering
// the largest voter count seen with that many candidates.
std::map<int, CountingTables> tables_for(std::span<const DatasetEntry> dataset) {
  std::map<int, int> max_n;
  for (const auto& entry : dataset) {
    int& n = max_n[entry.election.candidate_count()];
    n = std::max(n, entry.election.voter_count());
  }
  std::map<int, CountingTables> tables;
  for (const auto& [m, n] : max_n) tables.emplace(m, CountingTables::build(m, n));
  return tables;
}

void add_summary(ExperimentOutput& out, const DatasetEntry& entry, const EstimateResult& result) {
  const auto margin = score_margin(entry.election, result.rule);
  if (!margin) {
    out.excluded.push_back(ExcludedRow{entry.meta.id, result.rule, "tied winners"});
    return;
  }
  const CandidateId winner = winners(entry.election, result.rule).front();
  out.summary.push_back(SummaryRow{entry.meta.id, result.rule, entry.meta.culture, entry.meta.params, *margin,
                                   threshold(result, winner)});
}

void sort_rows(ExperimentOutput& out) {
  std::stable_sort(out.estimates.begin(), out.estimates.end(), [](const EstimateRow& a, const EstimateRow& b) {
    return std::tie(a.election_id, a.rule, a.radius_norm, a.candidate) <
           std::tie(b.election_id, b.rule, b.radius_norm, b.candidate);
  });
  std::stable_sort(out.summary.begin(), out.summary.end(), [](const SummaryRow& a, const SummaryRow& b) {
    return std::tie(a.election_id, a.rule) < std::tie(b.election_id, b.rule);
  });
  std::stable_sort(out.excluded.begin(), out.excluded.end(), [](const ExcludedRow& a, const ExcludedRow& b) {
    return std::tie(a.election_id, a.rule) < std::tie(b.election_id, b.rule);
  });
}

}  // namespace

DistanceGrid DistanceGrid::coarse() { return DistanceGrid(even_grid(0.05, 20)); }

DistanceGrid DistanceGrid::fine() { return DistanceGrid(even_grid(0.0125, 40)); }

DistanceGrid::DistanceGrid(std::vector<double> radii) : radii_(std::move(radii)) {
  if (radii_.empty()) throw std::invalid_argument("distance grid is empty");
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    const double rho = radii_[i];
    if (!(rho > 0.0 && rho <= 1.0 + 1e-12)) {
      throw std::invalid_argument("distance grid radii must lie in (0, 1], got " + format_fixed(rho));
    }
    if (i > 0 && !(rho > radii_[i - 1])) throw std::invalid_argument("distance grid must be strictly increasing");
  }
}

DistanceGrid parse_grid(const std::string& text) {
  const std::string t = trim(text);
  if (t == "coarse") return DistanceGrid::coarse();
  if (t == "fine") return DistanceGrid::fine();
  std::vector<double> radii;
  for (const auto& field : split(t, ',')) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      throw std::invalid_argument("bad radius '" + field + "' in grid");
    }
    radii.push_back(value);
  }
  return DistanceGrid(std::move(radii));
}

std::int64_t normalized_to_swaps(double rho, int m, int n) {
  if (!(rho >= 0.0 && rho <= 1.0 + 1e-12)) throw std::invalid_argument("normalized radius must lie in [0, 1]");
  const std::int64_t total = max_swaps(m) * n;
  const double x = rho * static_cast<double>(total);
  const double floor_x = std::floor(x);
  const double frac = x - floor_x;
  auto swaps = static_cast<std::int64_t>(floor_x);
  if (std::abs(frac - 0.5) < 1e-9) {
    if (swaps % 2 != 0) ++swaps;
  } else if (frac > 0.5) {
    ++swaps;
  }
  return std::clamp<std::int64_t>(swaps, 0, total);
}

std::vector<RadiusEstimate> estimate_radius(const Election& e, std::span<const Rule> rules, std::int64_t r,
                                            std::int64_t samples, const CountingTables& tables, RandomSource& rng) {
  if (samples < 1) throw std::invalid_argument("estimate: need at least one sample");
  const int m = e.candidate_count();
  std::vector<RadiusEstimate> out(rules.size());
  for (auto& est : out) {
    est.radius_swaps = r;
    est.samples = samples;
    est.wins.assign(m, 0);
  }
  for (std::int64_t s = 0; s < samples; ++s) {
    const Election drawn = sample_election_at_distance(e, r, tables, rng);
    for (std::size_t k = 0; k < rules.size(); ++k) {
      for (CandidateId c : winners(drawn, rules[k])) ++out[k].wins[c];
    }
  }
  return out;
}

EstimateResult estimate(const Election& e, Rule rule, const DistanceGrid& grid, std::int64_t samples,
                        const CountingTables& tables, RandomSource& rng) {
  EstimateResult result{"", rule, 0, {}};
  const Rule rules[] = {rule};
  for (double rho : grid.radii()) {
    const std::int64_t r = normalized_to_swaps(rho, e.candidate_count(), e.voter_count());
    RadiusEstimate est = estimate_radius(e, rules, r, samples, tables, rng).front();
    est.radius_norm = rho;
    result.radii.push_back(std::move(est));
  }
  return result;
}

std::optional<double> threshold(const EstimateResult& result, CandidateId original_winner) {
  for (const auto& est : result.radii) {
    // Compare counts, not doubles: wins / samples < 1/2.
    if (2 * est.wins.at(original_winner) < est.samples) return est.radius_norm;
  }
  return std::nullopt;
}

std::optional<std::int64_t> score_margin(const Election& e, Rule rule) {
  const auto s = scores(e, rule);
  if (s.size() < 2) return std::nullopt;
  std::vector<std::int64_t> sorted = s;
  std::sort(sorted.rbegin(), sorted.rend());
  if (sorted[0] == sorted[1]) return std::nullopt;
  return sorted[0] - sorted[1];
}

std::uint64_t ExperimentConfig::hash() const {
  std::string text = "samples=" + std::to_string(samples) + ";seed=" + std::to_string(base_seed) + ";rules=";
  for (Rule rule : rules) text += std::string(rule_name(rule)) + ",";
  text += ";grid=";
  for (double rho : grid.radii()) text += format_fixed(rho) + ",";
  return fnv1a(text);
}

ExperimentOutput run_experiment(std::span<const DatasetEntry> dataset, const ExperimentConfig& config) {
  if (config.rules.empty()) throw std::invalid_argument("run_experiment: no rules requested");
  if (config.samples < 1) throw std::invalid_argument("run_experiment: need at least one sample per radius");
  const std::map<int, CountingTables> tables = tables_for(dataset);
  const std::size_t radii = config.grid.size();
  const std::size_t tasks = dataset.size() * radii;

  // results[task] holds one RadiusEstimate per rule.
  std::vector<std::vector<RadiusEstimate>> results(tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;

  auto worker = [&] {
    while (true) {
      const std::size_t task = next.fetch_add(1);
      if (task >= tasks) return;
      const std::size_t index = task / radii;
      const std::size_t k = task % radii;
      const DatasetEntry& entry = dataset[index];
      try {
        const Election& e = entry.election;
        const double rho = config.grid[k];
        const std::int64_t r = normalized_to_swaps(rho, e.candidate_count(), e.voter_count());
        Mt64Source rng(derive_seed(config.base_seed, {fnv1a(entry.meta.id), static_cast<std::uint64_t>(k)}));
        auto est = estimate_radius(e, config.rules, r, config.samples, tables.at(e.candidate_count()), rng);
        for (auto& x : est) x.radius_norm = rho;
        results[task] = std::move(est);
      } catch (...) {
        std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
        next.store(tasks);
      }
    }
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentOutput out;
  for (std::size_t index = 0; index < dataset.size(); ++index) {
    const DatasetEntry& entry = dataset[index];
    for (std::size_t q = 0; q < config.rules.size(); ++q) {
      EstimateResult result{entry.meta.id, config.rules[q], config.base_seed, {}};
      for (std::size_t k = 0; k < radii; ++k) {
        const RadiusEstimate& est = results[index * radii + k][q];
        for (CandidateId c = 0; c < entry.election.candidate_count(); ++c) {
          out.estimates.push_back(EstimateRow{entry.meta.id, result.rule, est.radius_norm, est.radius_swaps, c,
                                              est.wins[c], est.samples});
        }
        result.radii.push_back(est);
      }
      add_summary(out, entry, result);
    }
  }
  sort_rows(out);
  return out;
}

ExperimentOutput summarize(std::span<const DatasetEntry> dataset, std::span<const EstimateRow> estimates) {
  std::map<std::pair<std::string, Rule>, std::map<double, RadiusEstimate>> grouped;
  for (const auto& row : estimates) {
    RadiusEstimate& est = grouped[{row.election_id, row.rule}][row.radius_norm];
    est.radius_norm = row.radius_norm;
    est.radius_swaps = row.radius_swaps;
    est.samples = row.samples;
    if (row.candidate >= static_cast<int>(est.wins.size())) est.wins.resize(row.candidate + 1, 0);
    est.wins[row.candidate] = row.wins;
  }

  ExperimentOutput out;
  out.estimates.assign(estimates.begin(), estimates.end());
  for (const auto& entry : dataset) {
    for (Rule rule : {Rule::Plurality, Rule::Borda}) {
      auto it = grouped.find({entry.meta.id, rule});
      if (it == grouped.end()) continue;
      EstimateResult result{entry.meta.id, rule, 0, {}};
      for (auto& [rho, est] : it->second) {
        est.wins.resize(entry.election.candidate_count(), 0);
        result.radii.push_back(est);
      }
      add_summary(out, entry, result);
    }
  }
  sort_rows(out);
  return out;
}

std::string format_fixed(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::fixed, 6);
  if (ec != std::errc()) return "nan";
  return std::string(buffer, ptr);
}

void write_estimates_csv(const std::filesystem::path& path, std::span<const EstimateRow> rows,
                         const std::vector<std::string>& header) {
  std::ofstream out = open_csv(path, header);
  out << "election_id,rule,radius_norm,radius_swaps,candidate,wins,samples,frequency\n";
  for (const auto& row : rows) {
    out << row.election_id << ',' << rule_name(row.rule) << ',' << format_fixed(row.radius_norm) << ','
        << row.radius_swaps << ',' << row.candidate << ',' << row.wins << ',' << row.samples << ','
        << format_fixed(static_cast<double>(row.wins) / static_cast<double>(row.samples)) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_summary_csv(const std::filesystem::path& path, std::span<const SummaryRow> rows,
                       const std::vector<std::string>& header) {
  std::ofstream out = open_csv(path, header);
  out << "election_id,rule,culture,params,score_margin,threshold\n";
  for (const auto& row : rows) {
    out << row.election_id << ',' << rule_name(row.rule) << ',' << row.culture << ',' << row.params << ','
        << row.score_margin << ',' << (row.threshold ? format_fixed(*row.threshold) : "none") << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_excluded_csv(const std::filesystem::path& path, std::span<const ExcludedRow> rows,
                        const std::vector<std::string>& header) {
  std::ofstream out = open_csv(path, header);
  out << "election_id,rule,reason\n";
  for (const auto& row : rows) out << row.election_id << ',' << rule_name(row.rule) << ',' << row.reason << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<EstimateRow> read_estimates_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<EstimateRow> rows;
  std::string line;
  int line_no = 0;
  auto integer = [&](const std::string& field, const std::string& where) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      throw FormatError(where + ": expected an integer, got '" + field + "'");
    }
    return value;
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t.rfind("election_id,", 0) == 0) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    const auto f = split(t, ',');
    if (f.size() != 8) throw FormatError(where + ": expected 8 columns");
    double rho = 0.0;
    const auto [ptr, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), rho);
    if (ec != std::errc() || ptr != f[2].data() + f[2].size()) throw FormatError(where + ": bad radius_norm");
    rows.push_back(EstimateRow{f[0], parse_rule(f[1]), rho, integer(f[3], where),
                               static_cast<CandidateId>(integer(f[4], where)), integer(f[5], where),
                               integer(f[6], where)});
    if (rows.back().samples < 1) throw FormatError(where + ": samples must be positive");
  }
  return rows;
}

}  // namespace swapcount
