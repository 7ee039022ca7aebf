#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swapcount/core.hpp"
#include "swapcount/cultures.hpp"
#include "swapcount/random.hpp"
#include "swapcount/tables.hpp"

namespace swapcount {

/// Normalized swap radii in (0, 1], strictly increasing. A radius rho maps to
/// rho * n * m(m-1)/2 swaps for an election with m candidates and n voters.
class DistanceGrid {
 public:
  // 0.05, 0.10, ..., 1.00
  static DistanceGrid coarse();
  // 0.0125, 0.025, ..., 0.5
  static DistanceGrid fine();
  // Throws std::invalid_argument unless every radius lies in (0, 1] and the
  // sequence is strictly increasing.
  explicit DistanceGrid(std::vector<double> radii);

  std::span<const double> radii() const { return radii_; }
  std::size_t size() const { return radii_.size(); }
  double operator[](std::size_t i) const { return radii_[i]; }

 private:
  std::vector<double> radii_;
};

// Parses "coarse", "fine", or a comma-separated list of radii.
DistanceGrid parse_grid(const std::string& text);

// round(rho * n * m(m-1)/2), ties to even.
std::int64_t normalized_to_swaps(double rho, int m, int n);

struct RadiusEstimate {
  double radius_norm = 0.0;
  std::int64_t radius_swaps = 0;
  std::int64_t samples = 0;
  std::vector<std::int64_t> wins;  // per candidate

  double frequency(CandidateId c) const {
    return static_cast<double>(wins[c]) / static_cast<double>(samples);
  }
};

struct EstimateResult {
  std::string election_id;
  Rule rule = Rule::Plurality;
  std::uint64_t seed = 0;
  std::vector<RadiusEstimate> radii;
};

// Win counts at one radius for several rules from the same samples; element k
// of the result belongs to rules[k].
std::vector<RadiusEstimate> estimate_radius(const Election& e, std::span<const Rule> rules, std::int64_t r,
                                            std::int64_t samples, const CountingTables& tables, RandomSource& rng);

EstimateResult estimate(const Election& e, Rule rule, const DistanceGrid& grid, std::int64_t samples,
                        const CountingTables& tables, RandomSource& rng);

// First grid radius where the winner's frequency is strictly below 0.5.
std::optional<double> threshold(const EstimateResult& result, CandidateId original_winner);

// Winner score minus the best other score; empty when the winners tie.
std::optional<std::int64_t> score_margin(const Election& e, Rule rule);

// --- batch pipeline ---------------------------------------------------------

struct ExperimentConfig {
  std::vector<Rule> rules{Rule::Plurality, Rule::Borda};
  DistanceGrid grid = DistanceGrid::coarse();
  std::int64_t samples = 500;
  std::uint64_t base_seed = kDefaultSeed;
  int jobs = 1;

  // Stable hash of everything that influences the output.
  std::uint64_t hash() const;
};

struct EstimateRow {
  std::string election_id;
  Rule rule;
  double radius_norm;
  std::int64_t radius_swaps;
  CandidateId candidate;
  std::int64_t wins;
  std::int64_t samples;
};

struct SummaryRow {
  std::string election_id;
  Rule rule;
  std::string culture;
  std::string params;
  std::int64_t score_margin;
  std::optional<double> threshold;
};

struct ExcludedRow {
  std::string election_id;
  Rule rule;
  std::string reason;
};

struct ExperimentOutput {
  std::vector<EstimateRow> estimates;
  std::vector<SummaryRow> summary;
  std::vector<ExcludedRow> excluded;
};

// Estimates every (election, radius) pair on a pool of config.jobs workers.
// Each pair draws from its own generator seeded by (base_seed, election id,
// radius index), so the output does not depend on the number of workers.
ExperimentOutput run_experiment(std::span<const DatasetEntry> dataset, const ExperimentConfig& config);

// Rebuilds summary rows from estimate rows (the threshold subcommand).
ExperimentOutput summarize(std::span<const DatasetEntry> dataset, std::span<const EstimateRow> estimates);

void write_estimates_csv(const std::filesystem::path& path, std::span<const EstimateRow> rows,
                         const std::vector<std::string>& header = {});
void write_summary_csv(const std::filesystem::path& path, std::span<const SummaryRow> rows,
                       const std::vector<std::string>& header = {});
void write_excluded_csv(const std::filesystem::path& path, std::span<const ExcludedRow> rows,
                        const std::vector<std::string>& header = {});
std::vector<EstimateRow> read_estimates_csv(const std::filesystem::path& path);

// Fixed six-digit decimal rendering used in every CSV.
std::string format_fixed(double value);

}  // namespace swapcount
