// swapcount command-line front end.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 guard exceeded,
// 3 self-test failure.

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "swapcount/bribery.hpp"
#include "swapcount/cultures.hpp"
#include "swapcount/election_io.hpp"
#include "swapcount/experiments.hpp"
#include "swapcount/sampler.hpp"
#include "swapcount/selfcheck.hpp"
#include "swapcount/tables.hpp"

namespace fs = std::filesystem;
using namespace swapcount;

namespace {

constexpr int kUsageError = 1;
constexpr int kGuardExceeded = 2;
constexpr int kCheckFailed = 3;

std::string hex(std::uint64_t value) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << value;
  return out.str();
}

// Comment lines embedded at the top of every output file.
std::vector<std::string> provenance(const std::string& command, std::uint64_t seed, const std::string& config) {
  return {"swapcount " + command, "seed=" + std::to_string(seed), "config=" + hex(fnv1a(config))};
}

CandidateId resolve_candidate(const Election& e, const std::string& text) {
  for (CandidateId c = 0; c < e.candidate_count(); ++c) {
    if (e.names()[c] == text) return c;
  }
  int index = -1;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
  if (ec != std::errc() || ptr != text.data() + text.size() || index < 0 || index >= e.candidate_count()) {
    throw std::invalid_argument("unknown candidate '" + text + "'");
  }
  return index;
}

CostFunction read_costs(const fs::path& path, const Election& e) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cost file " + path.string());
  std::vector<std::vector<std::int64_t>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::int64_t> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      std::int64_t value = 0;
      const auto first = field.find_first_not_of(" \t\r");
      const auto last = field.find_last_not_of(" \t\r");
      if (first == std::string::npos) throw FormatError(path.string() + ": empty cost entry");
      const auto [ptr, ec] = std::from_chars(field.data() + first, field.data() + last + 1, value);
      if (ec != std::errc() || ptr != field.data() + last + 1 || value < 0) {
        throw FormatError(path.string() + ": bad cost '" + field + "'");
      }
      row.push_back(value);
    }
    rows.push_back(std::move(row));
  }
  if (static_cast<int>(rows.size()) != e.voter_count()) {
    throw FormatError(path.string() + ": expected one cost row per voter (" + std::to_string(e.voter_count()) + ")");
  }
  return CostFunction(std::move(rows));
}

struct GenerateArgs {
  std::string culture = "ic";
  int m = 10;
  int n = 100;
  int count = 1;
  std::uint64_t seed = kDefaultSeed;
  double alpha = 0.1;
  double phi = 0.5;
  int dimension = 2;
  std::string preset;
  int per_culture = 20;
  std::string out = "dataset";
};

int cmd_generate(const GenerateArgs& a) {
  std::vector<NamedSpec> specs;
  std::string description;
  if (a.preset == "sweep") {
    specs = culture_sweep(a.m, a.n, a.seed);
    description = "preset=sweep";
  } else if (a.preset == "desk") {
    specs = desk_dataset(a.m, a.n, a.per_culture, a.seed);
    description = "preset=desk per_culture=" + std::to_string(a.per_culture);
  } else if (!a.preset.empty()) {
    throw std::invalid_argument("unknown preset '" + a.preset + "' (expected sweep or desk)");
  } else {
    CultureSpec spec;
    spec.kind = parse_culture(a.culture);
    spec.alpha = a.alpha;
    spec.phi = a.phi;
    spec.dimension = a.dimension;
    spec.m = a.m;
    spec.n = a.n;
    spec.validate();
    if (a.count < 1) throw std::invalid_argument("--count must be positive");
    for (int k = 0; k < a.count; ++k) {
      std::ostringstream id;
      id << spec.label() << '-' << std::setw(3) << std::setfill('0') << k;
      CultureSpec s = spec;
      s.seed = derive_seed(a.seed, {fnv1a(id.str())});
      specs.push_back(NamedSpec{id.str(), s});
    }
    description = "culture=" + spec.label() + " " + spec.params() + " count=" + std::to_string(a.count);
  }
  const std::string config = description + " m=" + std::to_string(a.m) + " n=" + std::to_string(a.n);
  const fs::path manifest = write_dataset(a.out, specs, provenance("generate", a.seed, config));
  std::cout << "wrote " << specs.size() << " elections and " << manifest.string() << '\n';
  return 0;
}

struct CountArgs {
  std::string election;
  std::string problem = "swap";
  std::string rule = "plurality";
  std::string mode = "constructive";
  std::string candidate = "0";
  std::int64_t r = 0;
  std::string costs;
  bool oracle = false;
  Guards guards;
};

int cmd_count(const CountArgs& a) {
  const Election e = load_election(a.election);
  const CandidateId p = resolve_candidate(e, a.candidate);
  const Rule rule = parse_rule(a.rule);
  if (a.r < 0) throw std::invalid_argument("--r must be nonnegative");
  BigCount result;
  if (a.problem == "swap") {
    if (!a.costs.empty()) throw std::invalid_argument("--costs applies to shift bribery only (swaps have unit prices)");
    if (a.oracle) {
      result = brute_force_count_swap(e, p, a.r, rule, a.guards);
    } else if (rule == Rule::Plurality) {
      result = count_plurality_swap_bribery(e, p, a.r, a.guards);
    } else {
      throw UnsupportedProblem(
          "no exact algorithm for Borda #Swap-Bribery; use --oracle on tiny instances or `estimate` to sample");
    }
  } else if (a.problem == "shift") {
    const ShiftMode mode = parse_mode(a.mode);
    const CostFunction costs = a.costs.empty() ? CostFunction::unit(e.voter_count(), e.candidate_count())
                                               : read_costs(a.costs, e);
    if (a.oracle) {
      result = brute_force_count_shift(e, p, a.r, costs, mode, rule, a.guards);
    } else if (rule == Rule::Plurality) {
      result = mode == ShiftMode::Constructive ? count_plurality_shift_constructive(e, p, a.r, costs)
                                               : count_plurality_shift_destructive(e, p, a.r, costs);
    } else if (mode == ShiftMode::Constructive) {
      result = count_borda_shift_constructive(e, p, a.r, costs, a.guards);
    } else {
      throw UnsupportedProblem(
          "no exact algorithm for Borda #Destructive Shift-Bribery (the problem is #W[1]-hard); use --oracle on tiny "
          "instances");
    }
  } else {
    throw std::invalid_argument("unknown problem '" + a.problem + "' (expected swap or shift)");
  }
  std::cout << to_decimal(result) << '\n';
  return 0;
}

struct SampleArgs {
  std::string election;
  std::int64_t r = -1;
  double radius = -1.0;
  int count = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

int cmd_sample(const SampleArgs& a) {
  const Election e = load_election(a.election);
  const int m = e.candidate_count();
  const int n = e.voter_count();
  if ((a.r >= 0) == (a.radius >= 0.0)) throw std::invalid_argument("give exactly one of --r and --radius");
  const std::int64_t r = a.r >= 0 ? a.r : normalized_to_swaps(a.radius, m, n);
  if (r > max_swaps(m) * n) throw std::invalid_argument("--r exceeds n*m(m-1)/2");
  if (a.count < 1) throw std::invalid_argument("--count must be positive");
  const CountingTables tables = CountingTables::build(m, n);
  Mt64Source rng(a.seed);
  const std::string config = "election=" + a.election + " r=" + std::to_string(r) + " count=" + std::to_string(a.count);
  const auto header = provenance("sample", a.seed, config);
  for (int k = 0; k < a.count; ++k) {
    const Election drawn = sample_election_at_distance(e, r, tables, rng);
    if (a.out.empty()) {
      write_election(std::cout, drawn, k == 0 ? header : std::vector<std::string>{"sample " + std::to_string(k)});
    } else {
      std::ostringstream name;
      name << "sample-" << std::setw(4) << std::setfill('0') << k << ".election";
      fs::create_directories(a.out);
      save_election(fs::path(a.out) / name.str(), drawn, header);
    }
  }
  return 0;
}

struct TablesArgs {
  int m = 10;
  int max_n = 100;
  std::string out = "cache";
};

int cmd_tables(const TablesArgs& a) {
  if (a.m < 1 || a.max_n < 1) throw std::invalid_argument("--m and --max-n must be positive");
  fs::create_directories(a.out);
  const CountingTables tables = CountingTables::build(a.m, a.max_n);
  const fs::path mahonian = fs::path(a.out) / ("mahonian-m" + std::to_string(a.m) + ".bin");
  const fs::path elections =
      fs::path(a.out) / ("elections-m" + std::to_string(a.m) + "-n" + std::to_string(a.max_n) + ".bin");
  tables.mahonian.save(mahonian);
  tables.elections.save(elections);
  std::cout << "wrote " << mahonian.string() << " and " << elections.string() << '\n';
  return 0;
}

struct EstimateArgs {
  std::string dataset;
  std::string rules = "plurality,borda";
  std::string grid = "coarse";
  std::int64_t samples = 500;
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
  std::string out = "results";
};

std::vector<Rule> parse_rules(const std::string& text) {
  std::vector<Rule> rules;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) rules.push_back(parse_rule(item));
  if (rules.empty()) throw std::invalid_argument("no rules given");
  return rules;
}

int cmd_estimate(const EstimateArgs& a) {
  ExperimentConfig config;
  config.rules = parse_rules(a.rules);
  config.grid = parse_grid(a.grid);
  config.samples = a.samples;
  config.base_seed = a.seed;
  config.jobs = a.jobs;
  const auto dataset = load_dataset(a.dataset);
  const ExperimentOutput out = run_experiment(dataset, config);
  const std::vector<std::string> header = {"swapcount estimate", "seed=" + std::to_string(a.seed),
                                           "config=" + hex(config.hash()), "dataset=" + a.dataset};
  const fs::path dir(a.out);
  write_estimates_csv(dir / "estimates.csv", out.estimates, header);
  write_summary_csv(dir / "summary.csv", out.summary, header);
  write_excluded_csv(dir / "excluded.csv", out.excluded, header);
  std::cout << "wrote " << out.estimates.size() << " estimate rows, " << out.summary.size() << " summary rows, "
            << out.excluded.size() << " exclusions to " << dir.string() << '\n';
  return 0;
}

struct ThresholdArgs {
  std::string dataset;
  std::string estimates;
  std::string out = "summary.csv";
};

int cmd_threshold(const ThresholdArgs& a) {
  const auto dataset = load_dataset(a.dataset);
  const auto rows = read_estimates_csv(a.estimates);
  const ExperimentOutput out = summarize(dataset, rows);
  const std::vector<std::string> header = {"swapcount threshold", "estimates=" + a.estimates,
                                           "config=" + hex(fnv1a(a.dataset + "|" + a.estimates))};
  write_summary_csv(a.out, out.summary, header);
  fs::path excluded = fs::path(a.out);
  excluded.replace_filename(excluded.stem().string() + "-excluded.csv");
  write_excluded_csv(excluded, out.excluded, header);
  std::cout << "wrote " << out.summary.size() << " summary rows to " << a.out << '\n';
  return 0;
}

struct SelftestArgs {
  bool quick = false;
  std::string cache;
  std::uint64_t seed = kDefaultSeed;
};

int cmd_selftest(const SelftestArgs& a) {
  SelfTestOptions options;
  options.quick = a.quick;
  options.seed = a.seed;
  if (!a.cache.empty()) options.cache = a.cache;
  bool ok = true;
  run_selftest(options, [&](const CheckResult& res) {
    ok = ok && res.passed;
    std::cout << (res.passed ? "PASS " : "FAIL ") << res.name << " (" << std::fixed << std::setprecision(2)
              << res.seconds << "s): " << res.detail << std::endl;
  });
  std::cout << (ok ? "all checks passed" : "self-test FAILED") << '\n';
  return ok ? 0 : kCheckFailed;
}

void add_guards(CLI::App* cmd, Guards& guards) {
  cmd->add_option("--max-voters-fpt", guards.max_voters_fpt_n, "Voter limit for Plurality #Swap-Bribery")
      ->check(CLI::Range(1, 30));
  cmd->add_option("--max-radius-fpt", guards.max_radius_fpt_r, "Budget limit for Borda constructive shift")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--oracle-budget", guards.oracle_state_budget, "State limit for brute-force enumeration");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counting and uniform sampling of elections at a fixed swap distance"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file (flags take precedence)");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate elections from a statistical culture");
  generate->add_option("--culture", gen.culture, "ic, urn, mallows, cube, sphere, sp-conitzer, sp-walsh, spoc, "
                                                 "single-crossing");
  generate->add_option("--m", gen.m, "Candidates")->check(CLI::PositiveNumber);
  generate->add_option("--n", gen.n, "Voters")->check(CLI::PositiveNumber);
  generate->add_option("--count", gen.count, "Number of elections")->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "Base seed");
  generate->add_option("--alpha", gen.alpha, "Urn contagion parameter");
  generate->add_option("--phi", gen.phi, "Mallows dispersion in [0,1]");
  generate->add_option("--t", gen.dimension, "Cube/sphere dimension");
  generate->add_option("--preset", gen.preset, "sweep (one election per culture cell) or desk");
  generate->add_option("--per-culture", gen.per_culture, "Elections per culture for --preset desk");
  generate->add_option("--out", gen.out, "Output directory");

  CountArgs cnt;
  auto* count = app.add_subcommand("count", "Exact #Swap-/#Shift-Bribery count");
  count->add_option("--election", cnt.election, "Election file (.election or PrefLib .soc)")->required();
  count->add_option("--problem", cnt.problem, "swap or shift");
  count->add_option("--rule", cnt.rule, "plurality or borda");
  count->add_option("--mode", cnt.mode, "constructive or destructive (shift only)");
  count->add_option("--p", cnt.candidate, "Designated candidate (index or name)");
  count->add_option("--r", cnt.r, "Radius / budget");
  count->add_option("--costs", cnt.costs, "Shift cost file: one comma-separated row per voter");
  count->add_flag("--oracle", cnt.oracle, "Use exhaustive enumeration");
  add_guards(count, cnt.guards);

  SampleArgs smp;
  auto* sample = app.add_subcommand("sample", "Draw elections uniformly at a fixed swap distance");
  sample->add_option("--election", smp.election, "Election file")->required();
  sample->add_option("--r", smp.r, "Swap distance");
  sample->add_option("--radius", smp.radius, "Normalized swap distance in [0,1]");
  sample->add_option("--count", smp.count, "Number of samples");
  sample->add_option("--seed", smp.seed, "Seed");
  sample->add_option("--out", smp.out, "Output directory (default: standard output)");

  TablesArgs tab;
  auto* tables = app.add_subcommand("tables", "Precompute and cache counting tables");
  tables->add_option("--m", tab.m, "Candidates");
  tables->add_option("--max-n", tab.max_n, "Largest voter count");
  tables->add_option("--out", tab.out, "Cache directory");

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate winning probabilities and thresholds");
  estimate->add_option("--dataset", est.dataset, "Dataset manifest")->required();
  estimate->add_option("--rules", est.rules, "Comma-separated rules");
  estimate->add_option("--grid", est.grid, "coarse, fine, or comma-separated radii in (0,1]");
  estimate->add_option("--samples", est.samples, "Samples per radius")->check(CLI::PositiveNumber);
  estimate->add_option("--seed", est.seed, "Base seed");
  estimate->add_option("--jobs", est.jobs, "Worker threads")->check(CLI::PositiveNumber);
  estimate->add_option("--out", est.out, "Output directory");

  ThresholdArgs thr;
  auto* threshold = app.add_subcommand("threshold", "Recompute the summary table from an estimates CSV");
  threshold->add_option("--dataset", thr.dataset, "Dataset manifest")->required();
  threshold->add_option("--estimates", thr.estimates, "estimates.csv")->required();
  threshold->add_option("--out", thr.out, "Summary CSV path");

  SelftestArgs st;
  auto* selftest = app.add_subcommand("selftest", "Run the built-in verification suites");
  selftest->add_flag("--quick", st.quick, "Run the fast subset");
  selftest->add_option("--cache", st.cache, "Verify the table caches in this directory");
  selftest->add_option("--seed", st.seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*count) return cmd_count(cnt);
    if (*sample) return cmd_sample(smp);
    if (*tables) return cmd_tables(tab);
    if (*estimate) return cmd_estimate(est);
    if (*threshold) return cmd_threshold(thr);
    if (*selftest) return cmd_selftest(st);
  } catch (const GuardExceeded& err) {
    std::cerr << "error: guard " << err.guard() << " exceeded: " << err.what() << '\n';
    return kGuardExceeded;
  } catch (const UnsupportedProblem& err) {
    std::cerr << "error: unsupported: " << err.what() << '\n';
    return kUsageError;
  } catch (const CacheError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kCheckFailed;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
