#include "swapcount/cultures.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "swapcount/election_io.hpp"

namespace swapcount {

namespace {

std::vector<CandidateId> random_order(int m, RandomSource& rng) {
  std::vector<CandidateId> order(m);
  std::iota(order.begin(), order.end(), 0);
  for (int i = m - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_below(static_cast<std::uint64_t>(i) + 1)]);
  return order;
}

std::string format_real(double x) {
  std::ostringstream out;
  out << std::setprecision(6) << x;
  return out.str();
}

Vote mallows_vote(const std::vector<CandidateId>& center, double phi, RandomSource& rng) {
  const int m = static_cast<int>(center.size());
  std::vector<CandidateId> ranking;
  ranking.reserve(m);
  std::vector<double> weight(m);
  for (int j = 0; j < m; ++j) {
    // Insert the j-th central candidate at position i with weight phi^(j-i).
    double total = 0.0;
    for (int i = 0; i <= j; ++i) {
      weight[i] = std::pow(phi, j - i);
      total += weight[i];
    }
    double u = rng.uniform01() * total;
    int at = j;
    for (int i = 0; i <= j; ++i) {
      if (u < weight[i]) {
        at = i;
        break;
      }
      u -= weight[i];
    }
    ranking.insert(ranking.begin() + at, center[j]);
  }
  return Vote(std::move(ranking));
}

std::vector<double> point(const CultureSpec& spec, RandomSource& rng) {
  std::vector<double> x(spec.dimension);
  if (spec.kind == CultureKind::Cube) {
    for (double& coord : x) coord = rng.uniform01();
    return x;
  }
  double norm = 0.0;
  while (norm == 0.0) {
    norm = 0.0;
    for (double& coord : x) {
      coord = rng.normal();
      norm += coord * coord;
    }
  }
  norm = std::sqrt(norm);
  for (double& coord : x) coord /= norm;
  return x;
}

std::vector<Vote> euclidean_votes(const CultureSpec& spec, RandomSource& rng) {
  std::vector<std::vector<double>> candidates;
  for (int c = 0; c < spec.m; ++c) candidates.push_back(point(spec, rng));
  std::vector<Vote> votes;
  for (int i = 0; i < spec.n; ++i) {
    const std::vector<double> voter = point(spec, rng);
    std::vector<std::pair<double, CandidateId>> by_distance;
    for (int c = 0; c < spec.m; ++c) {
      double d = 0.0;
      for (int k = 0; k < spec.dimension; ++k) d += (voter[k] - candidates[c][k]) * (voter[k] - candidates[c][k]);
      by_distance.emplace_back(d, c);
    }
    std::sort(by_distance.begin(), by_distance.end());
    std::vector<CandidateId> ranking;
    for (const auto& [d, c] : by_distance) ranking.push_back(c);
    votes.emplace_back(std::move(ranking));
  }
  return votes;
}

// Peak chosen uniformly, then the ranking grows left or right along the axis
// with probability 1/2 each (forced at the ends). With `cyclic` the axis
// wraps around and growth continues until every candidate is ranked.
Vote conitzer_vote(const std::vector<CandidateId>& axis, bool cyclic, RandomSource& rng) {
  const int m = static_cast<int>(axis.size());
  const int peak = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(m)));
  std::vector<CandidateId> ranking{axis[peak]};
  int left = peak;
  int right = peak;
  while (static_cast<int>(ranking.size()) < m) {
    bool go_left;
    if (cyclic) {
      go_left = rng.coin();
    } else if (left == 0) {
      go_left = false;
    } else if (right == m - 1) {
      go_left = true;
    } else {
      go_left = rng.coin();
    }
    if (go_left) {
      left = (left - 1 + m) % m;
      ranking.push_back(axis[left]);
    } else {
      right = (right + 1) % m;
      ranking.push_back(axis[right]);
    }
  }
  return Vote(std::move(ranking));
}

// Built from the bottom: the least preferred candidate is always an end of
// the remaining axis interval.
Vote walsh_vote(const std::vector<CandidateId>& axis, RandomSource& rng) {
  const int m = static_cast<int>(axis.size());
  std::vector<CandidateId> reversed;
  int left = 0;
  int right = m - 1;
  while (left < right) reversed.push_back(rng.coin() ? axis[left++] : axis[right--]);
  reversed.push_back(axis[left]);
  return Vote(std::vector<CandidateId>(reversed.rbegin(), reversed.rend()));
}

std::vector<Vote> single_crossing_votes(const CultureSpec& spec, RandomSource& rng) {
  const int m = spec.m;
  std::vector<CandidateId> current = random_order(m, rng);
  std::vector<int> rank_in_start(m);
  for (int i = 0; i < m; ++i) rank_in_start[current[i]] = i;

  std::vector<Vote> chain{Vote(current)};
  while (true) {
    // Adjacent pairs still in their starting relative order.
    std::vector<int> open;
    for (int k = 0; k + 1 < m; ++k) {
      if (rank_in_start[current[k]] < rank_in_start[current[k + 1]]) open.push_back(k);
    }
    if (open.empty()) break;
    const int k = open[rng.uniform_below(open.size())];
    std::swap(current[k], current[k + 1]);
    chain.emplace_back(current);
  }

  std::vector<std::size_t> picks(spec.n);
  for (auto& pick : picks) pick = rng.uniform_below(chain.size());
  std::sort(picks.begin(), picks.end());
  std::vector<Vote> votes;
  for (std::size_t pick : picks) votes.push_back(chain[pick]);
  return votes;
}

std::string lower(std::string text) {
  for (char& ch : text) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return text;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid value for " + what + ": '" + text + "'");
  }
}

}  // namespace

void CultureSpec::validate() const {
  if (m < 1) throw std::invalid_argument("culture: need at least one candidate");
  if (n < 1) throw std::invalid_argument("culture: need at least one voter");
  switch (kind) {
    case CultureKind::Urn:
      if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("urn: alpha must be a finite value >= 0");
      break;
    case CultureKind::Mallows:
      if (!(phi >= 0.0 && phi <= 1.0)) throw std::invalid_argument("mallows: phi must lie in [0, 1]");
      break;
    case CultureKind::Cube:
    case CultureKind::Sphere:
      if (dimension < 1) throw std::invalid_argument(label() + ": dimension must be positive");
      break;
    default:
      break;
  }
}

const char* culture_name(CultureKind kind) {
  switch (kind) {
    case CultureKind::IC: return "ic";
    case CultureKind::Urn: return "urn";
    case CultureKind::Mallows: return "mallows";
    case CultureKind::Cube: return "cube";
    case CultureKind::Sphere: return "sphere";
    case CultureKind::SPConitzer: return "sp-conitzer";
    case CultureKind::SPWalsh: return "sp-walsh";
    case CultureKind::SPOC: return "spoc";
    case CultureKind::SingleCrossing: return "single-crossing";
  }
  return "?";
}

CultureKind parse_culture(const std::string& text) {
  const std::string key = lower(trim(text));
  for (CultureKind kind : {CultureKind::IC, CultureKind::Urn, CultureKind::Mallows, CultureKind::Cube,
                           CultureKind::Sphere, CultureKind::SPConitzer, CultureKind::SPWalsh, CultureKind::SPOC,
                           CultureKind::SingleCrossing}) {
    if (key == culture_name(kind)) return kind;
  }
  throw std::invalid_argument("unknown culture '" + text +
                              "' (expected ic, urn, mallows, cube, sphere, sp-conitzer, sp-walsh, spoc, "
                              "single-crossing)");
}

std::string CultureSpec::label() const { return culture_name(kind); }

std::string CultureSpec::params() const {
  switch (kind) {
    case CultureKind::Urn: return "alpha=" + format_real(alpha);
    case CultureKind::Mallows: return "phi=" + format_real(phi);
    case CultureKind::Cube:
    case CultureKind::Sphere: return "t=" + std::to_string(dimension);
    default: return "";
  }
}

CultureSpec parse_culture_spec(const std::string& label, const std::string& params) {
  CultureSpec spec;
  spec.kind = parse_culture(label);
  const std::string p = trim(params);
  if (p.empty()) {
    if (spec.kind == CultureKind::Urn || spec.kind == CultureKind::Mallows || spec.kind == CultureKind::Cube ||
        spec.kind == CultureKind::Sphere) {
      throw std::invalid_argument(spec.label() + ": missing parameter");
    }
    return spec;
  }
  const auto eq = p.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("culture parameters must look like key=value: '" + p + "'");
  const std::string key = lower(trim(p.substr(0, eq)));
  const std::string value = trim(p.substr(eq + 1));
  if (spec.kind == CultureKind::Urn && key == "alpha") {
    spec.alpha = parse_real(value, "alpha");
  } else if (spec.kind == CultureKind::Mallows && key == "phi") {
    spec.phi = parse_real(value, "phi");
  } else if ((spec.kind == CultureKind::Cube || spec.kind == CultureKind::Sphere) && key == "t") {
    const double t = parse_real(value, "t");
    if (t != std::floor(t)) throw std::invalid_argument("t must be an integer");
    spec.dimension = static_cast<int>(t);
  } else {
    throw std::invalid_argument("parameter '" + key + "' does not apply to culture " + spec.label());
  }
  return spec;
}

Generated generate_detailed(const CultureSpec& spec, RandomSource& rng) {
  spec.validate();
  const int m = spec.m;
  const int n = spec.n;
  std::vector<Vote> votes;
  std::vector<CandidateId> axis;
  votes.reserve(n);

  switch (spec.kind) {
    case CultureKind::IC:
      for (int i = 0; i < n; ++i) votes.emplace_back(random_order(m, rng));
      break;
    case CultureKind::Urn:
      for (int i = 0; i < n; ++i) {
        const double copy = i * spec.alpha / (1.0 + i * spec.alpha);
        if (i > 0 && rng.uniform01() < copy) {
          votes.push_back(votes[rng.uniform_below(static_cast<std::uint64_t>(i))]);
        } else {
          votes.emplace_back(random_order(m, rng));
        }
      }
      break;
    case CultureKind::Mallows: {
      const std::vector<CandidateId> center = random_order(m, rng);
      for (int i = 0; i < n; ++i) votes.push_back(mallows_vote(center, spec.phi, rng));
      break;
    }
    case CultureKind::Cube:
    case CultureKind::Sphere:
      votes = euclidean_votes(spec, rng);
      break;
    case CultureKind::SPConitzer:
    case CultureKind::SPOC:
      axis = random_order(m, rng);
      for (int i = 0; i < n; ++i) votes.push_back(conitzer_vote(axis, spec.kind == CultureKind::SPOC, rng));
      break;
    case CultureKind::SPWalsh:
      axis = random_order(m, rng);
      for (int i = 0; i < n; ++i) votes.push_back(walsh_vote(axis, rng));
      break;
    case CultureKind::SingleCrossing:
      votes = single_crossing_votes(spec, rng);
      break;
  }
  return Generated{Election(m, std::move(votes)), std::move(axis)};
}

Election generate(const CultureSpec& spec, RandomSource& rng) { return generate_detailed(spec, rng).election; }

Election generate(const CultureSpec& spec) {
  Mt64Source rng(spec.seed);
  return generate(spec, rng);
}

bool is_single_peaked(const Vote& v, std::span<const CandidateId> axis) {
  const int m = v.size();
  if (static_cast<int>(axis.size()) != m) return false;
  std::vector<int> where(m, -1);
  for (int i = 0; i < m; ++i) where[axis[i]] = i;
  int lo = where[v.top()];
  int hi = lo;
  for (int k = 1; k < m; ++k) {
    const int at = where[v.at(k)];
    if (at == lo - 1) {
      lo = at;
    } else if (at == hi + 1) {
      hi = at;
    } else {
      return false;
    }
  }
  return true;
}

bool is_single_peaked_on_circle(const Vote& v, std::span<const CandidateId> axis) {
  const int m = v.size();
  if (static_cast<int>(axis.size()) != m) return false;
  std::vector<int> where(m, -1);
  for (int i = 0; i < m; ++i) where[axis[i]] = i;
  int lo = where[v.top()];
  int hi = lo;
  for (int k = 1; k < m; ++k) {
    const int at = where[v.at(k)];
    if (at == (lo - 1 + m) % m) {
      lo = at;
    } else if (at == (hi + 1) % m) {
      hi = at;
    } else {
      return false;
    }
  }
  return true;
}

bool is_single_crossing(const Election& e) {
  const int m = e.candidate_count();
  const int n = e.voter_count();
  for (CandidateId a = 0; a < m; ++a) {
    for (CandidateId b = a + 1; b < m; ++b) {
      // The preference between a and b may flip at most once along the voters.
      int flips = 0;
      bool prev = e.vote(0).position_of(a) < e.vote(0).position_of(b);
      for (int i = 1; i < n; ++i) {
        const bool now = e.vote(i).position_of(a) < e.vote(i).position_of(b);
        if (now != prev) ++flips;
        prev = now;
      }
      if (flips > 1) return false;
    }
  }
  return true;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path.string());
  std::vector<ManifestEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(t);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (t.back() == ',') fields.emplace_back();
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (fields.size() != 4) throw FormatError(where + ": expected id,culture,params,seed");
    if (fields[0] == "id" && fields[3] == "seed") continue;  // column header
    ManifestEntry entry{fields[0], fields[1], fields[2], 0};
    const auto [ptr, ec] = std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), entry.seed);
    if (ec != std::errc() || ptr != fields[3].data() + fields[3].size()) throw FormatError(where + ": bad seed");
    if (entry.id.empty()) throw FormatError(where + ": empty id");
    entries.push_back(std::move(entry));
  }
  return entries;
}

void write_manifest(const std::filesystem::path& path, std::span<const ManifestEntry> entries,
                    const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest " + path.string());
  for (const auto& line : header) out << "# " << line << '\n';
  out << "id,culture,params,seed\n";
  for (const auto& entry : entries) {
    out << entry.id << ',' << entry.culture << ',' << entry.params << ',' << entry.seed << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::filesystem::path election_path(const std::filesystem::path& manifest, const std::string& id) {
  return manifest.parent_path() / (id + ".election");
}

std::vector<DatasetEntry> load_dataset(const std::filesystem::path& manifest) {
  std::vector<DatasetEntry> dataset;
  for (auto& entry : read_manifest(manifest)) {
    Election e = load_election(election_path(manifest, entry.id));
    dataset.push_back(DatasetEntry{std::move(entry), std::move(e)});
  }
  return dataset;
}

std::filesystem::path write_dataset(const std::filesystem::path& dir, std::span<const NamedSpec> specs,
                                    const std::vector<std::string>& header) {
  std::filesystem::create_directories(dir);
  std::vector<ManifestEntry> entries;
  for (const auto& [id, spec] : specs) {
    std::vector<std::string> comments = header;
    comments.push_back("culture=" + spec.label() + (spec.params().empty() ? "" : " " + spec.params()) +
                       " seed=" + std::to_string(spec.seed));
    save_election(dir / (id + ".election"), generate(spec), comments);
    entries.push_back(ManifestEntry{id, spec.label(), spec.params(), spec.seed});
  }
  const auto manifest = dir / "manifest.csv";
  write_manifest(manifest, entries, header);
  return manifest;
}

namespace {

std::string padded(const std::string& prefix, std::size_t index, std::size_t width = 3) {
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

NamedSpec named(std::size_t index, CultureSpec spec, std::uint64_t base_seed) {
  const std::string id = padded("e", index);
  spec.seed = derive_seed(base_seed, {fnv1a(id)});
  return NamedSpec{id, spec};
}

}  // namespace

std::vector<NamedSpec> culture_sweep(int m, int n, std::uint64_t base_seed) {
  std::vector<CultureSpec> cells;
  auto add = [&](CultureKind kind) {
    CultureSpec spec;
    spec.kind = kind;
    spec.m = m;
    spec.n = n;
    cells.push_back(spec);
    return &cells.back();
  };
  add(CultureKind::IC);
  for (double alpha : {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0}) add(CultureKind::Urn)->alpha = alpha;
  for (double phi : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99}) add(CultureKind::Mallows)->phi = phi;
  for (int t : {1, 2, 3, 5, 10, 20}) add(CultureKind::Cube)->dimension = t;
  for (int t : {2, 3, 5}) add(CultureKind::Sphere)->dimension = t;
  add(CultureKind::SPConitzer);
  add(CultureKind::SPWalsh);
  add(CultureKind::SPOC);
  add(CultureKind::SingleCrossing);

  std::vector<NamedSpec> specs;
  for (std::size_t i = 0; i < cells.size(); ++i) specs.push_back(named(i, cells[i], base_seed));
  return specs;
}

std::vector<NamedSpec> desk_dataset(int m, int n, int per_culture, std::uint64_t base_seed) {
  std::vector<NamedSpec> specs;
  auto block = [&](CultureKind kind, double alpha, double phi) {
    for (int k = 0; k < per_culture; ++k) {
      CultureSpec spec;
      spec.kind = kind;
      spec.alpha = alpha;
      spec.phi = phi;
      spec.m = m;
      spec.n = n;
      specs.push_back(named(specs.size(), spec, base_seed));
    }
  };
  block(CultureKind::IC, 0.0, 1.0);
  block(CultureKind::Urn, 0.1, 1.0);
  block(CultureKind::Mallows, 0.0, 0.5);
  block(CultureKind::Mallows, 0.0, 0.2);
  return specs;
}

}  // namespace swapcount
