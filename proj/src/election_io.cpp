#include "swapcount/election_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace swapcount {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

long parse_int(const std::string& token, const std::string& context) {
  const std::string t = trim(token);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw FormatError(context + ": expected an integer, got '" + t + "'");
  }
  return value;
}

std::vector<long> parse_int_list(const std::string& text, const std::string& context) {
  std::vector<long> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) values.push_back(parse_int(token, context));
  return values;
}

// Next line that is neither blank nor a '#' comment.
bool next_data_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    line = t;
    return true;
  }
  return false;
}

Vote to_vote(const std::vector<long>& indices, long offset, const std::string& context) {
  std::vector<CandidateId> ranking;
  ranking.reserve(indices.size());
  for (long i : indices) ranking.push_back(static_cast<CandidateId>(i - offset));
  try {
    return Vote(std::move(ranking));
  } catch (const std::invalid_argument& err) {
    throw FormatError(context + ": " + err.what());
  }
}

}  // namespace

Election read_election(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_data_line(in, line, line_no)) throw FormatError("election: empty input");
  std::istringstream header(line);
  long m = 0, n = 0;
  if (!(header >> m >> n) || m < 1 || n < 1) {
    throw FormatError("election line " + std::to_string(line_no) + ": expected 'm n' with m, n >= 1");
  }

  std::vector<std::string> names(m);
  std::vector<bool> seen(m, false);
  for (long i = 0; i < m; ++i) {
    const std::string ctx = "election line " + std::to_string(line_no + 1);
    if (!next_data_line(in, line, line_no)) throw FormatError(ctx + ": missing candidate line");
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw FormatError(ctx + ": expected 'index,name'");
    const long index = parse_int(line.substr(0, comma), ctx);
    if (index < 0 || index >= m || seen[index]) throw FormatError(ctx + ": bad candidate index");
    seen[index] = true;
    names[index] = trim(line.substr(comma + 1));
  }

  std::vector<Vote> votes;
  votes.reserve(n);
  for (long i = 0; i < n; ++i) {
    const std::string ctx = "election line " + std::to_string(line_no + 1);
    if (!next_data_line(in, line, line_no)) throw FormatError(ctx + ": missing vote line");
    const auto indices = parse_int_list(line, ctx);
    if (static_cast<long>(indices.size()) != m) throw FormatError(ctx + ": vote must rank all candidates");
    votes.push_back(to_vote(indices, 0, ctx));
  }
  if (next_data_line(in, line, line_no)) {
    throw FormatError("election line " + std::to_string(line_no) + ": trailing data after votes");
  }
  try {
    return Election(std::move(names), std::move(votes));
  } catch (const std::invalid_argument& err) {
    throw FormatError(std::string("election: ") + err.what());
  }
}

void write_election(std::ostream& out, const Election& e, const std::vector<std::string>& header_comments) {
  for (const auto& comment : header_comments) out << "# " << comment << '\n';
  out << e.candidate_count() << ' ' << e.voter_count() << '\n';
  for (int c = 0; c < e.candidate_count(); ++c) out << c << ',' << e.names()[c] << '\n';
  for (const Vote& v : e.votes()) {
    for (int pos = 0; pos < v.size(); ++pos) out << (pos ? "," : "") << v.at(pos);
    out << '\n';
  }
}

Election read_preflib_soc(std::istream& in) {
  long declared_m = -1;
  std::map<long, std::string> alt_names;
  std::vector<Vote> votes;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::string ctx = "soc line " + std::to_string(line_no);
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = trim(body.substr(0, colon));
      const std::string value = trim(body.substr(colon + 1));
      if (key == "NUMBER ALTERNATIVES") {
        declared_m = parse_int(value, ctx);
      } else if (key.rfind("ALTERNATIVE NAME", 0) == 0) {
        alt_names[parse_int(key.substr(16), ctx)] = value;
      }
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw FormatError(ctx + ": expected 'count: i1,i2,...'");
    const long count = parse_int(line.substr(0, colon), ctx);
    if (count < 0) throw FormatError(ctx + ": negative multiplicity");
    const auto indices = parse_int_list(line.substr(colon + 1), ctx);
    if (declared_m < 0) declared_m = static_cast<long>(indices.size());
    if (static_cast<long>(indices.size()) != declared_m) {
      throw FormatError(ctx + ": order is not complete (" + std::to_string(indices.size()) + " of " +
                        std::to_string(declared_m) + " alternatives)");
    }
    const Vote vote = to_vote(indices, 1, ctx);
    for (long k = 0; k < count; ++k) votes.push_back(vote);
  }
  if (declared_m < 1 || votes.empty()) throw FormatError("soc: no votes found");

  std::vector<std::string> names(declared_m);
  std::set<std::string> used;
  for (long c = 0; c < declared_m; ++c) {
    const auto it = alt_names.find(c + 1);
    std::string name = it != alt_names.end() && !it->second.empty() ? it->second : "c" + std::to_string(c);
    if (used.count(name)) name += " #" + std::to_string(c + 1);
    used.insert(name);
    names[c] = name;
  }
  return Election(std::move(names), std::move(votes));
}

Election load_election(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open election file " + path.string());
  if (path.extension() == ".soc") return read_preflib_soc(in);
  return read_election(in);
}

void save_election(const std::filesystem::path& path, const Election& e,
                   const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write election file " + path.string());
  write_election(out, e, header_comments);
}

}  // namespace swapcount
