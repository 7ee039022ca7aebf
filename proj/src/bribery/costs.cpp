#include <cctype>

#include "swapcount/bribery.hpp"

namespace swapcount {

CostFunction CostFunction::unit(int n, int m) {
  std::vector<std::vector<std::int64_t>> costs(n, std::vector<std::int64_t>(m));
  for (auto& row : costs) {
    for (int l = 0; l < m; ++l) row[l] = l;
  }
  return CostFunction(std::move(costs));
}

CostFunction::CostFunction(std::vector<std::vector<std::int64_t>> costs) : costs_(std::move(costs)) {
  for (std::size_t v = 0; v < costs_.size(); ++v) {
    const auto& row = costs_[v];
    const std::string who = "cost function, voter " + std::to_string(v);
    if (row.empty() || row[0] != 0) throw std::invalid_argument(who + ": shifting by 0 must cost 0");
    for (std::size_t l = 1; l < row.size(); ++l) {
      if (row[l] < row[l - 1]) throw std::invalid_argument(who + ": costs must be nondecreasing");
    }
  }
}

bool CostFunction::is_unit() const {
  for (const auto& row : costs_) {
    for (std::size_t l = 0; l < row.size(); ++l) {
      if (row[l] != static_cast<std::int64_t>(l)) return false;
    }
  }
  return true;
}

const char* mode_name(ShiftMode mode) {
  return mode == ShiftMode::Constructive ? "constructive" : "destructive";
}

ShiftMode parse_mode(const std::string& text) {
  std::string lower;
  for (char ch : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "constructive") return ShiftMode::Constructive;
  if (lower == "destructive") return ShiftMode::Destructive;
  throw std::invalid_argument("unknown shift mode '" + text + "' (expected constructive or destructive)");
}

GainVector gain_vector(const Vote& v, CandidateId p, int shift, std::span<const CandidateId> critical) {
  const int pos = v.position_of(p);
  if (shift < 0 || shift > pos) return GainVector{false, {}};
  GainVector gain{true, std::vector<int>(critical.size(), 0)};
  for (std::size_t k = 0; k < critical.size(); ++k) {
    const int cpos = v.position_of(critical[k]);
    if (cpos >= pos - shift && cpos < pos) gain.g[k] = 1;
  }
  return gain;
}

}  // namespace swapcount
