#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "swapcount/core.hpp"

namespace swapcount {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Native text format:
//   m n
//   0,name0
//   ...
//   m-1,name(m-1)
//   i1,i2,...,im      (n ranking lines, most preferred first)
// Lines starting with '#' are comments and may appear anywhere.
Election read_election(std::istream& in);
void write_election(std::ostream& out, const Election& e,
                    const std::vector<std::string>& header_comments = {});

// PrefLib strict-order-complete (.soc) files. Alternatives are 1-based in the
// file and become 0-based candidates; "count: i1,...,im" lines are expanded.
Election read_preflib_soc(std::istream& in);

// Dispatches on extension: ".soc" -> PrefLib, anything else -> native format.
Election load_election(const std::filesystem::path& path);
void save_election(const std::filesystem::path& path, const Election& e,
                   const std::vector<std::string>& header_comments = {});

}  // namespace swapcount
