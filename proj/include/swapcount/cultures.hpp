#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "swapcount/core.hpp"
#include "swapcount/random.hpp"

namespace swapcount {

enum class CultureKind { IC, Urn, Mallows, Cube, Sphere, SPConitzer, SPWalsh, SPOC, SingleCrossing };

/// A statistical culture together with the election size and seed.
/// `alpha` is used by Urn, `phi` by Mallows, `dimension` by Cube and Sphere.
struct CultureSpec {
  CultureKind kind = CultureKind::IC;
  double alpha = 0.0;
  double phi = 1.0;
  int dimension = 1;
  int m = 0;
  int n = 0;
  std::uint64_t seed = kDefaultSeed;

  // Throws std::invalid_argument on out-of-range parameters.
  void validate() const;
  // Culture name as written to manifests ("ic", "urn", "mallows", ...).
  std::string label() const;
  // Parameter field as written to manifests ("alpha=0.1", "t=2", or "").
  std::string params() const;
};

CultureKind parse_culture(const std::string& text);
const char* culture_name(CultureKind kind);
// Inverse of label()/params(); m, n and seed are left untouched.
CultureSpec parse_culture_spec(const std::string& label, const std::string& params);

struct Generated {
  Election election;
  // Societal axis for the single-peaked cultures (circular for SPOC); empty
  // otherwise.
  std::vector<CandidateId> axis;
};

Generated generate_detailed(const CultureSpec& spec, RandomSource& rng);
Election generate(const CultureSpec& spec, RandomSource& rng);
// Uses an Mt64Source seeded with spec.seed.
Election generate(const CultureSpec& spec);

// Every prefix of v is a contiguous block of `axis`.
bool is_single_peaked(const Vote& v, std::span<const CandidateId> axis);
// Every prefix of v is a contiguous arc of the cyclic `axis`.
bool is_single_peaked_on_circle(const Vote& v, std::span<const CandidateId> axis);
// For every pair of candidates, the voters preferring the first form a
// prefix or a suffix of the voter sequence.
bool is_single_crossing(const Election& e);

// --- datasets -------------------------------------------------------------

struct ManifestEntry {
  std::string id;
  std::string culture;
  std::string params;
  std::uint64_t seed = 0;
};

// One line per election: id,culture,params,seed. '#' lines are comments.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, std::span<const ManifestEntry> entries,
                    const std::vector<std::string>& header = {});

// Elections live next to the manifest as <id>.election.
std::filesystem::path election_path(const std::filesystem::path& manifest, const std::string& id);

struct DatasetEntry {
  ManifestEntry meta;
  Election election;
};

std::vector<DatasetEntry> load_dataset(const std::filesystem::path& manifest);

// Generates every spec, writes <dir>/<id>.election files and <dir>/manifest.csv,
// and returns the manifest path. Ids are "<prefix><index>" zero-padded.
struct NamedSpec {
  std::string id;
  CultureSpec spec;
};
std::filesystem::path write_dataset(const std::filesystem::path& dir, std::span<const NamedSpec> specs,
                                    const std::vector<std::string>& header = {});

// One election per (culture, parameter) cell: IC, urn and Mallows parameter
// sweeps, cubes and spheres of several dimensions, and the structured cultures.
std::vector<NamedSpec> culture_sweep(int m, int n, std::uint64_t base_seed);

// The four-culture set used for desk-scale replication: `per_culture`
// elections each of IC, urn(0.1), Mallows(0.5) and Mallows(0.2).
std::vector<NamedSpec> desk_dataset(int m, int n, int per_culture, std::uint64_t base_seed);

}  // namespace swapcount
