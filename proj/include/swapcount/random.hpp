#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

#include "swapcount/bigcount.hpp"

namespace swapcount {

// Seed used when a caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 20210521;

/// Source of uniform 64-bit words. All derived draws (bounded integers, big
/// integers, reals) are built here from next_u64() with algorithms that do
/// not depend on the standard library implementation, so a seed fixes the
/// sample stream on every platform. The one exception is normal(), which
/// delegates to std::normal_distribution.
class RandomSource {
 public:
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  virtual ~RandomSource() = default;
  virtual std::uint64_t next_u64() = 0;
  result_type operator()() { return next_u64(); }

  // Uniform in [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);
  BigCount uniform_below(const BigCount& bound);
  // Uniform in [0, 1) with 53 random bits.
  double uniform01();
  bool coin() { return (next_u64() >> 63) != 0; }
  double normal();

 private:
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Default generator: std::mt19937_64, whose output sequence is fixed by the
/// C++ standard.
class Mt64Source final : public RandomSource {
 public:
  explicit Mt64Source(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}
  std::uint64_t next_u64() override { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Deterministic child seed from a base seed and task coordinates
// (splitmix64 finalizer folded over the parts).
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts);

// Stable 64-bit FNV-1a hash, used to turn identifiers into seed parts.
std::uint64_t fnv1a(std::string_view text);

}  // namespace swapcount
