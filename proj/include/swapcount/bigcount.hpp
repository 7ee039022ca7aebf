#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace swapcount {

// Exact nonnegative counts. Every counting table and counting result uses
// this type; values routinely exceed 64 bits.
using BigCount = mpz_class;

inline std::string to_decimal(const BigCount& value) { return value.get_str(10); }

BigCount factorial(int k);
BigCount power(const BigCount& base, unsigned long exponent);

// Low 64 bits of a nonnegative value (used for cheap cache checksums).
std::uint64_t low_word(const BigCount& value);

}  // namespace swapcount
