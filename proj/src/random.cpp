#include "swapcount/random.hpp"

#include <bit>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace swapcount {

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  // Rejection on the largest multiple of bound.
  const std::uint64_t limit = max() - max() % bound;
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x < limit) return x % bound;
  }
}

BigCount RandomSource::uniform_below(const BigCount& bound) {
  if (sgn(bound) <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
  if (bound.fits_ulong_p()) return BigCount(static_cast<unsigned long>(uniform_below(bound.get_ui())));
  // Draw bitlen(bound) random bits and reject values >= bound; fewer than
  // two attempts on average.
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
  const std::uint64_t top_mask = top_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
  std::vector<std::uint64_t> buffer(words);
  BigCount value;
  for (;;) {
    for (auto& w : buffer) w = next_u64();
    buffer.back() &= top_mask;  // most significant word (least-significant-first order)
    mpz_import(value.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buffer.data());
    if (value < bound) return value;
  }
}

double RandomSource::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RandomSource::normal() { return normal_(*this); }

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = splitmix(base);
  for (std::uint64_t p : parts) h = splitmix(h ^ std::rotl(splitmix(p), 17));
  return h;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace swapcount
