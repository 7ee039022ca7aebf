// Binary cache for counting tables.
//
// Layout (all integers little-endian):
//   char[8]  magic "SWAPCNT\0"
//   u32      format version (1)
//   u32      kind (1 = Mahonian, 2 = election counts)
//   u32      m   (max_m for Mahonian tables)
//   u32      max_n (0 for Mahonian tables)
//   u32      row count
//   per row: u64 low 64 bits of the row sum, u32 entry count,
//            per entry: u32 byte length, big-endian magnitude bytes
//
// Loading recomputes every row sum and checks it against both the stored
// checksum and the closed form (m! for Mahonian rows, (m!)^n for election
// rows), so a corrupted file is always rejected.

#include <array>
#include <cstring>
#include <fstream>

#include "swapcount/core.hpp"
#include "swapcount/tables.hpp"

namespace swapcount {

namespace {

constexpr std::array<char, 8> kMagic = {'S', 'W', 'A', 'P', 'C', 'N', 'T', '\0'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kKindMahonian = 1;
constexpr std::uint32_t kKindElections = 2;

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_le(std::istream& in, int bytes) {
  unsigned char b[8] = {};
  if (!in.read(reinterpret_cast<char*>(b), bytes)) throw CacheError("table cache: unexpected end of file");
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

void put_big(std::ostream& out, const BigCount& value) {
  std::size_t count = 0;
  void* raw = mpz_export(nullptr, &count, 1, 1, 1, 0, value.get_mpz_t());
  put_u32(out, static_cast<std::uint32_t>(count));
  if (count) out.write(static_cast<const char*>(raw), static_cast<std::streamsize>(count));
  void (*free_fn)(void*, std::size_t) = nullptr;
  mp_get_memory_functions(nullptr, nullptr, &free_fn);
  if (raw) free_fn(raw, count);
}

BigCount get_big(std::istream& in) {
  const auto count = static_cast<std::size_t>(get_le(in, 4));
  if (count > (std::size_t{1} << 24)) throw CacheError("table cache: implausible entry size");
  std::vector<unsigned char> bytes(count);
  if (count && !in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(count))) {
    throw CacheError("table cache: unexpected end of file");
  }
  BigCount value = 0;
  if (count) mpz_import(value.get_mpz_t(), count, 1, 1, 1, 0, bytes.data());
  return value;
}

BigCount row_sum(std::span<const BigCount> row) {
  BigCount sum = 0;
  for (const auto& v : row) sum += v;
  return sum;
}

void write_tables(const std::filesystem::path& path, std::uint32_t kind, std::uint32_t m, std::uint32_t max_n,
                  const std::vector<std::span<const BigCount>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write table cache " + path.string());
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, kVersion);
  put_u32(out, kind);
  put_u32(out, m);
  put_u32(out, max_n);
  put_u32(out, static_cast<std::uint32_t>(rows.size()));
  for (const auto& row : rows) {
    put_u64(out, low_word(row_sum(row)));
    put_u32(out, static_cast<std::uint32_t>(row.size()));
    for (const auto& v : row) put_big(out, v);
  }
  if (!out) throw std::runtime_error("failed writing table cache " + path.string());
}

struct RawTables {
  std::uint32_t kind = 0, m = 0, max_n = 0;
  std::vector<std::vector<BigCount>> rows;
  std::vector<std::uint64_t> checksums;
};

RawTables read_tables(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot open table cache " + path.string());
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw CacheError("table cache: bad magic");
  if (get_le(in, 4) != kVersion) throw CacheError("table cache: unsupported version");
  RawTables t;
  t.kind = static_cast<std::uint32_t>(get_le(in, 4));
  t.m = static_cast<std::uint32_t>(get_le(in, 4));
  t.max_n = static_cast<std::uint32_t>(get_le(in, 4));
  const auto row_count = static_cast<std::uint32_t>(get_le(in, 4));
  if (t.m > 1000 || t.max_n > 100000 || row_count > 100001) throw CacheError("table cache: implausible header");
  for (std::uint32_t i = 0; i < row_count; ++i) {
    t.checksums.push_back(get_le(in, 8));
    const auto entries = static_cast<std::uint32_t>(get_le(in, 4));
    if (entries > 100'000'000u) throw CacheError("table cache: implausible row length");
    std::vector<BigCount> row;
    row.reserve(entries);
    for (std::uint32_t k = 0; k < entries; ++k) row.push_back(get_big(in));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void verify_row(const RawTables& t, std::size_t i, std::int64_t expected_len, const BigCount& expected_sum) {
  if (static_cast<std::int64_t>(t.rows[i].size()) != expected_len) {
    throw CacheError("table cache: row " + std::to_string(i) + " has wrong length");
  }
  const BigCount sum = row_sum(t.rows[i]);
  if (low_word(sum) != t.checksums[i] || sum != expected_sum) {
    throw CacheError("table cache: row-sum checksum failure at row " + std::to_string(i));
  }
}

}  // namespace

void MahonianTable::save(const std::filesystem::path& path) const {
  std::vector<std::span<const BigCount>> rows(rows_.begin(), rows_.end());
  write_tables(path, kKindMahonian, static_cast<std::uint32_t>(max_m()), 0, rows);
}

MahonianTable MahonianTable::load(const std::filesystem::path& path) {
  RawTables t = read_tables(path);
  if (t.kind != kKindMahonian) throw CacheError("table cache: not a Mahonian table");
  if (t.m < 1 || t.rows.size() != t.m + 1) throw CacheError("table cache: row count mismatch");
  for (std::size_t m = 0; m < t.rows.size(); ++m) {
    verify_row(t, m, max_swaps(static_cast<int>(m)) + 1, factorial(static_cast<int>(m)));
  }
  return MahonianTable(std::move(t.rows));
}

void ElectionCountTable::save(const std::filesystem::path& path) const {
  std::vector<std::span<const BigCount>> rows(rows_.begin(), rows_.end());
  write_tables(path, kKindElections, static_cast<std::uint32_t>(m_), static_cast<std::uint32_t>(max_n()), rows);
}

ElectionCountTable ElectionCountTable::load(const std::filesystem::path& path) {
  RawTables t = read_tables(path);
  if (t.kind != kKindElections) throw CacheError("table cache: not an election-count table");
  if (t.m < 1 || t.max_n < 1 || t.rows.size() != t.max_n + 1) throw CacheError("table cache: row count mismatch");
  const BigCount votes = factorial(static_cast<int>(t.m));
  const std::int64_t u = max_swaps(static_cast<int>(t.m));
  for (std::size_t n = 0; n < t.rows.size(); ++n) {
    verify_row(t, n, u * static_cast<std::int64_t>(n) + 1, power(votes, n));
  }
  return ElectionCountTable(static_cast<int>(t.m), std::move(t.rows));
}

}  // namespace swapcount
