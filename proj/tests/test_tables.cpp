#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "swapcount/tables.hpp"

using namespace swapcount;

TEST_CASE("Mahonian numbers") {
  const MahonianTable t(7);
  for (int m = 1; m <= 7; ++m) CHECK(t.at(m, 0) == 1);
  CHECK(t.at(3, 1) == 2);
  CHECK(t.at(4, 3) == 6);
  CHECK(t.value(3, 4) == 0);
  CHECK(t.value(3, -1) == 0);
  for (int m = 1; m <= 7; ++m) {
    const auto census = oracle::inversion_census(m);
    for (std::int64_t r = 0; r <= max_swaps(m); ++r) CHECK(t.at(m, r) == census.at(r));
  }
}

TEST_CASE("Mahonian rows sum to m! and are symmetric at large m") {
  const MahonianTable t(20);
  for (int m = 1; m <= 20; ++m) {
    BigCount sum = 0;
    for (const auto& x : t.row(m)) sum += x;
    CHECK(sum == factorial(m));
    const auto u = max_swaps(m);
    for (std::int64_t r = 0; r <= u; ++r) CHECK(t.at(m, r) == t.at(m, u - r));
  }
}

TEST_CASE("election counts") {
  const MahonianTable mahonian(3);
  const ElectionCountTable two(MahonianTable(2), 2, 3);
  CHECK(two.at(2, 1) == 2);
  const ElectionCountTable t(mahonian, 3, 3);
  for (int n = 0; n <= 3; ++n) CHECK(t.at(n, 0) == 1);
  for (int n = 1; n <= 3; ++n) {
    std::map<std::int64_t, std::int64_t> census;
    const Election base(3, std::vector<Vote>(n, Vote::identity(3)));
    oracle::for_each_election(3, n, [&](const Election& x) { ++census[oracle::naive_election_distance(base, x)]; });
    for (std::int64_t r = 0; r <= 9; ++r) {
      const std::int64_t expected = census.count(r) ? census.at(r) : 0;
      CHECK(t.value(n, r) == expected);
    }
  }
}

TEST_CASE("election count rows sum to (m!)^n") {
  const MahonianTable mahonian(10);
  const ElectionCountTable t(mahonian, 10, 30);
  for (int n = 0; n <= 30; ++n) {
    BigCount sum = 0;
    for (const auto& x : t.row(n)) sum += x;
    CHECK(sum == power(factorial(10), n));
  }
}

TEST_CASE("table cache round trip and corruption") {
  const auto dir = std::filesystem::temp_directory_path() / "swapcount-test-cache";
  std::filesystem::create_directories(dir);
  const auto path = dir / "mahonian.bin";
  const MahonianTable t(9);
  t.save(path);
  const MahonianTable back = MahonianTable::load(path);
  for (int m = 0; m <= 9; ++m) CHECK(std::ranges::equal(t.row(m), back.row(m)));

  const auto epath = dir / "elections.bin";
  const ElectionCountTable e(t, 5, 6);
  e.save(epath);
  const ElectionCountTable eback = ElectionCountTable::load(epath);
  CHECK(eback.candidates() == 5);
  for (int n = 0; n <= 6; ++n) CHECK(std::ranges::equal(e.row(n), eback.row(n)));
  CHECK_THROWS_AS(MahonianTable::load(epath), CacheError);

  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(-1, std::ios::end);
    f.put('\x7f');
  }
  try {
    (void)MahonianTable::load(path);
    FAIL("corrupted cache accepted");
  } catch (const CacheError& err) {
    CHECK(std::string(err.what()).find("checksum") != std::string::npos);
  }
  std::filesystem::resize_file(epath, 40);
  CHECK_THROWS_AS(ElectionCountTable::load(epath), CacheError);
  std::filesystem::remove_all(dir);
}
