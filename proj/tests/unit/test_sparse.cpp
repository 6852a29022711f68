#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "helpers.hpp"
#include "qmc/level_set.hpp"
#include "qmc/oracle.hpp"
#include "qmc/random.hpp"
#include "qmc/sparse.hpp"

using namespace qmc;
using sparse::LevelSet;

namespace {

PackedImplicant p(const char* s) { return pack(TernaryString::parse(s)); }

LevelSet level(std::initializer_list<const char*> items) {
  LevelSet set;
  for (const char* s : items) set.insert(p(s));
  return set;
}

std::set<std::string> as_strings(const std::vector<PackedImplicant>& v, int n) {
  std::set<std::string> out;
  for (auto x : v) out.insert(unpack(x, n).to_string());
  return out;
}

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

TEST_CASE("level set membership and deletion marks") {
  LevelSet set;
  CHECK(set.insert(p("10")));
  CHECK_FALSE(set.insert(p("10")));
  CHECK(set.contains(p("10")));
  CHECK_FALSE(set.contains(p("11")));
  CHECK(set.insert(p("00")));
  CHECK(set.contains(p("00")));

  CHECK(set.mark_deleted(p("10")));
  CHECK_FALSE(set.contains(p("10")));
  CHECK(set.contains_entry(p("10")));
  CHECK_FALSE(set.mark_deleted(p("10")));
  CHECK_FALSE(set.mark_deleted(p("11")));
  CHECK(set.live_count() == 1);
  CHECK(set.deleted_count() == 1);
  CHECK(as_strings(set.live_items(), 2) == std::set<std::string>{"00"});
  CHECK_FALSE(set.insert(p("10")));

  CHECK_THROWS_AS(set.insert(PackedImplicant{LevelSet::kOccupied}), std::invalid_argument);
  set.clear();
  CHECK(set.size() == 0);
  CHECK_FALSE(set.contains(p("00")));
}

TEST_CASE("level set against a sorted reference") {
  std::mt19937_64 gen(101);
  LevelSet set;
  std::vector<std::uint64_t> reference;
  for (int i = 0; i < 100000; ++i) {
    // small key range forces repeats
    const std::uint64_t key = gen() % 150000 & ~PackedImplicant::kFlagMask;
    if (set.insert(PackedImplicant{key})) reference.push_back(key);
    CHECK(set.size() * 2 <= set.capacity());
  }
  std::sort(reference.begin(), reference.end());
  CHECK(std::adjacent_find(reference.begin(), reference.end()) == reference.end());
  CHECK(set.size() == reference.size());
  CHECK((set.capacity() & (set.capacity() - 1)) == 0);
  for (std::uint64_t key = 0; key < 150000; ++key) {
    CHECK(set.contains(PackedImplicant{key}) == std::binary_search(reference.begin(), reference.end(), key));
  }
  // delete every third reference entry
  for (std::size_t i = 0; i < reference.size(); i += 3) CHECK(set.mark_deleted(PackedImplicant{reference[i]}));
  std::vector<std::uint64_t> live;
  for (auto x : set.live_items()) live.push_back(x.bits);
  std::sort(live.begin(), live.end());
  std::vector<std::uint64_t> expected;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (i % 3 != 0) expected.push_back(reference[i]);
  }
  CHECK(live == expected);
  std::size_t entries = 0;
  set.for_each_entry([&](PackedImplicant) { ++entries; });
  CHECK(entries == reference.size());
}

TEST_CASE("generate_level examples") {
  CHECK(as_strings(sparse::generate_level(level({"10", "11"}), 2), 2) == std::set<std::string>{"1*"});
  CHECK(as_strings(sparse::generate_level(level({"0011*", "0111*"}), 5), 5) == std::set<std::string>{"0*11*"});
  // "1*0" may not merge at position 3: the wildcard at position 2 precedes it
  CHECK(sparse::generate_level(level({"1*0", "1*1"}), 3).empty());
  CHECK(as_strings(sparse::generate_level(level({"10*", "11*", "1*0", "1*1"}), 3), 3) ==
        std::set<std::string>{"1**"});
}

TEST_CASE("generate_level on constant one") {
  LevelSet l0;
  for (Point x = 0; x < 8; ++x) l0.insert(pack(TernaryString::from_point(3, x)));
  const auto l1 = sparse::generate_level(l0, 3);
  CHECK(l1.size() == 12);
  std::set<std::string> distinct;
  for (auto x : l1) {
    const auto s = unpack(x, 3);
    CHECK(s.weight() == 1);
    distinct.insert(s.to_string());
  }
  CHECK(distinct.size() == 12);
}

TEST_CASE("generate_level uses deleted entries") {
  auto prev = level({"00", "01", "10", "11"});
  prev.mark_deleted(p("00"));
  prev.mark_deleted(p("10"));
  CHECK(sparse::generate_level(prev, 2).size() == 4);
}

TEST_CASE("mark_parents_redundant") {
  auto prev = level({"10", "11", "00"});
  sparse::mark_parents_redundant(prev, {p("1*")});
  CHECK(as_strings(prev.live_items(), 2) == std::set<std::string>{"00"});

  auto prev2 = level({"10*", "11*", "1*0", "1*1", "0*1"});
  sparse::mark_parents_redundant(prev2, {p("1**")});
  CHECK(as_strings(prev2.live_items(), 3) == std::set<std::string>{"0*1"});
  CHECK(prev2.deleted_count() == 4);
  sparse::mark_parents_redundant(prev2, {p("1**")});
  CHECK(prev2.deleted_count() == 4);
}

TEST_CASE("golden cases") {
  CHECK(test::strings(sparse::find_primes(test::maj3())) == std::vector<std::string>{"*11", "1*1", "11*"});
  for (int n = 1; n <= 12; ++n) {
    CHECK(test::strings(sparse::find_primes(TruthTable::constant_one(n))) ==
          std::vector<std::string>{std::string(static_cast<std::size_t>(n), '*')});
  }
  CHECK(test::strings(sparse::find_primes(test::table(4, {"0110"}))) == std::vector<std::string>{"0110"});
  CHECK(sparse::find_primes(TruthTable(5)).empty());
}

TEST_CASE("single point stops after the first level") {
  sparse::SparseStats stats;
  sparse::find_primes(test::table(6, {"101100"}), &stats);
  CHECK(stats.level_sizes == std::vector<std::size_t>{1, 0});
}

TEST_CASE("generated levels are duplicate free and bounded") {
  std::mt19937_64 gen(103);
  for (int n = 1; n <= 8; ++n) {
    for (double d : {0.3, 0.7, 1.0}) {
      const auto tt = random_function(n, d, gen());
      LevelSet prev;
      for (Point x : tt.support()) prev.insert(pack(TernaryString::from_point(n, x)));
      for (int w = 1; w <= n && prev.size() > 0; ++w) {
        auto items = sparse::generate_level(prev, n);
        std::vector<std::uint64_t> bits;
        for (auto x : items) bits.push_back(x.bits);
        std::sort(bits.begin(), bits.end());
        CHECK(std::adjacent_find(bits.begin(), bits.end()) == bits.end());
        CHECK(items.size() <= binomial(n, w) << (n - w));
        // exactly the implicants with w wildcards
        std::size_t expected = 0;
        for (Rank r = 0; r < pow3(n); ++r) {
          const auto s = unrank(r, n);
          if (s.weight() == w && test::implicant(s, tt)) ++expected;
        }
        CHECK(items.size() == expected);
        LevelSet next(items.size());
        for (auto x : items) next.insert(x);
        prev = std::move(next);
      }
    }
  }
}

TEST_CASE("level sizes match the implicant counts") {
  const auto tt = TruthTable::constant_one(6);
  sparse::SparseStats stats;
  sparse::find_primes(tt, &stats);
  REQUIRE(stats.level_sizes.size() == 7);
  for (int w = 0; w <= 6; ++w) CHECK(stats.level_sizes[static_cast<std::size_t>(w)] == binomial(6, w) << (6 - w));
}

TEST_CASE("equals the oracle for n <= 10") {
  std::mt19937_64 gen(107);
  for (int n = 1; n <= 10; ++n) {
    for (double d : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
      const auto tt = random_function(n, d, gen());
      CHECK(sparse::find_primes(tt) == oracle::primes(tt));
    }
  }
}
