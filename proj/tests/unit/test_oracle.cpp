#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qmc/errors.hpp"
#include "qmc/oracle.hpp"
#include "qmc/random.hpp"

using namespace qmc;

TEST_CASE("is_implicant examples") {
  CHECK(oracle::is_implicant(TernaryString::parse("***"), TruthTable::constant_one(3)));
  const auto tt = test::table(2, {"10", "11"});
  CHECK(oracle::is_implicant(TernaryString::parse("1*"), tt));
  CHECK_FALSE(oracle::is_implicant(TernaryString::parse("**"), tt));
  CHECK_FALSE(oracle::is_implicant(TernaryString::parse("0*"), tt));
  CHECK_THROWS_AS(oracle::is_implicant(TernaryString::parse("1*0"), tt), std::invalid_argument);
}

TEST_CASE("is_implicant agrees with point enumeration") {
  std::mt19937_64 gen(201);
  for (int n = 1; n <= 6; ++n) {
    const auto tt = random_function(n, 0.7, gen());
    for (Rank r = 0; r < pow3(n); ++r) {
      const auto s = unrank(r, n);
      CHECK(oracle::is_implicant(s, tt) == test::implicant(s, tt));
    }
  }
}

TEST_CASE("prime examples") {
  CHECK(test::strings(oracle::primes(test::maj3())) == std::vector<std::string>{"*11", "1*1", "11*"});
  CHECK(oracle::primes(TruthTable(4)).empty());
  CHECK(test::strings(oracle::primes(TruthTable::constant_one(4))) == std::vector<std::string>{"****"});
  CHECK(test::strings(oracle::primes(test::table(5, {"00110", "01110"}))) == std::vector<std::string>{"0*110"});
}

TEST_CASE("primes cover the support and form an antichain") {
  std::mt19937_64 gen(203);
  for (int n = 1; n <= 8; ++n) {
    for (double d : {0.1, 0.5, 0.9}) {
      const auto tt = random_function(n, d, gen());
      const auto primes = oracle::primes(tt);
      CHECK(test::check_prime_set(primes, tt).empty());
      CHECK(test::antichain(primes));
      CHECK(std::is_sorted(primes.begin(), primes.end(), RankLess{}));
    }
  }
}

TEST_CASE("size guards") {
  CHECK_THROWS_AS(oracle::primes(TruthTable(13)), GuardError);
  CHECK_THROWS_AS(oracle::is_implicant(TernaryString(15), TruthTable(15)), GuardError);
  CHECK_NOTHROW(oracle::primes(TruthTable(13), 13));
}
