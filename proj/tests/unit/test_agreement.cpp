#include <doctest.h>

#include <random>

#include "qmc/dense.hpp"
#include "qmc/random.hpp"
#include "qmc/sparse.hpp"

using namespace qmc;

TEST_CASE("sparse and dense agree on random tables") {
  std::mt19937_64 gen(109);
  for (int n = 4; n <= 16; ++n) {
    for (double d : {0.1, 0.5, 0.9}) {
      for (int i = 0; i < 200; ++i) {
        const auto tt = random_function(n, d, gen());
        INFO("n=" << n << " density=" << d << " table " << i);
        REQUIRE(sparse::find_primes(tt) == dense::find_primes(tt));
      }
    }
  }
}
