#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "qmc/dense.hpp"
#include "qmc/errors.hpp"
#include "qmc/oracle.hpp"
#include "qmc/random.hpp"

using namespace qmc;
using dense::PassOp;

namespace {

const double kDensities[] = {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};

std::vector<TernaryString> run(const TruthTable& tt, int h, bool unroll = true, bool fuse = true) {
  dense::DenseOptions o;
  o.bottom_dims = h;
  o.unroll = unroll;
  o.fuse = fuse;
  return dense::find_primes(tt, o);
}

}  // namespace

TEST_CASE("merge and reduce on single bits") {
  using T = dense::Triple<bool>;
  CHECK(dense::merge_triple(T{true, true, false}) == T{true, true, true});
  CHECK(dense::merge_triple(T{true, false, false}) == T{true, false, false});
  CHECK(dense::merge_triple(T{false, false, true}) == T{false, false, true});
  CHECK(dense::reduce_triple(T{true, true, true}) == T{false, false, true});
  CHECK(dense::reduce_triple(T{true, false, false}) == T{true, false, false});
  CHECK(dense::reduce_triple(T{false, true, true}) == T{false, false, true});
}

TEST_CASE("merge and reduce are bitwise") {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t z = gen(), o = gen(), s = gen();
    const auto m = dense::merge_triple(dense::Triple<std::uint64_t>{z, o, s});
    const auto r = dense::reduce_triple(dense::Triple<std::uint64_t>{z, o, s});
    for (int b = 0; b < 64; ++b) {
      const bool zb = (z >> b) & 1u, ob = (o >> b) & 1u, sb = (s >> b) & 1u;
      const auto mb = dense::merge_triple(dense::Triple<bool>{zb, ob, sb});
      const auto rb = dense::reduce_triple(dense::Triple<bool>{zb, ob, sb});
      CHECK(((m.star >> b) & 1u) == mb.star);
      CHECK(((r.zero >> b) & 1u) == rb.zero);
      CHECK(((r.one >> b) & 1u) == rb.one);
    }
    CHECK(m.zero == z);
    CHECK(m.one == o);
    CHECK(r.star == s);
  }
}

TEST_CASE("block widths") {
  CHECK(dense::block_bits(1) == 8);
  CHECK(dense::block_bits(2) == 16);
  CHECK(dense::block_bits(3) == 32);
  CHECK(dense::block_bits(4) == 128);
  CHECK(dense::block_bits(5) == 256);
  CHECK(dense::block_bits(6) == 1024);
  CHECK(dense::required_bytes(20, 5) == pow3(15) * 32);
  CHECK_THROWS_AS(dense::block_bits(7), std::invalid_argument);
}

TEST_CASE("masks partition each block") {
  for (int h = 1; h <= dense::kMaxBottomDims; ++h) {
    const dense::MaskTable masks(h);
    for (int i = 1; i <= h; ++i) {
      CHECK(masks.popcount(i) == pow3(h - 1));
      const std::size_t step = pow3(i - 1);
      std::vector<int> hits(dense::block_bits(h), 0);
      for (std::size_t bit = 0; bit < hits.size(); ++bit) {
        if (!masks.test(i, bit)) continue;
        // the digit of variable i is 0 at every mask position
        CHECK((bit / step) % 3 == 0);
        for (int shift = 0; shift < 3; ++shift) {
          const std::size_t target = bit + shift * step;
          REQUIRE(target < hits.size());
          ++hits[target];
        }
      }
      for (std::size_t bit = 0; bit < hits.size(); ++bit) CHECK(hits[bit] == (bit < pow3(h) ? 1 : 0));
    }
  }
}

TEST_CASE("load places points at their ranks") {
  const TruthTable empty(4);
  CHECK(dense::load(empty, 2).popcount() == 0);

  const auto tt = test::table(3, {"111"});
  const auto s3 = dense::load(tt, 3);
  CHECK(s3.popcount() == 1);
  CHECK(s3.test(13));
  CHECK(std::to_integer<int>(s3.data()[1]) == 1 << 5);

  const auto s1 = dense::load(tt, 1);
  CHECK(s1.block_count() == 9);
  CHECK(s1.block_bytes() == 1);
  CHECK(std::to_integer<int>(s1.data()[4]) == 0b10);
  CHECK(s1.test(4 * 3 + 1));
}

TEST_CASE("load then extract returns the support") {
  std::mt19937_64 gen(17);
  for (int n = 1; n <= 9; ++n) {
    const auto tt = random_function(n, 0.4, gen());
    std::vector<TernaryString> expected;
    for (Point x : tt.support()) expected.push_back(TernaryString::from_point(n, x));
    std::sort(expected.begin(), expected.end(), RankLess{});
    for (int h = 1; h <= std::min(n, 6); ++h) {
      const auto state = dense::load(tt, h);
      CHECK(state.padding_clear());
      CHECK(dense::extract(state) == expected);
    }
  }
}

TEST_CASE("golden cases") {
  CHECK(test::strings(dense::find_primes(test::maj3())) == std::vector<std::string>{"*11", "1*1", "11*"});
  CHECK(dense::find_primes(TruthTable(6)).empty());
  CHECK(test::strings(dense::find_primes(test::table(5, {"00110", "01110"}))) == std::vector<std::string>{"0*110"});
  CHECK(test::strings(dense::find_primes(test::table(4, {"1011"}))) == std::vector<std::string>{"1011"});
}

TEST_CASE("merge along one dimension") {
  dense::DenseState state(5, 2);
  state.set(rank(TernaryString::parse("0011*")));
  state.set(rank(TernaryString::parse("0111*")));
  dense::apply_dimension(state, PassOp::Merge, 1);
  CHECK(state.test(rank(TernaryString::parse("0*11*"))));
  CHECK(state.popcount() == 3);
}

TEST_CASE("constant one") {
  for (int n = 1; n <= 9; ++n) {
    const auto tt = TruthTable::constant_one(n);
    const int h = std::min(n, 5);
    auto state = dense::load(tt, h);
    dense::pass(state, PassOp::Merge);
    CHECK(state.popcount() == pow3(n));
    dense::pass(state, PassOp::Reduce);
    CHECK(state.popcount() == 1);
    CHECK(state.test(pow3(n) - 1));
    CHECK(test::strings(dense::extract(state)) == std::vector<std::string>{std::string(static_cast<std::size_t>(n), '*')});
  }
}

TEST_CASE("merged state holds exactly the implicants") {
  std::mt19937_64 gen(23);
  for (int n = 1; n <= 6; ++n) {
    for (double d : kDensities) {
      const auto tt = random_function(n, d, gen());
      auto state = dense::load(tt, std::min(n, 3));
      dense::pass(state, PassOp::Merge);
      for (Rank r = 0; r < pow3(n); ++r) CHECK(state.test(r) == test::implicant(unrank(r, n), tt));
    }
  }
}

TEST_CASE("equals the oracle for n <= 10") {
  std::mt19937_64 gen(29);
  for (int n = 1; n <= 10; ++n) {
    for (double d : kDensities) {
      const auto tt = random_function(n, d, gen());
      const auto expected = oracle::primes(tt);
      CHECK(dense::find_primes(tt) == expected);
      if (n <= 7) CHECK(test::check_prime_set(expected, tt).empty());
    }
  }
}

TEST_CASE("bottom widths and optimizations agree") {
  std::mt19937_64 gen(31);
  for (int n = 1; n <= 10; ++n) {
    for (double d : {0.25, 0.5, 0.9}) {
      const auto tt = random_function(n, d, gen());
      const auto expected = oracle::primes(tt);
      for (int h = 1; h <= std::min(n, 6); ++h) {
        for (bool unroll : {false, true}) {
          for (bool fuse : {false, true}) {
            INFO("n=" << n << " h=" << h << " unroll=" << unroll << " fuse=" << fuse);
            CHECK(run(tt, h, unroll, fuse) == expected);
          }
        }
      }
    }
  }
}

TEST_CASE("fused path with several chunks") {
  // n=16, h=1: 3^15 one-byte blocks span many 256 KiB chunks
  std::mt19937_64 gen(37);
  for (int h : {1, 2, 5}) {
    const auto tt = random_function(14, 0.6, gen());
    CHECK(run(tt, h, true, true) == run(tt, h, true, false));
  }
  const auto tt = random_function(16, 0.5, gen());
  CHECK(run(tt, 1, true, true) == run(tt, 5, false, false));
}

TEST_CASE("passes are idempotent") {
  std::mt19937_64 gen(41);
  for (int n = 2; n <= 10; ++n) {
    const auto tt = random_function(n, 0.6, gen());
    auto state = dense::load(tt, std::min(n, 5));
    dense::pass(state, PassOp::Merge);
    const auto merged = state;
    dense::pass(state, PassOp::Merge);
    CHECK(state == merged);
    dense::pass(state, PassOp::Reduce);
    const auto reduced = state;
    dense::pass(state, PassOp::Reduce);
    CHECK(state == reduced);
  }
}

TEST_CASE("dimension order does not matter") {
  std::mt19937_64 gen(43);
  for (int n = 2; n <= 10; ++n) {
    const auto tt = random_function(n, 0.55, gen());
    const auto expected = dense::find_primes(tt);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int rep = 0; rep < 10; ++rep) {
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), gen);
      auto state = dense::load(tt, std::min(n, 4));
      dense::pass_in_order(state, PassOp::Merge, order);
      std::shuffle(order.begin(), order.end(), gen);
      dense::pass_in_order(state, PassOp::Reduce, order);
      CHECK(dense::extract(state) == expected);
    }
  }
  auto state = dense::load(TruthTable(3), 2);
  const std::vector<int> bad{0, 0, 1};
  CHECK_THROWS_AS(dense::pass_in_order(state, PassOp::Merge, bad), std::invalid_argument);
}

TEST_CASE("padding stays clear after every dimension") {
  std::mt19937_64 gen(47);
  for (int h = 1; h <= dense::kMaxBottomDims; ++h) {
    const int n = h + 2;
    const auto tt = random_function(n, 0.7, gen());
    auto state = dense::load(tt, h);
    for (PassOp op : {PassOp::Merge, PassOp::Reduce}) {
      for (int var = 0; var < n; ++var) {
        dense::apply_dimension(state, op, var);
        CHECK(state.padding_clear());
      }
    }
    CHECK(dense::extract(state) == oracle::primes(tt));
  }
}

TEST_CASE("top layer triple count per dimension") {
  for (int n = 2; n <= 8; ++n) {
    for (int h = 1; h <= std::min(3, n - 1); ++h) {
      auto state = dense::load(TruthTable::constant_one(n), h);
      dense::PassStats stats;
      dense::pass(state, PassOp::Merge, {true, &stats});
      REQUIRE(stats.top_triples.size() == static_cast<std::size_t>(n - h));
      for (auto count : stats.top_triples) CHECK(count == pow3(n - h - 1));
      CHECK(stats.bottom_dim_ops == pow3(n - h) * static_cast<std::uint64_t>(h));
    }
  }
}

TEST_CASE("memory cap") {
  const std::uint64_t need = dense::required_bytes(12, 5);
  try {
    dense::DenseState state(12, 5, need - 1);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.required_bytes() == need);
    CHECK(std::string(e.what()).find(std::to_string(need)) != std::string::npos);
  }
  CHECK_NOTHROW(dense::DenseState(12, 5, need));
  dense::DenseOptions o;
  o.mem_cap = 1024;
  CHECK_THROWS_AS(dense::find_primes(TruthTable(10), o), ResourceError);
  CHECK_THROWS_AS(dense::DenseState(4, 5), std::invalid_argument);
}
