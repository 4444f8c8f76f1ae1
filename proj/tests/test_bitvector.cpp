#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "polyform/bitvector.hpp"

using polyform::bit_vector;
using mode_t_ = polyform::bit_vector::mode_t;

namespace {

// Linear-scan reference for every query the bit_vector answers.
struct scan_oracle {
  std::vector<bool> bits;

  std::uint64_t rank1(std::uint64_t i) const {
    std::uint64_t r = 0;
    for (std::uint64_t p = 0; p < i; ++p) r += bits[p] ? 1 : 0;
    return r;
  }
  std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }
  std::optional<std::uint64_t> select1(std::uint64_t j) const {
    std::uint64_t seen = 0;
    for (std::uint64_t p = 0; p < bits.size(); ++p)
      if (bits[p] && ++seen == j) return p + 1;
    return std::nullopt;
  }
  std::optional<std::uint64_t> select0(std::uint64_t j) const {
    std::uint64_t seen = 0;
    for (std::uint64_t p = 0; p < bits.size(); ++p)
      if (!bits[p] && ++seen == j) return p + 1;
    return std::nullopt;
  }
};

std::vector<bool> random_bits(std::mt19937_64& rng, std::uint64_t n, double density) {
  std::bernoulli_distribution d(density);
  std::vector<bool> out(n);
  for (auto&& b : out) b = d(rng);
  return out;
}

std::vector<bool> parse_bits(const char* s) {
  std::vector<bool> out;
  for (; *s; ++s) out.push_back(*s == '1');
  return out;
}

void check_against_oracle(const bit_vector& bv, const scan_oracle& oracle) {
  std::uint64_t n = oracle.bits.size();
  REQUIRE(bv.size() == n);
  REQUIRE(bv.ones() == oracle.rank1(n));
  for (std::uint64_t i = 0; i <= n; ++i) {
    REQUIRE(bv.rank1(i) == oracle.rank1(i));
    REQUIRE(bv.rank0(i) == oracle.rank0(i));
  }
  for (std::uint64_t j = 1; j <= bv.ones() + 2; ++j) REQUIRE(bv.select1(j) == oracle.select1(j));
  for (std::uint64_t j = 1; j <= bv.zeros() + 2; ++j) REQUIRE(bv.select0(j) == oracle.select0(j));
  for (std::uint64_t i = 1; i <= n; ++i) REQUIRE(bv.get(i) == oracle.bits[i - 1]);
}

}  // namespace

TEST_CASE("bitvector: spec examples") {
  bit_vector empty(std::vector<bool>{}, mode_t_::plain);
  CHECK(empty.size() == 0);
  CHECK(empty.ones() == 0);

  bit_vector bv(parse_bits("10110"), mode_t_::plain);
  CHECK(bv.ones() == 3);
  CHECK(bv.rank1(0) == 0);
  CHECK(bv.rank1(3) == 2);
  CHECK(bv.rank1(5) == 3);
  CHECK(bv.select1(1) == 1);
  CHECK(bv.select1(3) == 4);
  CHECK_FALSE(bv.select1(4).has_value());

  bit_vector sp(parse_bits("10110"), mode_t_::sparse);
  for (std::uint64_t i = 0; i <= 5; ++i) CHECK(sp.rank1(i) == bv.rank1(i));
  for (std::uint64_t j = 1; j <= 4; ++j) CHECK(sp.select1(j) == bv.select1(j));
}

TEST_CASE("bitvector: rank/select invariants on the built vector") {
  std::mt19937_64 rng(7);
  auto bits = random_bits(rng, 2000, 0.37);
  for (auto mode : {mode_t_::plain, mode_t_::sparse}) {
    bit_vector bv(bits, mode);
    CHECK(bv.rank1(bv.size()) == bv.ones());
    for (std::uint64_t j = 1; j <= bv.ones(); ++j) {
      auto p = bv.select1(j);
      REQUIRE(p.has_value());
      CHECK(bv.rank1(*p) == j);
      CHECK(bv.get(*p));
      CHECK(bv.rank1(*p - 1) == j - 1);  // select1(j) is the minimum index with rank1 = j
    }
  }
}

TEST_CASE("bitvector: oracle equivalence on boundary and random lengths") {
  std::mt19937_64 rng(42);
  for (std::uint64_t n : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{63}, std::uint64_t{64},
                          std::uint64_t{65}, std::uint64_t{10000}}) {
    for (double density : {0.0, 0.03, 0.5, 1.0}) {
      scan_oracle oracle{random_bits(rng, n, density)};
      check_against_oracle(bit_vector(oracle.bits, mode_t_::plain), oracle);
      check_against_oracle(bit_vector(oracle.bits, mode_t_::sparse), oracle);
    }
  }
}

TEST_CASE("bitvector: errors") {
  bit_vector bv(parse_bits("10110"), mode_t_::plain);
  CHECK_THROWS_AS(bv.rank1(6), polyform::error);
  CHECK_THROWS_AS(bv.get(0), polyform::error);
  CHECK_THROWS_AS(bv.get(6), polyform::error);
  CHECK_THROWS_AS(bv.select1(0), polyform::error);
}

TEST_CASE("bitvector: extract") {
  std::mt19937_64 rng(3);
  auto bits = random_bits(rng, 300, 0.5);
  bit_vector bv(bits, mode_t_::plain);
  for (std::uint64_t i = 1; i + 64 <= 300; i += 7) {
    for (std::uint32_t len : {1u, 5u, 31u, 64u}) {
      std::uint64_t v = bv.extract(i, len);
      for (std::uint32_t t = 0; t < len; ++t) CHECK(((v >> t) & 1) == (bits[i - 1 + t] ? 1 : 0));
    }
  }
}

TEST_CASE("bitvector: msb byte packing round-trips") {
  std::mt19937_64 rng(11);
  for (std::uint64_t n : {std::uint64_t{1}, std::uint64_t{9}, std::uint64_t{777}}) {
    auto bits = random_bits(rng, n, 0.4);
    bit_vector bv(bits, mode_t_::plain);
    auto bytes = bv.packed_msb();
    bit_vector back = bit_vector::from_packed_msb(bytes, n, mode_t_::sparse);
    REQUIRE(back.size() == n);
    for (std::uint64_t i = 1; i <= n; ++i) CHECK(back.get(i) == bits[i - 1]);
  }
}

TEST_CASE("bitvector: plain index overhead shrinks with length") {
  std::mt19937_64 rng(5);
  double prev = 1e9;
  for (std::uint64_t n : {std::uint64_t{10000}, std::uint64_t{100000}, std::uint64_t{1000000}}) {
    bit_vector bv(random_bits(rng, n, 0.5), mode_t_::plain);
    double ratio = double(bv.index_bits()) / double(bv.payload_bits());
    if (n == 1000000) CHECK(ratio <= 0.5);
    CHECK(ratio < prev);
    prev = ratio;
  }
}

TEST_CASE("bitvector: sparse size bound at n=1e6, k=n/16") {
  std::uint64_t n = 1000000, k = n / 16;
  std::vector<bool> bits(n, false);
  std::mt19937_64 rng(9);
  std::uint64_t placed = 0;
  while (placed < k) {
    std::uint64_t p = rng() % n;
    if (!bits[p]) {
      bits[p] = true;
      ++placed;
    }
  }
  bit_vector bv(bits, mode_t_::sparse);
  double bound = 2.0 * (double(k) * (2.0 + std::log2(double(n) / double(k))) + 64.0);
  CHECK(double(bv.payload_bits() + bv.index_bits()) <= bound);
}
