#include <doctest.h>

#include <random>

#include "gcsa/bitvector.hpp"
#include "gcsa/error.hpp"
#include "support/oracles.hpp"

using namespace gcsa;

namespace {

const Encoding kEncodings[] = {Encoding::plain, Encoding::gap, Encoding::run_length};

std::vector<bool> parse_bits(const std::string& s) {
  std::vector<bool> bits;
  for (char c : s) bits.push_back(c == '1');
  return bits;
}

void check_against_naive(const std::vector<bool>& bits, Encoding e, std::uint32_t block) {
  BitVector bv = BitVector::from_bits(bits, e, block);
  oracle::NaiveBits naive{bits};
  const std::uint64_t n = bits.size();
  REQUIRE(bv.size() == n);
  REQUIRE(bv.ones() == naive.rank1(n));
  for (std::uint64_t i = 0; i <= n; ++i) CHECK(bv.rank1(i) == naive.rank1(i));
  for (std::uint64_t j = 1; j <= bv.ones(); ++j) CHECK(bv.select1(j) == naive.select1(j));
  for (std::uint64_t i = 1; i <= n; ++i) {
    CHECK(bv.access(i) == bits[i - 1]);
    CHECK(bv.pred1(i) == naive.pred1(i));
    CHECK(bv.succ1(i) == naive.succ1(i));
  }
  CHECK(bv.succ1(n + 1) == n + 1);
}

}  // namespace

TEST_CASE("rank, select and access on 101001") {
  for (Encoding e : kEncodings) {
    CAPTURE(to_string(e));
    BitVector bv = BitVector::from_bits(parse_bits("101001"), e);
    CHECK(bv.rank1(6) == 3);
    CHECK(bv.rank1(0) == 0);
    CHECK(bv.select1(2) == 3);
    CHECK(bv.access(1));
    CHECK_FALSE(bv.access(2));
    CHECK(bv.pred1(5) == 3);
    CHECK(bv.succ1(4) == 6);
  }
}

TEST_CASE("all-zero and all-one vectors") {
  for (Encoding e : kEncodings) {
    CAPTURE(to_string(e));
    BitVector zeros = BitVector::from_bits(std::vector<bool>(100, false), e);
    CHECK(zeros.ones() == 0);
    CHECK(zeros.rank1(100) == 0);
    CHECK(zeros.pred1(100) == 0);
    CHECK(zeros.succ1(1) == 101);
    BitVector ones = BitVector::from_bits(std::vector<bool>(100, true), e);
    CHECK(ones.rank1(57) == 57);
    CHECK(ones.select1(100) == 100);
  }
}

TEST_CASE("out-of-range queries throw") {
  BitVector bv = BitVector::from_bits(parse_bits("0110"), Encoding::gap);
  CHECK_THROWS_AS(bv.rank1(5), InputError);
  CHECK_THROWS_AS(bv.select1(0), InputError);
  CHECK_THROWS_AS(bv.select1(3), InputError);
  CHECK_THROWS_AS(bv.access(0), InputError);
  CHECK_THROWS_AS(bv.succ1(6), InputError);
}

TEST_CASE("construction rejects bad input") {
  std::vector<std::uint64_t> unsorted{3, 2};
  CHECK_THROWS_AS(BitVector::from_ones(5, unsorted, Encoding::gap), InputError);
  std::vector<std::uint64_t> past{6};
  CHECK_THROWS_AS(BitVector::from_ones(5, past, Encoding::plain), InputError);
  std::vector<std::uint64_t> ok{1};
  CHECK_THROWS_AS(BitVector::from_ones(5, ok, Encoding::gap, 12), InputError);
}

TEST_CASE("random vectors agree with a naive bit array") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 700;
    double density = (trial % 5 == 0) ? 0.9 : (trial % 5 == 1 ? 0.01 : 0.3);
    std::vector<bool> bits(n);
    // Mix isolated bits with long runs so both coded formats see runs.
    for (std::size_t i = 0; i < n; ++i) {
      if (static_cast<double>(rng() % 1000) / 1000.0 < density) {
        std::size_t run = trial % 2 ? 1 + rng() % 40 : 1;
        for (std::size_t k = i; k < std::min(n, i + run); ++k) bits[k] = true;
        i += run;
      }
    }
    for (Encoding e : kEncodings) {
      for (std::uint32_t block : {8u, 32u, 64u}) {
        CAPTURE(trial);
        CAPTURE(to_string(e));
        CAPTURE(block);
        check_against_naive(bits, e, block);
      }
    }
  }
}

TEST_CASE("large positions need multi-byte codes") {
  std::vector<std::uint64_t> ones{1, 300, 70000, 70001, 70002, 5000000000ULL};
  for (Encoding e : kEncodings) {
    if (e == Encoding::plain) continue;
    BitVector bv = BitVector::from_ones(6000000000ULL, ones, e);
    CHECK(bv.rank1(69999) == 2);
    CHECK(bv.select1(6) == 5000000000ULL);
    CHECK(bv.pred1(4999999999ULL) == 70002);
    CHECK(bv.succ1(70003) == 5000000000ULL);
    CHECK(bv.one_positions() == ones);
  }
}

TEST_CASE("serialization round trip") {
  std::mt19937_64 rng(11);
  for (Encoding e : kEncodings) {
    std::vector<bool> bits(1000);
    for (auto&& b : bits) b = rng() % 3 == 0;
    BitVector bv = BitVector::from_bits(bits, e);
    ByteWriter w;
    bv.serialize(w);
    CHECK(w.size() == bv.serialized_size());
    ByteReader r(w.bytes());
    BitVector back = BitVector::deserialize(r);
    CHECK(r.at_end());
    CHECK(back == bv);
    CHECK(back.rank1(777) == bv.rank1(777));
  }
}

TEST_CASE("truncated or corrupted payloads are format errors") {
  std::vector<bool> bits(200);
  for (std::size_t i = 0; i < bits.size(); i += 7) bits[i] = true;
  for (Encoding e : kEncodings) {
    BitVector bv = BitVector::from_bits(bits, e);
    ByteWriter w;
    bv.serialize(w);
    std::string bytes = w.bytes();
    for (std::size_t cut : {std::size_t{0}, std::size_t{5}, bytes.size() - 1}) {
      ByteReader r(std::string_view(bytes).substr(0, cut));
      CHECK_THROWS_AS(BitVector::deserialize(r), FormatError);
    }
    std::string bad_tag = bytes;
    bad_tag[0] = 9;
    ByteReader r(bad_tag);
    CHECK_THROWS_AS(BitVector::deserialize(r), FormatError);
  }
}

TEST_CASE("operation counter counts each public query once") {
  BitVector bv = BitVector::from_bits(parse_bits("1100101"), Encoding::run_length);
  BitOpCounter::reset();
  bv.rank1(4);
  bv.select1(2);
  bv.pred1(5);
  bv.succ1(3);
  bv.access(7);
  CHECK(BitOpCounter::value() == 5);
}
