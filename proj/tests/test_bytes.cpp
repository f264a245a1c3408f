#include <gtest/gtest.h>

#include "cryptochaos/bytes.hpp"
#include "cryptochaos/error.hpp"
#include "cryptochaos/random.hpp"

using namespace cryptochaos;

TEST(Hex, RoundTrip) {
  Bytes b = {0x00, 0x01, 0xab, 0xff};
  EXPECT_EQ(to_hex(b), "0001abff");
  EXPECT_EQ(from_hex("0001ABff"), b);
}

TEST(Hex, RejectsMalformed) {
  EXPECT_THROW(from_hex("abc"), Error);
  EXPECT_THROW(from_hex("zz"), Error);
}

TEST(FixedBytes, LengthChecked) {
  using B4 = FixedBytes<4, struct T>;
  Bytes three(3);
  EXPECT_THROW(B4{ByteView(three)}, Error);
  auto b = B4::from_hex("deadbeef");
  EXPECT_EQ(b.hex(), "deadbeef");
  EXPECT_EQ(b[0], 0xde);
}

TEST(SecretBytes, WipeZeroes) {
  using S = SecretBytes<8, struct T>;
  Bytes raw = from_hex("0102030405060708");
  S s{ByteView(raw)};
  EXPECT_FALSE(s.is_zero());
  s.wipe();
  EXPECT_TRUE(s.is_zero());
}

TEST(Concat, JoinsInOrder) {
  Bytes a = {1, 2}, b = {3};
  EXPECT_EQ(concat({a, b, a}), (Bytes{1, 2, 3, 1, 2}));
}

TEST(SeededRandom, DeterministicPerSeed) {
  SeededRandom a(7), b(7), c(8);
  auto x = a.draw(5000);
  EXPECT_EQ(x, b.draw(5000));
  EXPECT_NE(x, c.draw(5000));
}

TEST(SeededRandom, SplitDrawsMatchSingleDraw) {
  SeededRandom a(3), b(3);
  Bytes whole = a.draw(9000);
  Bytes first = b.draw(4100), second = b.draw(4900);
  first.insert(first.end(), second.begin(), second.end());
  EXPECT_EQ(whole, first);
}

TEST(SystemRandom, ProducesDistinctDraws) {
  SystemRandom rng;
  EXPECT_NE(rng.draw<32>(), rng.draw<32>());
}
