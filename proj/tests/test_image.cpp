#include <gtest/gtest.h>

#include "cryptochaos/image.hpp"
#include "cryptochaos/primitives.hpp"
#include "golden_vectors.hpp"

using namespace cryptochaos;

TEST(ImageBuffer, ValidatesShape) {
  EXPECT_THROW(ImageBuffer(0, 1), Error);
  EXPECT_THROW(ImageBuffer(2, 2, Bytes(3)), Error);
  ImageBuffer img(3, 2, 7);
  EXPECT_EQ(img.size(), 6u);
  img.at(2, 1) = 9;
  EXPECT_EQ(img.pixels()[5], 9);
}

TEST(Pgm, RoundTrip) {
  auto img = synthetic_image(5, 17, 9);
  auto file = write_pgm(img);
  EXPECT_TRUE(looks_like_pgm(file));
  EXPECT_EQ(read_pgm(file), img);
}

TEST(Pgm, AcceptsCommentsInHeader) {
  std::string text = "P5\n# made by hand\n2 1\n# depth\n255\n";
  Bytes data(text.begin(), text.end());
  data.push_back(10);
  data.push_back(20);
  auto img = read_pgm(data);
  EXPECT_EQ(img.width(), 2u);
  EXPECT_EQ(img.pixels()[1], 20);
}

TEST(Pgm, RejectsMalformed) {
  auto bytes = [](std::string s) { return Bytes(s.begin(), s.end()); };
  EXPECT_THROW(read_pgm(bytes("P2\n1 1\n255\n0")), Error);
  EXPECT_THROW(read_pgm(bytes("P5\n2 2\n255\nab")), Error);
  EXPECT_THROW(read_pgm(bytes("P5\n1 1\n65535\nab")), Error);
  EXPECT_THROW(read_pgm(bytes("P5\n0 1\n255\n")), Error);
  EXPECT_THROW(read_pgm(bytes("P5\n")), Error);
}

TEST(SyntheticImage, MatchesIndependentGenerator) {
  auto img = synthetic_image(1);
  EXPECT_EQ(img.width(), 512u);
  EXPECT_EQ(img.height(), 512u);
  EXPECT_EQ(to_hex(img.pixels().first(16)), golden::kSyntheticImageSeed1Head);
  EXPECT_EQ(to_hex(primitives::sha256(img.pixels())), golden::kSyntheticImageSeed1Sha256);
}

TEST(SyntheticImage, SeedChangesNoiseOnly) {
  auto a = synthetic_image(1, 64, 64), b = synthetic_image(2, 64, 64);
  EXPECT_NE(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.pixels()[i] & 0xF0, b.pixels()[i] & 0xF0);
}
