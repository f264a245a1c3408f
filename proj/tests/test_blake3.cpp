#include <gtest/gtest.h>

#include "cryptochaos/blake3.hpp"
#include "golden_vectors.hpp"

using namespace cryptochaos;

namespace {

Bytes pattern(std::size_t n) {
  Bytes b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>(i % 251);
  return b;
}

std::string hash_hex(ByteView data) {
  auto h = Blake3::hash(data);
  return to_hex(h);
}

}  // namespace

TEST(Blake3, EmptyAndAbc) {
  EXPECT_EQ(hash_hex({}), golden::kBlake3Empty);
  EXPECT_EQ(hash_hex(as_bytes("abc")), golden::kBlake3Abc);
}

struct PatternCase {
  std::size_t len;
  std::string_view expected;
};

class Blake3Pattern : public ::testing::TestWithParam<PatternCase> {};

TEST_P(Blake3Pattern, MatchesReference) {
  auto [len, expected] = GetParam();
  EXPECT_EQ(hash_hex(pattern(len)), expected) << "len=" << len;
}

TEST_P(Blake3Pattern, IncrementalUpdatesAgree) {
  auto [len, expected] = GetParam();
  Bytes data = pattern(len);
  for (std::size_t piece : {1u, 63u, 64u, 65u, 1000u, 1024u}) {
    Blake3 h;
    for (std::size_t off = 0; off < data.size(); off += piece)
      h.update(ByteView(data).subspan(off, std::min(piece, data.size() - off)));
    EXPECT_EQ(to_hex(h.finalize()), expected) << "len=" << len << " piece=" << piece;
  }
}

INSTANTIATE_TEST_SUITE_P(
    Lengths, Blake3Pattern,
    ::testing::Values(PatternCase{1, golden::kBlake3Pattern1}, PatternCase{1023, golden::kBlake3Pattern1023},
                      PatternCase{1024, golden::kBlake3Pattern1024}, PatternCase{1025, golden::kBlake3Pattern1025},
                      PatternCase{2048, golden::kBlake3Pattern2048}, PatternCase{2049, golden::kBlake3Pattern2049},
                      PatternCase{3072, golden::kBlake3Pattern3072}, PatternCase{3073, golden::kBlake3Pattern3073},
                      PatternCase{4096, golden::kBlake3Pattern4096}, PatternCase{4097, golden::kBlake3Pattern4097},
                      PatternCase{5120, golden::kBlake3Pattern5120}, PatternCase{5121, golden::kBlake3Pattern5121},
                      PatternCase{6144, golden::kBlake3Pattern6144}, PatternCase{6145, golden::kBlake3Pattern6145},
                      PatternCase{7168, golden::kBlake3Pattern7168}, PatternCase{7169, golden::kBlake3Pattern7169},
                      PatternCase{8192, golden::kBlake3Pattern8192}, PatternCase{8193, golden::kBlake3Pattern8193},
                      PatternCase{16384, golden::kBlake3Pattern16384}, PatternCase{31744, golden::kBlake3Pattern31744},
                      PatternCase{102400, golden::kBlake3Pattern102400}));

TEST(Blake3, ExtendedOutput) {
  Blake3 h;
  h.update(pattern(1025));
  Bytes out(131);
  h.finalize(out);
  EXPECT_EQ(to_hex(out), golden::kBlake3Pattern1025Xof131);
}

TEST(Blake3, KeyedHash) {
  constexpr std::string_view key = "whats the Elvish word for friend";
  std::array<std::uint8_t, 32> k{};
  std::copy(key.begin(), key.end(), k.begin());
  Blake3 h(k);
  h.update(pattern(1025));
  EXPECT_EQ(to_hex(h.finalize()), golden::kBlake3KeyedPattern1025);
}
