#pragma once

// Portable BLAKE3 (hash and keyed-hash modes, extendable output).
// Follows the structure of the BLAKE3 reference implementation: 1 KiB chunks
// compressed block by block, chunk chaining values merged on a stack.

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <span>

#include "cryptochaos/bytes.hpp"

namespace cryptochaos {

class Blake3 {
 public:
  static constexpr std::size_t kOutBytes = 32;
  static constexpr std::size_t kKeyBytes = 32;

  Blake3() : key_(kIv), chunk_(kIv, 0, 0) {}

  explicit Blake3(std::span<const std::uint8_t, kKeyBytes> key) : key_(load_words(key.data())), flags_(kKeyedHash), chunk_(key_, 0, kKeyedHash) {}

  Blake3& update(ByteView input) {
    while (!input.empty()) {
      if (chunk_.len() == kChunkLen) {
        Words8 cv = chunk_.output().chaining_value();
        std::uint64_t total = chunk_.chunk_counter + 1;
        push_chunk(cv, total);
        chunk_ = ChunkState(key_, total, flags_);
      }
      std::size_t take = std::min(kChunkLen - chunk_.len(), input.size());
      chunk_.update(input.first(take));
      input = input.subspan(take);
    }
    return *this;
  }

  /// Writes any number of output bytes; the hasher state is left untouched.
  void finalize(std::span<std::uint8_t> out) const {
    Output node = chunk_.output();
    for (std::size_t i = stack_len_; i > 0; --i) node = parent_output(stack_[i - 1], node.chaining_value(), key_, flags_);
    node.root_bytes(out);
  }

  std::array<std::uint8_t, kOutBytes> finalize() const {
    std::array<std::uint8_t, kOutBytes> out{};
    finalize(out);
    return out;
  }

  static std::array<std::uint8_t, kOutBytes> hash(ByteView input) { return Blake3().update(input).finalize(); }

 private:
  using Words8 = std::array<std::uint32_t, 8>;
  using Words16 = std::array<std::uint32_t, 16>;

  static constexpr std::size_t kBlockLen = 64;
  static constexpr std::size_t kChunkLen = 1024;
  static constexpr std::uint32_t kChunkStart = 1u << 0;
  static constexpr std::uint32_t kChunkEnd = 1u << 1;
  static constexpr std::uint32_t kParent = 1u << 2;
  static constexpr std::uint32_t kRoot = 1u << 3;
  static constexpr std::uint32_t kKeyedHash = 1u << 4;

  static constexpr Words8 kIv = {0x6A09E667, 0xBB67AE85, 0x3C6EF372, 0xA54FF53A, 0x510E527F, 0x9B05688C, 0x1F83D9AB, 0x5BE0CD19};
  static constexpr std::array<std::uint8_t, 16> kPermutation = {2, 6, 3, 10, 7, 0, 4, 13, 1, 11, 12, 5, 9, 14, 15, 8};

  static void g(Words16& s, int a, int b, int c, int d, std::uint32_t mx, std::uint32_t my) {
    s[a] = s[a] + s[b] + mx;
    s[d] = std::rotr(s[d] ^ s[a], 16);
    s[c] = s[c] + s[d];
    s[b] = std::rotr(s[b] ^ s[c], 12);
    s[a] = s[a] + s[b] + my;
    s[d] = std::rotr(s[d] ^ s[a], 8);
    s[c] = s[c] + s[d];
    s[b] = std::rotr(s[b] ^ s[c], 7);
  }

  static void round(Words16& s, const Words16& m) {
    g(s, 0, 4, 8, 12, m[0], m[1]);
    g(s, 1, 5, 9, 13, m[2], m[3]);
    g(s, 2, 6, 10, 14, m[4], m[5]);
    g(s, 3, 7, 11, 15, m[6], m[7]);
    g(s, 0, 5, 10, 15, m[8], m[9]);
    g(s, 1, 6, 11, 12, m[10], m[11]);
    g(s, 2, 7, 8, 13, m[12], m[13]);
    g(s, 3, 4, 9, 14, m[14], m[15]);
  }

  static Words16 compress(const Words8& cv, const Words16& block, std::uint64_t counter, std::uint32_t block_len, std::uint32_t flags) {
    Words16 s = {cv[0], cv[1], cv[2], cv[3], cv[4], cv[5], cv[6], cv[7],
                 kIv[0], kIv[1], kIv[2], kIv[3],
                 static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32), block_len, flags};
    Words16 m = block;
    for (int r = 0; r < 7; ++r) {
      round(s, m);
      if (r == 6) break;
      Words16 permuted{};
      for (std::size_t i = 0; i < 16; ++i) permuted[i] = m[kPermutation[i]];
      m = permuted;
    }
    for (std::size_t i = 0; i < 8; ++i) {
      s[i] ^= s[i + 8];
      s[i + 8] ^= cv[i];
    }
    return s;
  }

  static std::uint32_t load32(const std::uint8_t* p) {
    return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
  }

  static Words8 load_words(const std::uint8_t* p) {
    Words8 w{};
    for (std::size_t i = 0; i < 8; ++i) w[i] = load32(p + 4 * i);
    return w;
  }

  static Words16 block_words(const std::array<std::uint8_t, kBlockLen>& b) {
    Words16 w{};
    for (std::size_t i = 0; i < 16; ++i) w[i] = load32(b.data() + 4 * i);
    return w;
  }

  struct Output {
    Words8 input_cv;
    Words16 block;
    std::uint64_t counter;
    std::uint32_t block_len;
    std::uint32_t flags;

    Words8 chaining_value() const {
      Words16 full = compress(input_cv, block, counter, block_len, flags);
      Words8 cv{};
      std::copy_n(full.begin(), 8, cv.begin());
      return cv;
    }

    void root_bytes(std::span<std::uint8_t> out) const {
      std::uint64_t block_counter = 0;
      std::size_t pos = 0;
      while (pos < out.size()) {
        Words16 words = compress(input_cv, block, block_counter++, block_len, flags | kRoot);
        for (std::size_t i = 0; i < 16 && pos < out.size(); ++i)
          for (int k = 0; k < 4 && pos < out.size(); ++k) out[pos++] = static_cast<std::uint8_t>(words[i] >> (8 * k));
      }
    }
  };

  struct ChunkState {
    Words8 cv;
    std::uint64_t chunk_counter;
    std::array<std::uint8_t, kBlockLen> buf{};
    std::size_t buf_len = 0;
    std::size_t blocks_compressed = 0;
    std::uint32_t flags;

    ChunkState(const Words8& key, std::uint64_t counter, std::uint32_t f) : cv(key), chunk_counter(counter), flags(f) {}

    std::size_t len() const { return kBlockLen * blocks_compressed + buf_len; }
    std::uint32_t start_flag() const { return blocks_compressed == 0 ? kChunkStart : 0; }

    void update(ByteView input) {
      while (!input.empty()) {
        if (buf_len == kBlockLen) {
          Words16 full = compress(cv, block_words(buf), chunk_counter, kBlockLen, flags | start_flag());
          std::copy_n(full.begin(), 8, cv.begin());
          ++blocks_compressed;
          buf.fill(0);
          buf_len = 0;
        }
        std::size_t take = std::min(kBlockLen - buf_len, input.size());
        std::memcpy(buf.data() + buf_len, input.data(), take);
        buf_len += take;
        input = input.subspan(take);
      }
    }

    Output output() const {
      return Output{cv, block_words(buf), chunk_counter, static_cast<std::uint32_t>(buf_len), flags | start_flag() | kChunkEnd};
    }
  };

  static Output parent_output(const Words8& left, const Words8& right, const Words8& key, std::uint32_t flags) {
    Words16 block{};
    std::copy(left.begin(), left.end(), block.begin());
    std::copy(right.begin(), right.end(), block.begin() + 8);
    return Output{key, block, 0, kBlockLen, flags | kParent};
  }

  void push_chunk(Words8 cv, std::uint64_t total_chunks) {
    // Merge completed subtrees: one merge per trailing zero bit of the count.
    while ((total_chunks & 1) == 0) {
      cv = parent_output(stack_[--stack_len_], cv, key_, flags_).chaining_value();
      total_chunks >>= 1;
    }
    stack_[stack_len_++] = cv;
  }

  Words8 key_;
  std::uint32_t flags_ = 0;
  ChunkState chunk_;
  std::array<Words8, 54> stack_{};
  std::size_t stack_len_ = 0;
};

}  // namespace cryptochaos
