#pragma once

#include <openssl/rand.h>

#include <cstdint>
#include <mutex>
#include <span>

#include "cryptochaos/bytes.hpp"
#include "cryptochaos/primitives.hpp"

namespace cryptochaos {

/// Source of key, salt and nonce material. Implementations must be safe to
/// call from several threads.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  template <std::size_t N>
  std::array<std::uint8_t, N> draw() {
    std::array<std::uint8_t, N> a{};
    fill(a);
    return a;
  }
  Bytes draw(std::size_t n) {
    Bytes b(n);
    fill(b);
    return b;
  }
};

/// Operating-system CSPRNG via OpenSSL.
class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override {
    if (out.empty()) return;
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1)
      fail(Errc::entropy_unavailable, primitives::detail::openssl_error("RAND_bytes"));
  }
};

/// Deterministic ChaCha20 keystream keyed by SHA-256 of a 64-bit seed.
/// Test-mode only: makes encryption and benchmark workloads reproducible.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) {
    std::array<std::uint8_t, 24> material{'c', 'r', 'y', 'p', 't', 'o', 'c', 'h', 'a', 'o', 's', '-', 's', 'e', 'e', 'd'};
    for (int i = 0; i < 8; ++i) material[16 + i] = static_cast<std::uint8_t>(seed >> (8 * i));
    key_ = primitives::sha256(material);
  }

  void fill(std::span<std::uint8_t> out) override {
    std::lock_guard lock(mu_);
    for (auto& b : out) {
      if (pos_ == block_.size()) refill();
      b = block_[pos_++];
    }
  }

 private:
  void refill() {
    std::array<std::uint8_t, 12> nonce{};
    for (int i = 0; i < 8; ++i) nonce[i] = static_cast<std::uint8_t>(blocks_ >> (8 * i));
    ++blocks_;
    Bytes zeros(block_.size(), 0);
    auto ks = primitives::chacha20_xor(key_, nonce, zeros);
    std::copy(ks.begin(), ks.end(), block_.begin());
    pos_ = 0;
  }

  std::mutex mu_;
  primitives::Digest key_{};
  std::array<std::uint8_t, 4096> block_{};
  std::size_t pos_ = 4096;
  std::uint64_t blocks_ = 0;
};

}  // namespace cryptochaos
