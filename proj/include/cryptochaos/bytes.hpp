#pragma once

#include <openssl/crypto.h>

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cryptochaos/error.hpp"

namespace cryptochaos {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline void secure_wipe(std::span<std::uint8_t> buf) noexcept {
  if (!buf.empty()) OPENSSL_cleanse(buf.data(), buf.size());
}

inline ByteView as_bytes(std::string_view s) noexcept {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline std::string to_hex(ByteView data) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0x0f]);
  }
  return out;
}

inline Bytes from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  require(hex.size() % 2 == 0, "hex string has odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = nibble(hex[2 * i]);
    int lo = nibble(hex[2 * i + 1]);
    require(hi >= 0 && lo >= 0, "invalid hex digit");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

/// Fixed-size byte string tagged with its domain role.
template <std::size_t N, class Tag>
class FixedBytes {
 public:
  static constexpr std::size_t size_bytes = N;

  FixedBytes() = default;
  explicit FixedBytes(const std::array<std::uint8_t, N>& a) : data_(a) {}
  explicit FixedBytes(ByteView v) {
    require(v.size() == N, "expected " + std::to_string(N) + " bytes, got " + std::to_string(v.size()));
    std::copy(v.begin(), v.end(), data_.begin());
  }

  static FixedBytes from_hex(std::string_view hex) { return FixedBytes(ByteView(cryptochaos::from_hex(hex))); }

  constexpr std::size_t size() const noexcept { return N; }
  std::uint8_t* data() noexcept { return data_.data(); }
  const std::uint8_t* data() const noexcept { return data_.data(); }
  std::uint8_t& operator[](std::size_t i) noexcept { return data_[i]; }
  std::uint8_t operator[](std::size_t i) const noexcept { return data_[i]; }
  ByteView view() const noexcept { return data_; }
  std::span<std::uint8_t> mutable_view() noexcept { return data_; }
  const std::array<std::uint8_t, N>& array() const noexcept { return data_; }
  std::string hex() const { return to_hex(data_); }

  friend bool operator==(const FixedBytes&, const FixedBytes&) = default;

 protected:
  std::array<std::uint8_t, N> data_{};
};

/// Fixed-size secret. Wiped on destruction and on request.
template <std::size_t N, class Tag>
class SecretBytes : public FixedBytes<N, Tag> {
 public:
  using FixedBytes<N, Tag>::FixedBytes;

  SecretBytes() = default;
  SecretBytes(const SecretBytes&) = default;
  SecretBytes& operator=(const SecretBytes&) = default;
  ~SecretBytes() { wipe(); }

  void wipe() noexcept { secure_wipe(this->data_); }
  bool is_zero() const noexcept {
    std::uint8_t acc = 0;
    for (auto b : this->data_) acc |= b;
    return acc == 0;
  }
};

/// Variable-length secret buffer, wiped on destruction.
class SecretBuffer {
 public:
  SecretBuffer() = default;
  explicit SecretBuffer(ByteView v) : data_(v.begin(), v.end()) {}
  explicit SecretBuffer(std::string_view s) : SecretBuffer(as_bytes(s)) {}
  SecretBuffer(const SecretBuffer&) = default;
  SecretBuffer(SecretBuffer&& o) noexcept : data_(std::move(o.data_)) {}
  SecretBuffer& operator=(const SecretBuffer& o) {
    if (this != &o) {
      wipe();
      data_ = o.data_;
    }
    return *this;
  }
  SecretBuffer& operator=(SecretBuffer&& o) noexcept {
    wipe();
    data_ = std::move(o.data_);
    return *this;
  }
  ~SecretBuffer() { wipe(); }

  void wipe() noexcept {
    secure_wipe(data_);
    data_.clear();
  }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  ByteView view() const noexcept { return data_; }

 private:
  Bytes data_;
};

inline Bytes concat(std::initializer_list<ByteView> parts) {
  Bytes out;
  std::size_t total = 0;
  for (auto p : parts) total += p.size();
  out.reserve(total);
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace cryptochaos
