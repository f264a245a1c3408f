#pragma once

// Encryption-quality metrics over byte streams and 8-bit images.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

#include "cryptochaos/bytes.hpp"
#include "cryptochaos/image.hpp"

namespace cryptochaos::metrics {

class ByteHistogram {
 public:
  ByteHistogram() = default;
  explicit ByteHistogram(ByteView data) { add(data); }
  explicit ByteHistogram(const std::array<std::uint64_t, 256>& counts) : counts_(counts) {
    for (auto c : counts_) total_ += c;
  }

  void add(ByteView data) noexcept {
    for (auto b : data) ++counts_[b];
    total_ += data.size();
  }

  std::uint64_t count(std::uint8_t b) const noexcept { return counts_[b]; }
  std::uint64_t total() const noexcept { return total_; }
  const std::array<std::uint64_t, 256>& counts() const noexcept { return counts_; }

 private:
  std::array<std::uint64_t, 256> counts_{};
  std::uint64_t total_ = 0;
};

/// Shannon entropy in bits per byte.
inline double shannon_entropy(const ByteHistogram& h) {
  require(h.total() >= 1, "entropy of an empty histogram is undefined");
  const double total = static_cast<double>(h.total());
  double e = 0.0;
  for (auto c : h.counts()) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / total;
    e -= p * std::log2(p);
  }
  return std::clamp(e, 0.0, 8.0);
}

inline double shannon_entropy(ByteView data) { return shannon_entropy(ByteHistogram(data)); }

/// Pearson correlation of consecutive byte pairs (data[i], data[i+1]).
inline double adjacent_correlation(ByteView data) {
  require(data.size() >= 3, "adjacent correlation needs at least 3 bytes");
  const std::size_t n = data.size() - 1;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += data[i];
    my += data[i + 1];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = data[i] - mx;
    double dy = data[i + 1] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) fail(Errc::invalid_input, "adjacent correlation undefined: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// 1 - total-variation distance from the uniform byte distribution, scaled so a
/// single occupied bin scores 0.
inline double histogram_uniformity(const ByteHistogram& h) {
  require(h.total() >= 1, "uniformity of an empty histogram is undefined");
  const double total = static_cast<double>(h.total());
  const double expected = total / 256.0;
  double deviation = 0.0;
  for (auto c : h.counts()) deviation += std::abs(static_cast<double>(c) - expected);
  double u = 1.0 - deviation / (2.0 * total * (1.0 - 1.0 / 256.0));
  return std::clamp(u, 0.0, 1.0);
}

namespace detail {
inline void require_same_shape(const ImageBuffer& a, const ImageBuffer& b) {
  if (!a.same_shape(b))
    fail(Errc::invalid_input, "image dimensions differ: " + std::to_string(a.width()) + "x" + std::to_string(a.height()) + " vs " +
                                  std::to_string(b.width()) + "x" + std::to_string(b.height()));
}
}  // namespace detail

/// Number of pixels change rate, percent.
inline double npcr(const ImageBuffer& c1, const ImageBuffer& c2) {
  detail::require_same_shape(c1, c2);
  auto a = c1.pixels();
  auto b = c2.pixels();
  std::size_t changed = 0;
  for (std::size_t i = 0; i < a.size(); ++i) changed += a[i] != b[i];
  return 100.0 * static_cast<double>(changed) / static_cast<double>(a.size());
}

/// Unified average changing intensity, percent.
inline double uaci(const ImageBuffer& c1, const ImageBuffer& c2) {
  detail::require_same_shape(c1, c2);
  auto a = c1.pixels();
  auto b = c2.pixels();
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += static_cast<std::uint64_t>(std::abs(int(a[i]) - int(b[i])));
  return 100.0 * static_cast<double>(sum) / (255.0 * static_cast<double>(a.size()));
}

struct Distortion {
  double mse = 0.0;
  double psnr_db = 0.0;  // +inf when mse == 0
};

inline Distortion mse_psnr(const ImageBuffer& p, const ImageBuffer& c) {
  detail::require_same_shape(p, c);
  auto a = p.pixels();
  auto b = c.pixels();
  std::uint64_t sq = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t d = int(a[i]) - int(b[i]);
    sq += static_cast<std::uint64_t>(d * d);
  }
  Distortion d;
  d.mse = static_cast<double>(sq) / static_cast<double>(a.size());
  d.psnr_db = d.mse == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(255.0 * 255.0 / d.mse);
  return d;
}

}  // namespace cryptochaos::metrics
