#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>

#include "cryptochaos/bytes.hpp"

namespace cryptochaos {

/// 8-bit grayscale image, row-major.
class ImageBuffer {
 public:
  ImageBuffer(std::size_t width, std::size_t height, Bytes pixels) : width_(width), height_(height), pixels_(std::move(pixels)) {
    require(width >= 1 && height >= 1, "image dimensions must be positive");
    require(pixels_.size() == width * height, "pixel count does not match width*height");
  }

  ImageBuffer(std::size_t width, std::size_t height, std::uint8_t fill = 0) : ImageBuffer(width, height, Bytes(width * height, fill)) {}

  /// Views a byte string as a single-row image.
  static ImageBuffer from_bytes(ByteView data) { return ImageBuffer(data.size(), 1, Bytes(data.begin(), data.end())); }

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  ByteView pixels() const noexcept { return pixels_; }
  std::uint8_t& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }
  std::uint8_t at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  bool same_shape(const ImageBuffer& o) const noexcept { return width_ == o.width_ && height_ == o.height_; }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  Bytes pixels_;
};

// --- PGM (P5, maxval 255) ------------------------------------------------------

inline Bytes write_pgm(const ImageBuffer& img) {
  std::string header = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  Bytes out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

inline bool looks_like_pgm(ByteView data) {
  return data.size() >= 3 && data[0] == 'P' && data[1] == '5' && std::isspace(data[2]);
}

inline ImageBuffer read_pgm(ByteView data) {
  std::size_t pos = 0;
  auto skip_space_and_comments = [&] {
    while (pos < data.size()) {
      if (std::isspace(data[pos])) {
        ++pos;
      } else if (data[pos] == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  };
  auto read_uint = [&](const char* what) -> std::size_t {
    skip_space_and_comments();
    std::size_t v = 0;
    std::size_t digits = 0;
    while (pos < data.size() && std::isdigit(data[pos])) {
      v = v * 10 + (data[pos++] - '0');
      if (++digits > 9) fail(Errc::invalid_input, std::string("PGM ") + what + " too large");
    }
    if (digits == 0) fail(Errc::invalid_input, std::string("PGM header: missing ") + what);
    return v;
  };

  if (!looks_like_pgm(data)) fail(Errc::invalid_input, "not a binary PGM (P5) file");
  pos = 2;
  std::size_t w = read_uint("width");
  std::size_t h = read_uint("height");
  std::size_t maxval = read_uint("maxval");
  if (maxval != 255) fail(Errc::invalid_input, "only 8-bit PGM (maxval 255) is supported");
  if (pos >= data.size() || !std::isspace(data[pos])) fail(Errc::invalid_input, "PGM header not terminated");
  ++pos;
  if (w == 0 || h == 0) fail(Errc::invalid_input, "PGM dimensions must be positive");
  if (data.size() - pos < w * h) fail(Errc::invalid_input, "PGM pixel data truncated");
  return ImageBuffer(w, h, Bytes(data.begin() + pos, data.begin() + pos + w * h));
}

// --- Synthetic workload ----------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Deterministic test image: diagonal gradient (x + y) mod 256, XOR the low
/// nibble of a seed-keyed hash of the pixel index.
inline ImageBuffer synthetic_image(std::uint64_t seed, std::size_t width = 512, std::size_t height = 512) {
  ImageBuffer img(width, height);
  const std::uint64_t key = splitmix64(seed);
  for (std::size_t y = 0; y < height; ++y)
    for (std::size_t x = 0; x < width; ++x) {
      auto gradient = static_cast<std::uint8_t>((x + y) & 0xFF);
      auto noise = static_cast<std::uint8_t>(splitmix64(key ^ (y * width + x)) & 0x0F);
      img.at(x, y) = gradient ^ noise;
    }
  return img;
}

}  // namespace cryptochaos
