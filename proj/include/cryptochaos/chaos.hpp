#pragma once

// Discrete chaotic maps quantized to 8-bit state, and the pre-key entropy pool
// built from their output streams.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>

#include "cryptochaos/bytes.hpp"

namespace cryptochaos::chaos {

/// Added (with the iteration counter) when a step maps a state onto itself.
inline constexpr std::uint8_t kDegeneracyEscape = 0x9E;

inline constexpr std::uint8_t escape_fixed_point(std::uint8_t next, std::uint8_t prev, std::uint64_t counter) noexcept {
  if (next != prev) return next;
  return static_cast<std::uint8_t>((next + kDegeneracyEscape + counter) & 0xFF);
}

// --- Logistic ----------------------------------------------------------------

class LogisticState {
 public:
  // floor(256 r) for r in (3.57, 4.0)
  static constexpr std::uint32_t kMinRFixed = 914;
  static constexpr std::uint32_t kMaxRFixed = 1023;
  static constexpr std::uint32_t kRFixedCount = kMaxRFixed - kMinRFixed + 1;

  LogisticState(std::uint8_t x, std::uint32_t r_fixed, std::uint64_t counter = 0) : x(x), counter(counter), r_fixed_(r_fixed) {
    require(r_fixed >= kMinRFixed && r_fixed <= kMaxRFixed, "logistic r_fixed must lie in [914, 1023]");
  }

  std::uint32_t r_fixed() const noexcept { return r_fixed_; }

  std::uint8_t x;
  std::uint64_t counter;

 private:
  std::uint32_t r_fixed_;
};

/// x' = floor(r_fixed * x * (256 - x) / 256) mod 256, escaped if x' == x.
inline std::uint8_t step(LogisticState& s) noexcept {
  const std::uint64_t wide = std::uint64_t{s.r_fixed()} * s.x * (256u - s.x) / 256u;
  s.x = escape_fixed_point(static_cast<std::uint8_t>(wide & 0xFF), s.x, s.counter);
  ++s.counter;
  return s.x;
}

// --- Chebyshev (degree 5) ----------------------------------------------------

using ChebyshevLut = std::array<std::uint8_t, 256>;

/// Byte i represents the midpoint (2i+1)/256 - 1 of its cell in (-1, 1).
inline double chebyshev_dequantize(std::uint8_t i) noexcept { return (2.0 * i + 1.0) / 256.0 - 1.0; }

inline std::uint8_t chebyshev_quantize(double v) noexcept {
  double q = std::floor((v + 1.0) / 2.0 * 256.0);
  return static_cast<std::uint8_t>(std::clamp(q, 0.0, 255.0));
}

inline ChebyshevLut chebyshev_build_lut() {
  ChebyshevLut lut{};
  for (int i = 0; i < 256; ++i) {
    double u = chebyshev_dequantize(static_cast<std::uint8_t>(i));
    lut[i] = chebyshev_quantize(std::cos(5.0 * std::acos(u)));
  }
  return lut;
}

inline const ChebyshevLut& chebyshev_lut() {
  static const ChebyshevLut lut = chebyshev_build_lut();
  return lut;
}

struct ChebyshevState {
  std::uint8_t x = 0;
  std::uint64_t counter = 0;
};

/// x' = lut[x] XOR (counter mod 256); the XOR keeps the 256-state orbit from
/// settling into a short cycle.
inline std::uint8_t step(ChebyshevState& s) noexcept {
  s.x = static_cast<std::uint8_t>(chebyshev_lut()[s.x] ^ (s.counter & 0xFF));
  ++s.counter;
  return s.x;
}

// --- Tent (mu = 2) -----------------------------------------------------------

struct TentState {
  static constexpr int kMu = 2;
  std::uint8_t x = 1;
  std::uint64_t counter = 0;
};

inline std::uint8_t step(TentState& s) noexcept {
  const unsigned low_bit = static_cast<unsigned>(s.counter & 1);
  const unsigned next = s.x < 128 ? TentState::kMu * s.x + low_bit : TentState::kMu * (255u - s.x) + low_bit;
  s.x = escape_fixed_point(static_cast<std::uint8_t>(next), s.x, s.counter);
  ++s.counter;
  return s.x;
}

// --- Henon -------------------------------------------------------------------

struct HenonState {
  static constexpr double a = 1.4;
  static constexpr double b = 0.3;
  static constexpr double kEscapeRadius = 10.0;
  double x = 0.0;
  double y = 0.0;
  std::uint64_t counter = 0;
};

/// Output byte for a Henon x coordinate; the attractor lies within |x| < 1.5.
inline std::uint8_t henon_quantize(double x) noexcept {
  double q = std::floor((x + 1.5) / 3.0 * 256.0);
  return static_cast<std::uint8_t>(std::clamp(q, 0.0, 255.0));
}

inline std::uint8_t step(HenonState& s) noexcept {
  double nx = s.y + 1.0 - HenonState::a * s.x * s.x;
  double ny = HenonState::b * s.x;
  if (!(std::abs(nx) <= HenonState::kEscapeRadius)) {
    nx = static_cast<double>((s.counter * 37) % 256) / 256.0 - 0.5;
    ny = 0.0;
  }
  s.x = nx;
  s.y = ny;
  ++s.counter;
  return henon_quantize(s.x);
}

// --- Streams -----------------------------------------------------------------

template <class S>
concept ChaoticMap = std::copyable<S> && requires(S& s) {
  { step(s) } -> std::same_as<std::uint8_t>;
};

/// Discards burn_in outputs, then collects n_bytes. Takes the state by value:
/// the caller's state is not advanced.
template <ChaoticMap S>
Bytes generate_stream(S state, std::size_t n_bytes, std::size_t burn_in) {
  require(n_bytes >= 1, "generate_stream needs n_bytes >= 1");
  for (std::size_t i = 0; i < burn_in; ++i) step(state);
  Bytes out(n_bytes);
  for (auto& b : out) b = step(state);
  return out;
}

// --- Pre-key -----------------------------------------------------------------

inline constexpr std::size_t kSeedBytes = 32;
inline constexpr std::size_t kSegmentBytes = 32;
inline constexpr std::size_t kBurnIn = 100;
inline constexpr std::size_t kPreKeyBytes = 4 * kSegmentBytes;

using MapSeed = SecretBytes<kSeedBytes, struct MapSeedTag>;

struct MapSeedSet {
  MapSeed logistic;
  MapSeed chebyshev;
  MapSeed tent;
  MapSeed henon;

  void wipe() noexcept {
    logistic.wipe();
    chebyshev.wipe();
    tent.wipe();
    henon.wipe();
  }
  friend bool operator==(const MapSeedSet&, const MapSeedSet&) = default;
};

/// K1 || K2 || K3 || K4: Logistic, Chebyshev, Tent, Henon segments.
using PreKey = SecretBytes<kPreKeyBytes, struct PreKeyTag>;

enum class MapId : std::uint8_t { logistic = 0x01, chebyshev = 0x02, tent = 0x03, henon = 0x04 };

inline LogisticState logistic_from_seed(const MapSeed& seed) {
  return LogisticState(seed[0] == 0 ? 1 : seed[0], LogisticState::kMinRFixed + seed[1] % LogisticState::kRFixedCount);
}

// The counter starts at seed[1] for Chebyshev and Tent; with a zero start the
// passphrase ensemble collapses onto a handful of orbits after burn-in.
inline ChebyshevState chebyshev_from_seed(const MapSeed& seed) { return {seed[0], seed[1]}; }

inline TentState tent_from_seed(const MapSeed& seed) {
  return {static_cast<std::uint8_t>(seed[0] == 0 ? 1 : seed[0]), seed[1]};
}

inline HenonState henon_from_seed(const MapSeed& seed) {
  return {seed[0] / 255.0 - 0.5, seed[1] / 255.0 * 0.5 - 0.25, 0};
}

inline PreKey build_pre_key(const MapSeedSet& seeds) {
  PreKey key;
  auto place = [&key](std::size_t segment, Bytes stream) {
    std::copy(stream.begin(), stream.end(), key.data() + segment * kSegmentBytes);
    secure_wipe(stream);
  };
  place(0, generate_stream(logistic_from_seed(seeds.logistic), kSegmentBytes, kBurnIn));
  place(1, generate_stream(chebyshev_from_seed(seeds.chebyshev), kSegmentBytes, kBurnIn));
  place(2, generate_stream(tent_from_seed(seeds.tent), kSegmentBytes, kBurnIn));
  place(3, generate_stream(henon_from_seed(seeds.henon), kSegmentBytes, kBurnIn));
  return key;
}

inline ByteView segment(const PreKey& key, MapId id) {
  return key.view().subspan((static_cast<std::size_t>(id) - 1) * kSegmentBytes, kSegmentBytes);
}

}  // namespace cryptochaos::chaos
