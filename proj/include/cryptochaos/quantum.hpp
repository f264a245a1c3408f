#pragma once

// Grover key-search cost model. The parametric estimate is exact integer
// arithmetic; the published per-cipher figures are kept separately as
// labelled reference data because they do not follow from the model.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "cryptochaos/error.hpp"

namespace cryptochaos::quantum {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr unsigned kMaxKeyBits = 1024;
/// Calibration knob, not a claim: T gates per oracle call defaults to the
/// published whole-circuit figure for the chaos cipher.
inline constexpr std::uint64_t kDefaultTPerOracle = 2'100'000'000;

struct ReferenceRow {
  std::string_view algorithm;
  std::string_view t_gate_count;
  std::string_view grover_speedup_estimate;
  double t_gate_value;
  double grover_speedup_value;
};

/// Published Table of quantum resource requirements, verbatim.
inline constexpr std::array<ReferenceRow, 5> kReferenceTable = {{
    {"CryptoChaos", "2.10e9", "3.09e37", 2.10e9, 3.09e37},
    {"AES-GCM", "1.78e9", "3.09e37", 1.78e9, 3.09e37},
    {"ChaCha20", "1.45e9", "3.09e37", 1.45e9, 3.09e37},
    {"Blowfish", "0.95e9", "1.68e18", 0.95e9, 1.68e18},
    {"CAST5", "0.89e9", "1.68e18", 0.89e9, 1.68e18},
}};

inline const std::array<ReferenceRow, 5>& published_reference_table() noexcept { return kReferenceTable; }

inline std::optional<ReferenceRow> reference_row(std::string_view algorithm) {
  for (const auto& row : kReferenceTable)
    if (row.algorithm == algorithm) return row;
  return std::nullopt;
}

struct GroverParams {
  unsigned key_bits = 256;
  BigInt t_per_oracle = kDefaultTPerOracle;
  Rational overhead = 1;
  std::optional<std::string> reference_algorithm{};
};

struct GroverEstimate {
  unsigned key_bits = 0;
  BigInt iterations;
  Rational effective_keyspace_bits;
  BigInt total_t_gates;
  std::optional<ReferenceRow> reference;
};

/// Parses a non-negative decimal ("1", "12.5", "3e2") into an exact rational.
inline Rational parse_decimal(std::string_view text) {
  require(!text.empty(), "empty number");
  std::string mantissa(text);
  long exponent = 0;
  if (auto e = mantissa.find_first_of("eE"); e != std::string::npos) {
    try {
      exponent = std::stol(mantissa.substr(e + 1));
    } catch (const std::exception&) {
      fail(Errc::invalid_input, "bad exponent in '" + std::string(text) + "'");
    }
    mantissa.resize(e);
  }
  BigInt digits = 0;
  long scale = 0;
  bool seen_point = false, seen_digit = false;
  for (char c : mantissa) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      seen_digit = true;
      if (seen_point) ++scale;
    } else {
      fail(Errc::invalid_input, "not a non-negative decimal: '" + std::string(text) + "'");
    }
  }
  require(seen_digit, "not a non-negative decimal: '" + std::string(text) + "'");
  exponent -= scale;
  require(exponent > -4096 && exponent < 4096, "exponent out of range");
  BigInt pow10 = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::abs(exponent)));
  return exponent >= 0 ? Rational(digits * pow10) : Rational(digits, pow10);
}

namespace detail {
// 4000 significant bits covers 2^512 with ample guard digits.
using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<4000, boost::multiprecision::digit_base_2>>;
}  // namespace detail

/// floor((pi / 4) * 2^(k/2))
inline BigInt grover_iterations(unsigned key_bits) {
  using detail::Float;
  Float scale = boost::multiprecision::ldexp(Float(1), static_cast<int>(key_bits / 2));
  if (key_bits % 2 == 1) scale *= boost::multiprecision::sqrt(Float(2));
  Float value = boost::math::constants::pi<Float>() / 4 * scale;
  return static_cast<BigInt>(boost::multiprecision::floor(value));
}

inline GroverEstimate estimate(const GroverParams& p) {
  require(p.key_bits >= 1 && p.key_bits <= kMaxKeyBits, "key_bits must lie in [1, 1024]");
  require(p.t_per_oracle >= 1, "t_per_oracle must be at least 1");
  require(p.overhead >= 1, "error-correction overhead must be at least 1");
  GroverEstimate e;
  e.key_bits = p.key_bits;
  e.iterations = grover_iterations(p.key_bits);
  e.effective_keyspace_bits = Rational(p.key_bits, 2);
  Rational total = Rational(e.iterations * p.t_per_oracle) * p.overhead;
  e.total_t_gates = boost::multiprecision::numerator(total) / boost::multiprecision::denominator(total);
  if (p.reference_algorithm) {
    e.reference = reference_row(*p.reference_algorithm);
    if (!e.reference) fail(Errc::invalid_input, "no reference row for '" + *p.reference_algorithm + "'");
  }
  return e;
}

/// Short scientific rendering of a big integer, e.g. "1.42e38".
inline std::string scientific(const BigInt& v, int digits = 3) {
  std::string s = v.str();
  if (s.size() <= static_cast<std::size_t>(digits)) return s;
  std::ostringstream os;
  os << s[0] << '.' << s.substr(1, static_cast<std::size_t>(digits - 1)) << 'e' << (s.size() - 1);
  return os.str();
}

inline std::string to_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

}  // namespace cryptochaos::quantum
