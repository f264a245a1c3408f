#pragma once

// Seven tests from NIST SP 800-22 rev 1a: frequency (monobit), block
// frequency, runs, longest run of ones, spectral (DFT), non-overlapping
// template matching and serial. Parameter schedules follow the NIST document.

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "cryptochaos/bytes.hpp"
#include "cryptochaos/special_functions.hpp"

namespace cryptochaos::nist {

inline constexpr double kAlpha = 0.01;

class BitSequence {
 public:
  BitSequence() = default;
  explicit BitSequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) require(b <= 1, "bit values must be 0 or 1");
  }

  /// Most-significant bit of each byte first.
  static BitSequence from_bytes(ByteView data) {
    std::vector<std::uint8_t> bits(data.size() * 8);
    for (std::size_t i = 0; i < data.size(); ++i)
      for (int k = 0; k < 8; ++k) bits[8 * i + k] = (data[i] >> (7 - k)) & 1;
    BitSequence s;
    s.bits_ = std::move(bits);
    return s;
  }

  static BitSequence from_string(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
      if (c == '0' || c == '1')
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
      else
        require(c == ' ' || c == '_', std::string("invalid bit character '") + c + "'");
    }
    return BitSequence(std::move(bits));
  }

  std::size_t size() const noexcept { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  std::size_t count_ones() const noexcept {
    std::size_t n = 0;
    for (auto b : bits_) n += b;
    return n;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

struct NistResult {
  std::string test_name;
  std::vector<double> p_values;
  bool passed = false;
  std::map<std::string, std::string> parameters;
  std::string note;

  double min_p() const {
    double m = 1.0;
    for (double p : p_values) m = std::min(m, p);
    return p_values.empty() ? 0.0 : m;
  }
};

/// `recommended` enforces the SP 800-22 input-size guidance; `minimal` only
/// what the statistic needs to be computable (used by the document's own
/// 10-bit worked examples).
enum class LengthPolicy { recommended, minimal };

namespace detail {

inline NistResult make_result(std::string name, std::vector<double> p_values, std::map<std::string, std::string> params = {},
                              std::string note = {}) {
  NistResult r{std::move(name), std::move(p_values), false, std::move(params), std::move(note)};
  for (auto& p : r.p_values) p = std::clamp(p, 0.0, 1.0);
  r.passed = !r.p_values.empty() && r.min_p() >= kAlpha;
  return r;
}

inline void require_length(std::string_view test, std::size_t n, std::size_t minimum) {
  if (n < minimum)
    fail(Errc::invalid_input, std::string(test) + " needs at least " + std::to_string(minimum) + " bits, got " + std::to_string(n));
}

}  // namespace detail

// --- Frequency (monobit) -----------------------------------------------------------

inline NistResult monobit(const BitSequence& s, LengthPolicy policy = LengthPolicy::recommended) {
  const std::size_t n = s.size();
  detail::require_length("monobit", n, policy == LengthPolicy::recommended ? 100 : 1);
  const double sum = 2.0 * static_cast<double>(s.count_ones()) - static_cast<double>(n);
  const double s_obs = std::abs(sum) / std::sqrt(static_cast<double>(n));
  return detail::make_result("Monobit", {special::erfc(s_obs / std::numbers::sqrt2)}, {{"n", std::to_string(n)}});
}

// --- Block frequency -------------------------------------------------------------------

/// M is raised when needed so the block count stays at or below 100.
inline NistResult block_frequency(const BitSequence& s, std::size_t block_len = 128, LengthPolicy policy = LengthPolicy::recommended) {
  const std::size_t n = s.size();
  require(block_len >= 1, "block frequency needs M >= 1");
  std::size_t m = block_len;
  if (policy == LengthPolicy::recommended) {
    detail::require_length("block frequency", n, 100);
    m = std::max(m, (n + 99) / 100);
  }
  detail::require_length("block frequency", n, m);
  const std::size_t blocks = n / m;
  double chi2 = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < m; ++j) ones += s[b * m + j];
    double pi = static_cast<double>(ones) / static_cast<double>(m) - 0.5;
    chi2 += pi * pi;
  }
  chi2 *= 4.0 * static_cast<double>(m);
  return detail::make_result("BlockFrequency", {special::igamc(blocks / 2.0, chi2 / 2.0)},
                             {{"M", std::to_string(m)}, {"N", std::to_string(blocks)}});
}

// --- Runs --------------------------------------------------------------------------------

inline NistResult runs(const BitSequence& s, LengthPolicy policy = LengthPolicy::recommended) {
  const std::size_t n = s.size();
  detail::require_length("runs", n, policy == LengthPolicy::recommended ? 100 : 2);
  const double dn = static_cast<double>(n);
  const double pi = static_cast<double>(s.count_ones()) / dn;
  if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(dn))
    return detail::make_result("Runs", {0.0}, {{"n", std::to_string(n)}}, "frequency prerequisite not met");
  std::size_t v = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) v += s[k] != s[k + 1];
  const double num = std::abs(static_cast<double>(v) - 2.0 * dn * pi * (1.0 - pi));
  const double den = 2.0 * std::sqrt(2.0 * dn) * pi * (1.0 - pi);
  return detail::make_result("Runs", {special::erfc(num / den)}, {{"n", std::to_string(n)}, {"V", std::to_string(v)}});
}

// --- Longest run of ones in a block ----------------------------------------------------

struct LongestRunConfig {
  std::size_t block_len = 0;   // M
  std::size_t categories = 0;  // K; there are K + 1 classes
  std::size_t lowest = 0;      // class 0 is "longest run <= lowest", class K is ">= lowest + K"
  std::vector<double> pi;      // K + 1 class probabilities
};

/// Probability that a uniform M-bit block has no run of ones longer than k.
inline double prob_longest_run_at_most(std::size_t block_len, std::size_t k) {
  // dist[j] = probability that the current trailing run of ones has length j.
  std::vector<double> dist(k + 1, 0.0);
  dist[0] = 1.0;
  for (std::size_t step = 0; step < block_len; ++step) {
    std::vector<double> next(k + 1, 0.0);
    for (std::size_t j = 0; j <= k; ++j) {
      next[0] += 0.5 * dist[j];
      if (j + 1 <= k) next[j + 1] += 0.5 * dist[j];
    }
    dist = std::move(next);
  }
  double total = 0.0;
  for (double d : dist) total += d;
  return total;
}

inline LongestRunConfig make_longest_run_config(std::size_t block_len, std::size_t categories, std::size_t lowest) {
  LongestRunConfig c{block_len, categories, lowest, {}};
  double prev = 0.0;
  for (std::size_t i = 0; i < categories; ++i) {
    double cdf = prob_longest_run_at_most(block_len, lowest + i);
    c.pi.push_back(cdf - prev);
    prev = cdf;
  }
  c.pi.push_back(1.0 - prev);
  return c;
}

/// SP 800-22 schedule: M = 8 for n >= 128, M = 128 for n >= 6272, M = 10^4 for n >= 750000.
inline const LongestRunConfig& longest_run_config(std::size_t n) {
  require(n >= 128, "longest run needs at least 128 bits, got " + std::to_string(n));
  static const LongestRunConfig small = make_longest_run_config(8, 3, 1);
  static const LongestRunConfig medium = make_longest_run_config(128, 5, 4);
  static const LongestRunConfig large = make_longest_run_config(10000, 6, 10);
  if (n < 6272) return small;
  if (n < 750000) return medium;
  return large;
}

inline NistResult longest_run(const BitSequence& s) {
  const std::size_t n = s.size();
  detail::require_length("longest run", n, 128);
  const auto& cfg = longest_run_config(n);
  const std::size_t blocks = n / cfg.block_len;
  std::vector<double> counts(cfg.categories + 1, 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t run = 0, longest = 0;
    for (std::size_t j = 0; j < cfg.block_len; ++j) {
      run = s[b * cfg.block_len + j] ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    std::size_t cls = longest <= cfg.lowest ? 0 : std::min(longest - cfg.lowest, cfg.categories);
    counts[cls] += 1.0;
  }
  double chi2 = 0.0;
  for (std::size_t i = 0; i <= cfg.categories; ++i) {
    double expected = static_cast<double>(blocks) * cfg.pi[i];
    chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
  }
  return detail::make_result("LongestRun", {special::igamc(cfg.categories / 2.0, chi2 / 2.0)},
                             {{"M", std::to_string(cfg.block_len)}, {"K", std::to_string(cfg.categories)}, {"N", std::to_string(blocks)}});
}

// --- Spectral (DFT) --------------------------------------------------------------------

namespace detail {
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

/// |X_k| for k = 0 .. n/2 - 1 of the +-1 sequence.
inline std::vector<double> dft_magnitudes(const BitSequence& s) {
  const std::size_t n = s.size();
  const std::size_t bins = n / 2 + 1;
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(bins);
  if (in == nullptr || out == nullptr) {
    fftw_free(in);
    fftw_free(out);
    fail(Errc::internal, "FFTW allocation failed");
  }
  fftw_plan plan;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < n; ++i) in[i] = s[i] ? 1.0 : -1.0;
  fftw_execute(plan);
  std::vector<double> mags(n / 2);
  for (std::size_t k = 0; k < mags.size(); ++k) mags[k] = std::hypot(out[k][0], out[k][1]);
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return mags;
}

inline NistResult spectral_dft(const BitSequence& s, LengthPolicy policy = LengthPolicy::recommended) {
  const std::size_t n = s.size();
  detail::require_length("spectral", n, policy == LengthPolicy::recommended ? 1000 : 2);
  const double dn = static_cast<double>(n);
  const double threshold = std::sqrt(std::log(1.0 / 0.05) * dn);
  auto mags = dft_magnitudes(s);
  std::size_t below = 0;
  for (double m : mags) below += m < threshold;
  const double expected = 0.95 * dn / 2.0;
  const double d = (static_cast<double>(below) - expected) / std::sqrt(dn * 0.95 * 0.05 / 4.0);
  return detail::make_result("Spectral", {special::erfc(std::abs(d) / std::numbers::sqrt2)},
                             {{"n", std::to_string(n)}, {"N1", std::to_string(below)}});
}

// --- Non-overlapping template matching ---------------------------------------------------

inline constexpr std::string_view kDefaultTemplate = "000000001";
inline constexpr std::size_t kTemplateBlocks = 8;

struct TemplateStats {
  double mean;
  double variance;
};

inline TemplateStats template_stats(std::size_t block_len, std::size_t m) {
  const double dm = static_cast<double>(m);
  const double mean = (static_cast<double>(block_len) - dm + 1.0) / std::pow(2.0, dm);
  const double variance = static_cast<double>(block_len) * (std::pow(2.0, -dm) - (2.0 * dm - 1.0) * std::pow(2.0, -2.0 * dm));
  return {mean, variance};
}

/// Counts of non-overlapping occurrences per block; the scan skips m bits after a hit.
inline std::vector<std::size_t> template_counts(const BitSequence& s, const BitSequence& tpl, std::size_t blocks) {
  const std::size_t m = tpl.size();
  const std::size_t block_len = s.size() / blocks;
  std::vector<std::size_t> w(blocks, 0);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t base = b * block_len;
    std::size_t i = 0;
    while (i + m <= block_len) {
      bool hit = true;
      for (std::size_t k = 0; k < m && hit; ++k) hit = s[base + i + k] == tpl[k];
      if (hit) {
        ++w[b];
        i += m;
      } else {
        ++i;
      }
    }
  }
  return w;
}

inline NistResult non_overlapping_template(const BitSequence& s, std::string_view tpl_bits = kDefaultTemplate,
                                           std::size_t blocks = kTemplateBlocks) {
  const BitSequence tpl = BitSequence::from_string(tpl_bits);
  const std::size_t m = tpl.size();
  require(m >= 2 && m <= 21, "template length must be between 2 and 21 bits");
  require(blocks >= 1, "template test needs at least one block");
  detail::require_length("template", s.size(), blocks * (m + 1));
  const std::size_t block_len = s.size() / blocks;
  const auto stats = template_stats(block_len, m);
  const auto w = template_counts(s, tpl, blocks);
  double chi2 = 0.0;
  for (auto count : w) {
    double d = static_cast<double>(count) - stats.mean;
    chi2 += d * d / stats.variance;
  }
  return detail::make_result(
      "Template", {special::igamc(blocks / 2.0, chi2 / 2.0)},
      {{"template", std::string(tpl_bits)}, {"m", std::to_string(m)}, {"N", std::to_string(blocks)}, {"M", std::to_string(block_len)}});
}

// --- Serial ------------------------------------------------------------------------------

/// Overlapping counts of every m-bit pattern, wrapping around the end.
inline std::vector<std::size_t> serial_pattern_counts(const BitSequence& s, std::size_t m) {
  std::vector<std::size_t> counts(std::size_t{1} << m, 0);
  if (m == 0) {
    counts[0] = s.size();
    return counts;
  }
  const std::size_t n = s.size();
  const std::size_t mask = (std::size_t{1} << m) - 1;
  std::size_t pattern = 0;
  for (std::size_t k = 0; k + 1 < m; ++k) pattern = (pattern << 1) | s[k];
  for (std::size_t i = 0; i < n; ++i) {
    pattern = ((pattern << 1) | s[(i + m - 1) % n]) & mask;
    ++counts[pattern];
  }
  return counts;
}

inline double serial_psi2(const BitSequence& s, std::size_t m) {
  if (m == 0) return 0.0;
  const double n = static_cast<double>(s.size());
  double sum = 0.0;
  for (auto c : serial_pattern_counts(s, m)) sum += static_cast<double>(c) * static_cast<double>(c);
  return std::pow(2.0, static_cast<double>(m)) / n * sum - n;
}

inline NistResult serial(const BitSequence& s, std::size_t m = 2, LengthPolicy policy = LengthPolicy::recommended) {
  require(m >= 2 && m <= 24, "serial block length m must be between 2 and 24");
  const std::size_t n = s.size();
  // Recommended: m < floor(log2 n) - 2.
  detail::require_length("serial", n, policy == LengthPolicy::recommended ? (std::size_t{1} << (m + 3)) : (std::size_t{1} << m));
  const double psi_m = serial_psi2(s, m);
  const double psi_m1 = serial_psi2(s, m - 1);
  const double psi_m2 = serial_psi2(s, m - 2);
  const double del1 = psi_m - psi_m1;
  const double del2 = psi_m - 2.0 * psi_m1 + psi_m2;
  const double p1 = special::igamc(std::pow(2.0, static_cast<double>(m) - 2.0), std::max(del1, 0.0) / 2.0);
  const double p2 = special::igamc(std::pow(2.0, static_cast<double>(m) - 3.0), std::max(del2, 0.0) / 2.0);
  return detail::make_result("Serial", {p1, p2}, {{"m", std::to_string(m)}, {"n", std::to_string(n)}});
}

// --- Suite -------------------------------------------------------------------------------

struct SuiteOptions {
  std::string template_bits{kDefaultTemplate};
  std::size_t block_len = 128;
  std::size_t serial_m = 2;
};

struct NistReport {
  std::vector<NistResult> results;

  std::size_t passed_count() const {
    std::size_t k = 0;
    for (const auto& r : results) k += r.passed;
    return k;
  }
  std::string summary() const { return "Tests Passed " + std::to_string(passed_count()) + "/" + std::to_string(results.size()); }
};

inline constexpr std::array<std::string_view, 7> kTestNames = {"Monobit", "BlockFrequency", "Runs", "LongestRun", "Spectral", "Template", "Serial"};

/// Runs all seven tests. A test whose input is too short is reported as a
/// failure carrying the length error, so the report always has seven rows.
inline NistReport run_suite(const BitSequence& s, const SuiteOptions& opt = {}) {
  NistReport report;
  auto guarded = [&](std::string_view name, auto&& test) {
    try {
      report.results.push_back(test());
    } catch (const Error& e) {
      NistResult r;
      r.test_name = name;
      r.note = e.what();
      report.results.push_back(std::move(r));
    }
  };
  guarded(kTestNames[0], [&] { return monobit(s); });
  guarded(kTestNames[1], [&] { return block_frequency(s, opt.block_len); });
  guarded(kTestNames[2], [&] { return runs(s); });
  guarded(kTestNames[3], [&] { return longest_run(s); });
  guarded(kTestNames[4], [&] { return spectral_dft(s); });
  guarded(kTestNames[5], [&] { return non_overlapping_template(s, opt.template_bits); });
  guarded(kTestNames[6], [&] { return serial(s, opt.serial_m); });
  return report;
}

inline NistReport run_suite(ByteView data, const SuiteOptions& opt = {}) { return run_suite(BitSequence::from_bytes(data), opt); }

}  // namespace cryptochaos::nist
