#pragma once

// Multi-cipher comparison: latency, ciphertext statistics, diffusion and the
// NIST subset over one image workload.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cryptochaos/envelope.hpp"
#include "cryptochaos/image.hpp"
#include "cryptochaos/metrics.hpp"
#include "cryptochaos/nist.hpp"
#include "cryptochaos/primitives.hpp"
#include "cryptochaos/random.hpp"

namespace cryptochaos::bench {

class CipherAdapter {
 public:
  virtual ~CipherAdapter() = default;

  virtual std::string name() const = 0;
  virtual int key_bits() const = 0;
  /// Optional adapters are skipped, not failed, when unavailable.
  virtual bool required() const { return true; }
  virtual bool available() const { return true; }

  /// Key setup; runs once, outside any timed region.
  virtual void prepare(RandomSource& rng) = 0;
  virtual Bytes encrypt(ByteView plaintext, RandomSource& rng) = 0;
  virtual Bytes decrypt(ByteView ciphertext) = 0;
  /// The bytes of `ciphertext` that encode the plaintext (no nonce, IV or tag).
  virtual ByteView body(ByteView ciphertext) const = 0;
  /// Adapters whose encrypt() reuses a derived key can also time the path that
  /// derives a fresh key per message.
  virtual bool has_key_derivation_path() const { return false; }
  virtual Bytes encrypt_with_key_derivation(ByteView, RandomSource&) { fail(Errc::internal, name() + " has no key-derivation path"); }
};

/// Full pipeline. encrypt() seals under a key derived once in prepare();
/// encrypt_with_key_derivation() runs the whole chain per message.
class CryptoChaosAdapter final : public CipherAdapter {
 public:
  explicit CryptoChaosAdapter(std::string passphrase = "cryptochaos benchmark passphrase") : passphrase_(passphrase) {}

  std::string name() const override { return "CryptoChaos"; }
  int key_bits() const override { return 256; }

  void prepare(RandomSource& rng) override {
    recipient_ = keyforge::generate_keypair(rng);
    auto m = envelope::MessageRandomness::draw(rng);
    auto ephemeral = keyforge::keypair_from_secret(m.ephemeral_secret.view());
    auto shared = keyforge::agree(ephemeral.secret, recipient_.public_key);
    key_ = keyforge::derive_final_key(shared, keyforge::chaos_key_from_passphrase(passphrase_), m.salt);
    header_ = envelope::Header{ephemeral.public_key, m.salt};
  }

  Bytes encrypt(ByteView plaintext, RandomSource& rng) override {
    return envelope::serialize(envelope::seal(key_, header_, plaintext, rng));
  }

  Bytes decrypt(ByteView ciphertext) override { return envelope::decrypt_file(passphrase_, recipient_.secret, ciphertext); }

  ByteView body(ByteView ciphertext) const override {
    require(ciphertext.size() >= envelope::kOverheadBytes, "ciphertext shorter than envelope overhead");
    return ciphertext.subspan(envelope::kHeaderBytes, ciphertext.size() - envelope::kOverheadBytes);
  }

  bool has_key_derivation_path() const override { return true; }
  Bytes encrypt_with_key_derivation(ByteView plaintext, RandomSource& rng) override {
    return envelope::encrypt_file(passphrase_, recipient_.public_key, plaintext, rng);
  }

 private:
  keyforge::Passphrase passphrase_;
  keyforge::RecipientKeypair recipient_;
  keyforge::FinalKey key_;
  envelope::Header header_;
};

/// AES-256-GCM; output nonce || ciphertext || tag.
class AesGcmAdapter final : public CipherAdapter {
 public:
  std::string name() const override { return "AES-GCM"; }
  int key_bits() const override { return 256; }
  void prepare(RandomSource& rng) override { rng.fill(key_.mutable_view()); }

  Bytes encrypt(ByteView plaintext, RandomSource& rng) override {
    auto nonce = rng.draw<primitives::kGcmNonceBytes>();
    auto sealed = primitives::aes256gcm_seal(key_.view(), nonce, {}, plaintext);
    return concat({nonce, sealed.ciphertext, sealed.tag});
  }

  Bytes decrypt(ByteView ct) override {
    require(ct.size() >= primitives::kGcmNonceBytes + primitives::kGcmTagBytes, "AES-GCM ciphertext too short");
    auto plain = primitives::aes256gcm_open(key_.view(), ct.first(primitives::kGcmNonceBytes), {}, body(ct),
                                            ct.last(primitives::kGcmTagBytes));
    if (!plain) fail(Errc::authentication_failure, "AES-GCM tag mismatch");
    return std::move(*plain);
  }

  ByteView body(ByteView ct) const override {
    require(ct.size() >= primitives::kGcmNonceBytes + primitives::kGcmTagBytes, "AES-GCM ciphertext too short");
    return ct.subspan(primitives::kGcmNonceBytes, ct.size() - primitives::kGcmNonceBytes - primitives::kGcmTagBytes);
  }

 private:
  SecretBytes<32, struct AesKeyTag> key_;
};

/// Raw ChaCha20 stream encryption, no authenticator; output nonce || ciphertext.
class ChaCha20Adapter final : public CipherAdapter {
 public:
  std::string name() const override { return "ChaCha20"; }
  int key_bits() const override { return 256; }
  void prepare(RandomSource& rng) override { rng.fill(key_.mutable_view()); }

  Bytes encrypt(ByteView plaintext, RandomSource& rng) override {
    auto nonce = rng.draw<primitives::kChaChaNonceBytes>();
    return concat({nonce, primitives::chacha20_xor(key_.view(), nonce, plaintext)});
  }

  Bytes decrypt(ByteView ct) override {
    require(ct.size() >= primitives::kChaChaNonceBytes, "ChaCha20 ciphertext too short");
    return primitives::chacha20_xor(key_.view(), ct.first(primitives::kChaChaNonceBytes), body(ct));
  }

  ByteView body(ByteView ct) const override {
    require(ct.size() >= primitives::kChaChaNonceBytes, "ChaCha20 ciphertext too short");
    return ct.subspan(primitives::kChaChaNonceBytes);
  }

 private:
  SecretBytes<32, struct ChaChaKeyTag> key_;
};

/// Blowfish or CAST5 in CBC mode with PKCS#7 padding and a 128-bit key;
/// output IV || ciphertext.
class LegacyCbcAdapter final : public CipherAdapter {
 public:
  explicit LegacyCbcAdapter(primitives::LegacyCipher cipher) : cipher_(cipher) {}

  std::string name() const override { return cipher_ == primitives::LegacyCipher::blowfish_cbc ? "Blowfish" : "CAST5"; }
  int key_bits() const override { return 128; }
  bool required() const override { return false; }
  bool available() const override { return primitives::legacy_cipher_available(cipher_); }
  void prepare(RandomSource& rng) override { rng.fill(key_.mutable_view()); }

  Bytes encrypt(ByteView plaintext, RandomSource& rng) override {
    auto iv = rng.draw<primitives::kLegacyBlockBytes>();
    return concat({iv, primitives::legacy_cbc(cipher_, true, key_.view(), iv, plaintext)});
  }

  Bytes decrypt(ByteView ct) override {
    require(ct.size() >= primitives::kLegacyBlockBytes, "CBC ciphertext too short");
    return primitives::legacy_cbc(cipher_, false, key_.view(), ct.first(primitives::kLegacyBlockBytes), body(ct));
  }

  ByteView body(ByteView ct) const override {
    require(ct.size() >= primitives::kLegacyBlockBytes, "CBC ciphertext too short");
    return ct.subspan(primitives::kLegacyBlockBytes);
  }

 private:
  primitives::LegacyCipher cipher_;
  SecretBytes<primitives::kLegacyKeyBytes, struct LegacyKeyTag> key_;
};

using AdapterList = std::vector<std::unique_ptr<CipherAdapter>>;

inline const std::vector<std::string>& adapter_names() {
  static const std::vector<std::string> names = {"CryptoChaos", "AES-GCM", "ChaCha20", "Blowfish", "CAST5"};
  return names;
}

inline std::unique_ptr<CipherAdapter> make_adapter(std::string_view name) {
  if (name == "CryptoChaos") return std::make_unique<CryptoChaosAdapter>();
  if (name == "AES-GCM") return std::make_unique<AesGcmAdapter>();
  if (name == "ChaCha20") return std::make_unique<ChaCha20Adapter>();
  if (name == "Blowfish") return std::make_unique<LegacyCbcAdapter>(primitives::LegacyCipher::blowfish_cbc);
  if (name == "CAST5") return std::make_unique<LegacyCbcAdapter>(primitives::LegacyCipher::cast5_cbc);
  fail(Errc::usage, "unknown adapter '" + std::string(name) + "'");
}

inline AdapterList default_adapters() {
  AdapterList list;
  for (const auto& n : adapter_names()) list.push_back(make_adapter(n));
  return list;
}

// --- Workload --------------------------------------------------------------------

struct SyntheticWorkload {
  std::uint64_t seed = 0;
  std::size_t width = 512;
  std::size_t height = 512;
};

using WorkloadSource = std::variant<std::filesystem::path, SyntheticWorkload>;

inline Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot read " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline ImageBuffer load_workload(const WorkloadSource& src) {
  if (const auto* synth = std::get_if<SyntheticWorkload>(&src)) return synthetic_image(synth->seed, synth->width, synth->height);
  return read_pgm(read_file(std::get<std::filesystem::path>(src)));
}

inline std::string describe(const WorkloadSource& src) {
  if (const auto* synth = std::get_if<SyntheticWorkload>(&src))
    return "synthetic " + std::to_string(synth->width) + "x" + std::to_string(synth->height) + " seed " + std::to_string(synth->seed);
  return std::get<std::filesystem::path>(src).string();
}

// --- Diffusion -------------------------------------------------------------------

struct Diffusion {
  double npcr = 0.0;
  double uaci = 0.0;
};

/// The plaintext with its center pixel incremented by one (mod 256).
inline ImageBuffer one_pixel_variant(const ImageBuffer& img) {
  ImageBuffer changed = img;
  auto& px = changed.at(img.width() / 2, img.height() / 2);
  px = static_cast<std::uint8_t>(px + 1);
  return changed;
}

/// The leading width*height body bytes of a ciphertext, viewed as an image.
inline ImageBuffer ciphertext_image(const CipherAdapter& adapter, ByteView ciphertext, const ImageBuffer& like) {
  auto body = adapter.body(ciphertext);
  require(body.size() >= like.size(), "ciphertext body shorter than the image");
  return ImageBuffer(like.width(), like.height(), Bytes(body.begin(), body.begin() + static_cast<std::ptrdiff_t>(like.size())));
}

/// One-pixel-change protocol: encrypt the image and its one-pixel variant, each
/// with fresh per-message randomness drawn from `rng`, and compare the bodies.
inline Diffusion one_pixel_diffusion(CipherAdapter& adapter, const ImageBuffer& img, RandomSource& rng) {
  auto c1 = ciphertext_image(adapter, adapter.encrypt(img.pixels(), rng), img);
  auto c2 = ciphertext_image(adapter, adapter.encrypt(one_pixel_variant(img).pixels(), rng), img);
  return {metrics::npcr(c1, c2), metrics::uaci(c1, c2)};
}

// --- Report ----------------------------------------------------------------------

enum class RowStatus { ok, failed, skipped };

inline std::string_view status_name(RowStatus s) {
  switch (s) {
    case RowStatus::ok: return "ok";
    case RowStatus::failed: return "failed";
    case RowStatus::skipped: return "skipped";
  }
  return "unknown";
}

struct BenchRow {
  std::string algorithm;
  RowStatus status = RowStatus::ok;
  std::string diagnostic;
  bool required = true;
  int key_bits = 0;
  std::size_t samples = 0;
  double median_s = 0.0;
  double iqr_s = 0.0;
  std::optional<double> full_pipeline_median_s;
  double entropy = 0.0;
  double correlation = 0.0;
  double uniformity = 0.0;
  double npcr = 0.0;
  double uaci = 0.0;
  double mse = 0.0;
  double psnr_db = 0.0;
  std::vector<bool> nist_passed;  // one flag per test, in nist::kTestNames order
  std::size_t nist_pass_count = 0;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct BenchReport {
  std::string workload;
  std::vector<std::string> assumptions;
  std::vector<BenchRow> rows;

  bool any_required_failed() const {
    return std::any_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.required && r.status == RowStatus::failed; });
  }
  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

struct BenchConfig {
  std::size_t runs = 30;
  std::size_t warmup = 5;
  WorkloadSource workload = SyntheticWorkload{};
  std::vector<std::string> adapters = adapter_names();
  /// Seeds key setup, round-trip plaintexts and the metric ciphertexts, so every
  /// column except latency is reproducible.
  std::uint64_t seed = 1;
  std::size_t roundtrip_checks = 100;
  std::size_t roundtrip_max_len = 4096;
  nist::SuiteOptions nist;
};

inline std::vector<std::string> default_assumptions() {
  return {
      "CryptoChaos: AES-256-GCM under the chaos/X25519/HKDF key; latency excludes key derivation, full-pipeline column includes it",
      "AES-GCM: AES-256-GCM, random 96-bit nonce",
      "ChaCha20: raw stream cipher, no authenticator",
      "Blowfish, CAST5: CBC mode, PKCS#7 padding, 128-bit key (optional, OpenSSL legacy provider)",
      "NPCR/UACI: center pixel +1 mod 256, both encryptions with fresh per-message randomness",
  };
}

namespace detail {

inline double percentile(std::vector<double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  std::sort(sorted.begin(), sorted.end());
  double pos = q * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(pos);
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

template <class F>
std::vector<double> time_samples(std::size_t warmup, std::size_t runs, F&& body) {
  for (std::size_t i = 0; i < warmup; ++i) body();
  std::vector<double> samples;
  samples.reserve(runs);
  for (std::size_t i = 0; i < runs; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    body();
    auto t1 = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  return samples;
}

inline void check_roundtrips(CipherAdapter& adapter, const ImageBuffer& img, std::size_t checks, std::size_t max_len,
                             RandomSource& rng) {
  auto check_one = [&](ByteView plain) {
    Bytes ct = adapter.encrypt(plain, rng);
    Bytes back = adapter.decrypt(ct);
    if (back.size() != plain.size() || !std::equal(back.begin(), back.end(), plain.begin()))
      fail(Errc::internal, "round trip mismatch for a " + std::to_string(plain.size()) + "-byte plaintext");
  };
  for (std::size_t i = 0; i < checks; ++i) {
    auto len_bytes = rng.draw<4>();
    std::size_t len = (std::size_t(len_bytes[0]) | std::size_t(len_bytes[1]) << 8 | std::size_t(len_bytes[2]) << 16) % (max_len + 1);
    check_one(rng.draw(len));
  }
  check_one(img.pixels());
}

}  // namespace detail

/// Benchmarks one adapter against the workload. Never throws for adapter
/// faults: they come back as a failed row with a diagnostic.
inline BenchRow bench_adapter(CipherAdapter& adapter, const ImageBuffer& img, const BenchConfig& cfg, std::uint64_t adapter_seed) {
  BenchRow row;
  row.algorithm = adapter.name();
  row.required = adapter.required();
  row.key_bits = adapter.key_bits();
  if (!adapter.available()) {
    row.status = RowStatus::skipped;
    row.diagnostic = "implementation not available";
    return row;
  }
  try {
    SeededRandom setup_rng(adapter_seed);
    adapter.prepare(setup_rng);
    detail::check_roundtrips(adapter, img, cfg.roundtrip_checks, cfg.roundtrip_max_len, setup_rng);
  } catch (const std::exception& e) {
    row.status = RowStatus::failed;
    row.diagnostic = std::string("round-trip check failed: ") + e.what();
    return row;
  }

  try {
    SystemRandom timing_rng;
    auto samples = detail::time_samples(cfg.warmup, cfg.runs, [&] { (void)adapter.encrypt(img.pixels(), timing_rng); });
    row.samples = samples.size();
    row.median_s = detail::percentile(samples, 0.5);
    row.iqr_s = detail::percentile(samples, 0.75) - detail::percentile(samples, 0.25);
    if (adapter.has_key_derivation_path()) {
      auto full = detail::time_samples(cfg.warmup, cfg.runs, [&] { (void)adapter.encrypt_with_key_derivation(img.pixels(), timing_rng); });
      row.full_pipeline_median_s = detail::percentile(full, 0.5);
    }

    SeededRandom metric_rng(adapter_seed ^ 0x6D657472696373ull);
    Bytes ct = adapter.encrypt(img.pixels(), metric_rng);
    auto cimg = ciphertext_image(adapter, ct, img);
    metrics::ByteHistogram hist(cimg.pixels());
    row.entropy = metrics::shannon_entropy(hist);
    row.uniformity = metrics::histogram_uniformity(hist);
    row.correlation = metrics::adjacent_correlation(cimg.pixels());
    auto distortion = metrics::mse_psnr(img, cimg);
    row.mse = distortion.mse;
    row.psnr_db = distortion.psnr_db;
    auto diffusion = one_pixel_diffusion(adapter, img, metric_rng);
    row.npcr = diffusion.npcr;
    row.uaci = diffusion.uaci;
    auto nist_report = nist::run_suite(cimg.pixels(), cfg.nist);
    for (const auto& r : nist_report.results) row.nist_passed.push_back(r.passed);
    row.nist_pass_count = nist_report.passed_count();
  } catch (const std::exception& e) {
    row.status = RowStatus::failed;
    row.diagnostic = std::string("measurement failed: ") + e.what();
  }
  return row;
}

inline BenchReport run_bench(const BenchConfig& cfg, AdapterList adapters) {
  require(cfg.runs >= 1, "runs must be at least 1");
  require(!adapters.empty(), "no adapters selected");
  ImageBuffer img = load_workload(cfg.workload);
  BenchReport report;
  report.workload = describe(cfg.workload);
  report.assumptions = default_assumptions();
  for (std::size_t i = 0; i < adapters.size(); ++i)
    report.rows.push_back(bench_adapter(*adapters[i], img, cfg, splitmix64(cfg.seed + i)));
  return report;
}

inline BenchReport run_bench(const BenchConfig& cfg) {
  AdapterList adapters;
  for (const auto& name : cfg.adapters) adapters.push_back(make_adapter(name));
  return run_bench(cfg, std::move(adapters));
}

}  // namespace cryptochaos::bench
