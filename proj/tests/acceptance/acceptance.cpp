// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Tolerances and runtime bounds are pinned below next to each check.

#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "cryptochaos.hpp"
#include "golden_vectors.hpp"

using namespace cryptochaos;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Errc error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::internal;
}

const keyforge::Passphrase& passphrase() {
  static const keyforge::Passphrase p("correct horse battery staple");
  return p;
}

// The CryptoChaos ciphertext of the seeded benchmark image, shared by several criteria.
struct BenchmarkCiphertext {
  ImageBuffer plain = synthetic_image(1);
  bench::CryptoChaosAdapter adapter;
  Bytes sealed;
  ImageBuffer cipher_image{1, 1, Bytes(1)};

  BenchmarkCiphertext() {
    SeededRandom rng(1);
    adapter.prepare(rng);
    sealed = adapter.encrypt(plain.pixels(), rng);
    cipher_image = bench::ciphertext_image(adapter, sealed, plain);
  }
};

BenchmarkCiphertext& benchmark() {
  static BenchmarkCiphertext b;
  return b;
}

// 1. Round trips over mixed lengths, and rejection of every single-bit flip.
void roundtrip_and_tamper(Outcome& o) {
  auto t0 = Clock::now();
  SeededRandom rng(101);
  auto kp = keyforge::generate_keypair(rng);
  const std::size_t lengths[] = {0, 1, 17, 4096, std::size_t{1} << 20};
  std::size_t mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    Bytes pt = rng.draw(lengths[i % 5]);
    auto ct = envelope::encrypt_file(passphrase(), kp.public_key, pt, rng);
    if (envelope::decrypt_file(passphrase(), kp.secret, ct) != pt) ++mismatches;
  }
  o.check(mismatches == 0, std::to_string(mismatches) + " round-trip mismatches");

  Bytes pt = rng.draw(1024);
  auto ct = envelope::encrypt_file(passphrase(), kp.public_key, pt, rng);
  std::size_t accepted = 0, misclassified = 0, flips = 0;
  for (std::size_t byte = 0; byte < ct.size(); ++byte) {
    Errc expected = Errc::authentication_failure;
    if (byte < 4)
      expected = Errc::bad_magic;
    else if (byte == 4)
      expected = Errc::unsupported_version;
    else if (byte >= envelope::kHeaderBytes - 8 && byte < envelope::kHeaderBytes)
      expected = Errc::bad_length;
    for (int bit = 0; bit < 8; ++bit, ++flips) {
      ct[byte] ^= static_cast<std::uint8_t>(1 << bit);
      Errc got = error_of([&] { envelope::decrypt_file(passphrase(), kp.secret, ct); });
      if (got == Errc::internal) ++accepted;
      else if (got != expected) ++misclassified;
      ct[byte] ^= static_cast<std::uint8_t>(1 << bit);
    }
  }
  double elapsed = seconds_since(t0);
  o.check(accepted == 0, std::to_string(accepted) + " tampered envelopes accepted");
  o.check(misclassified == 0, std::to_string(misclassified) + " flips with the wrong error");
  o.check(elapsed < 60.0, "runtime < 60 s");
  o.detail << "1000 round trips, " << flips << " bit flips rejected";
}

// 2. Entropy of the benchmark ciphertext.
void entropy(Outcome& o) {
  auto t0 = Clock::now();
  double h = metrics::shannon_entropy(benchmark().cipher_image.pixels());
  double elapsed = seconds_since(t0);
  o.check(h >= 7.995, "entropy >= 7.995");
  o.check(elapsed < 5.0, "runtime < 5 s");
  o.detail << "entropy " << h << " bits/byte";
}

// 3. Adjacent correlation of the benchmark ciphertext.
void correlation(Outcome& o) {
  double r = metrics::adjacent_correlation(benchmark().cipher_image.pixels());
  o.check(std::abs(r) <= 0.01, "|r| <= 0.01");
  o.detail << "r = " << r;
}

// 4. One-pixel diffusion and plaintext/ciphertext distortion.
void diffusion(Outcome& o) {
  auto& b = benchmark();
  SeededRandom rng(4);
  auto d = bench::one_pixel_diffusion(b.adapter, b.plain, rng);
  auto dist = metrics::mse_psnr(b.plain, b.cipher_image);
  o.check(d.npcr >= 99.5 && d.npcr <= 99.7, "NPCR in [99.5, 99.7]");
  o.check(d.uaci >= 33.0 && d.uaci <= 34.5, "UACI in [33.0, 34.5]");
  o.check(dist.psnr_db < 10.0, "PSNR < 10 dB");
  o.check(dist.mse > 9000.0, "MSE > 9000");
  o.detail << "NPCR " << d.npcr << "%, UACI " << d.uaci << "%, MSE " << dist.mse << ", PSNR " << dist.psnr_db << " dB";
}

// 5. NIST calibration on seeded CSPRNG output, all-zero input and the benchmark ciphertext.
void nist_calibration(Outcome& o) {
  auto t0 = Clock::now();
  std::array<int, 7> rejections{};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SeededRandom rng(1000 + seed);
    auto report = nist::run_suite(rng.draw(125000));
    for (std::size_t t = 0; t < report.results.size(); ++t) rejections[t] += !report.results[t].passed;
  }
  int worst = *std::max_element(rejections.begin(), rejections.end());
  o.check(worst <= 4, "each test rejects <= 4 of 100");

  auto zeros = nist::run_suite(Bytes(125000, 0));
  o.check(zeros.passed_count() == 0, "all seven fail on all-zero input");

  auto cipher = nist::run_suite(benchmark().cipher_image.pixels());
  o.check(cipher.passed_count() >= 5, "ciphertext passes >= 5/7");
  double elapsed = seconds_since(t0);
  o.check(elapsed < 600.0, "runtime < 10 min");

  o.detail << "rejections per test {";
  for (std::size_t t = 0; t < rejections.size(); ++t) o.detail << (t ? "," : "") << rejections[t];
  o.detail << "}/100, zeros " << zeros.passed_count() << "/7, ciphertext " << cipher.passed_count() << "/7";
}

// 6. NIST worked values and the exact n = 128 longest-run table.
void nist_worked_values(Outcome& o) {
  using nist::BitSequence, nist::LengthPolicy;
  double p1 = nist::monobit(BitSequence::from_string("1011010101"), LengthPolicy::minimal).p_values.at(0);
  double p2 = nist::block_frequency(BitSequence::from_string("0110011010"), 3, LengthPolicy::minimal).p_values.at(0);
  double p3 = nist::runs(BitSequence::from_string("1001101011"), LengthPolicy::minimal).p_values.at(0);
  o.check(std::abs(p1 - 0.527089) <= 1e-6, "monobit p = 0.527089");
  o.check(std::abs(p2 - 0.801252) <= 1e-6, "block frequency p = 0.801252");
  o.check(std::abs(p3 - 0.147232) <= 1e-6, "runs p = 0.147232");

  std::array<int, 4> counts{};
  for (int v = 0; v < 256; ++v) {
    int run = 0, longest = 0;
    for (int b = 7; b >= 0; --b) {
      run = (v >> b & 1) ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    ++counts[std::clamp(longest, 1, 4) - 1];
  }
  const auto& small = nist::longest_run_config(128);
  bool exact = small.pi.size() == 4;
  for (std::size_t i = 0; exact && i < 4; ++i) exact = small.pi[i] == counts[i] / 256.0;
  o.check(exact, "n = 128 pi equals enumeration");
  o.detail << "p = " << p1 << ", " << p2 << ", " << p3 << "; pi = {" << counts[0] << "," << counts[1] << "," << counts[2] << ","
           << counts[3] << "}/256";
}

// 7. Chaos-core oracles.
void chaos_oracles(Outcome& o) {
  using boost::multiprecision::cpp_int;
  auto t0 = Clock::now();
  std::size_t logistic_bad = 0;
  for (unsigned r = chaos::LogisticState::kMinRFixed; r <= chaos::LogisticState::kMaxRFixed; ++r)
    for (unsigned x = 0; x < 256; ++x) {
      cpp_int v = cpp_int(r) * x * (256 - x) / 256 % 256;
      unsigned expected = v.convert_to<unsigned>();
      if (expected == x) expected = (expected + 158) % 256;
      chaos::LogisticState s(static_cast<std::uint8_t>(x), r);
      logistic_bad += chaos::step(s) != expected;
    }
  o.check(logistic_bad == 0, std::to_string(logistic_bad) + " logistic mismatches");

  std::size_t lut_bad = 0;
  for (int i = 0; i < 256; ++i) {
    double u = (2.0 * i + 1.0) / 256.0 - 1.0;
    double t5 = 16 * std::pow(u, 5) - 20 * std::pow(u, 3) + 5 * u;
    int expected = std::clamp(static_cast<int>(std::floor((t5 + 1.0) / 2.0 * 256.0)), 0, 255);
    lut_bad += chaos::chebyshev_lut()[i] != expected;
  }
  o.check(lut_bad == 0, std::to_string(lut_bad) + " Chebyshev LUT mismatches");

  SeededRandom rng(7);
  bool bounded = true;
  for (int seed = 0; seed < 100 && bounded; ++seed) {
    auto raw = rng.draw<2>();
    chaos::HenonState s{raw[0] / 255.0 * 4 - 2, raw[1] / 255.0 * 4 - 2, 0};
    for (int i = 0; i < 1'000'000; ++i) {
      chaos::step(s);
      if (!(std::abs(s.x) <= chaos::HenonState::kEscapeRadius && std::abs(s.y) <= chaos::HenonState::kEscapeRadius)) {
        bounded = false;
        break;
      }
    }
  }
  o.check(bounded, "Henon orbits bounded");
  double elapsed = seconds_since(t0);
  o.check(elapsed < 30.0, "runtime < 30 s");
  o.detail << "256x110 logistic pairs, 256 LUT entries, 100 Henon orbits of 1e6 steps";
}

// 8. Grover model and the published reference table.
quantum::GroverEstimate estimate_for(unsigned key_bits) {
  quantum::GroverParams p;
  p.key_bits = key_bits;
  return quantum::estimate(p);
}

void grover(Outcome& o) {
  auto e = estimate_for(256);
  o.check(e.effective_keyspace_bits == 128, "k = 256 gives 2^128");

  struct Row {
    const char *algorithm, *t_gates, *speedup;
  };
  const Row published[] = {{"CryptoChaos", "2.10e9", "3.09e37"},
                           {"AES-GCM", "1.78e9", "3.09e37"},
                           {"ChaCha20", "1.45e9", "3.09e37"},
                           {"Blowfish", "0.95e9", "1.68e18"},
                           {"CAST5", "0.89e9", "1.68e18"}};
  const auto& table = quantum::published_reference_table();
  bool verbatim = table.size() == std::size(published);
  for (std::size_t i = 0; verbatim && i < table.size(); ++i)
    verbatim = table[i].algorithm == published[i].algorithm && table[i].t_gate_count == published[i].t_gates &&
               table[i].grover_speedup_estimate == published[i].speedup;
  o.check(verbatim, "reference table verbatim");

  bool monotone = true;
  quantum::GroverEstimate prev;
  for (unsigned k : {64u, 128u, 192u, 256u}) {
    auto cur = estimate_for(k);
    monotone = monotone && cur.effective_keyspace_bits == quantum::Rational(k, 2);
    if (k > 64) monotone = monotone && cur.iterations > prev.iterations && cur.total_t_gates > prev.total_t_gates;
    prev = cur;
  }
  o.check(monotone, "monotone over k in {64,128,192,256}");
  o.detail << "2^" << quantum::to_string(e.effective_keyspace_bits) << ", " << quantum::scientific(e.iterations) << " iterations";
}

// 9. Latency bound and ordering.
void performance(Outcome& o) {
  bench::BenchConfig cfg;
  cfg.workload = bench::SyntheticWorkload{1};
  cfg.adapters = {"CryptoChaos", "AES-GCM"};
  auto report = bench::run_bench(cfg);
  const auto& cc = report.rows.at(0);
  const auto& aes = report.rows.at(1);
  o.check(cc.status == bench::RowStatus::ok && aes.status == bench::RowStatus::ok, "both adapters ran");
  o.check(cc.median_s <= 0.050, "CryptoChaos median <= 50 ms");
  o.check(cc.full_pipeline_median_s && aes.median_s < *cc.full_pipeline_median_s, "AES-GCM faster than CryptoChaos full pipeline");
  o.detail << "CryptoChaos " << cc.median_s * 1e3 << " ms (full pipeline " << cc.full_pipeline_median_s.value_or(0) * 1e3
           << " ms), AES-GCM " << aes.median_s * 1e3 << " ms";
}

// 10. Determinism with pinned randomness and cross-platform goldens.
void determinism(Outcome& o) {
  auto kp = keyforge::keypair_from_secret(from_hex(golden::kRecipientSecret));
  auto pinned = [] {
    envelope::MessageRandomness m;
    Bytes eph = from_hex(golden::kEnvelopeEphemeralSecret);
    m.ephemeral_secret = keyforge::SecretKey{ByteView(eph)};
    m.salt = keyforge::Salt::from_hex(golden::kEnvelopeSalt);
    m.nonce = envelope::Nonce::from_hex(golden::kEnvelopeNonce);
    return m;
  };
  Bytes pt = from_hex(golden::kEnvelopePlaintext);
  auto a = envelope::encrypt_file(passphrase(), kp.public_key, pt, pinned());
  auto b = envelope::encrypt_file(passphrase(), kp.public_key, pt, pinned());
  o.check(a == b, "identical envelopes across runs");
  o.check(to_hex(a) == golden::kEnvelope, "envelope equals independent golden");

  auto pre_key = [](std::string_view p) { return chaos::build_pre_key(keyforge::derive_seeds(keyforge::Passphrase(p))).hex(); };
  o.check(pre_key("a") == golden::kPreKeyA && pre_key("b") == golden::kPreKeyB &&
              pre_key("correct horse battery staple") == golden::kPreKeyLong,
          "PreKey goldens");
  o.check(to_hex(primitives::sha256(synthetic_image(1).pixels())) == golden::kSyntheticImageSeed1Sha256, "synthetic image golden");
  o.detail << a.size() << "-byte envelope and 3 PreKeys match goldens";
}

}  // namespace

int main() {
  const std::pair<const char*, void (*)(Outcome&)> criteria[] = {
      {"Round-trip correctness and tamper rejection", roundtrip_and_tamper},
      {"Ciphertext entropy >= 7.995 bits/byte", entropy},
      {"Adjacent correlation |r| <= 0.01", correlation},
      {"Diffusion NPCR/UACI and distortion", diffusion},
      {"NIST calibration", nist_calibration},
      {"NIST worked values", nist_worked_values},
      {"Chaos-core oracles", chaos_oracles},
      {"Grover model", grover},
      {"Performance sanity", performance},
      {"Determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    o.detail << std::setprecision(6);
    auto t0 = Clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failed += !o.pass;
    std::printf("%s  %2d. %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.str().c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
