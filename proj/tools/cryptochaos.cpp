// cryptochaos command-line tool.
//
// Exit codes: 0 success, 1 usage, 2 input/parse, 3 authentication, 4 internal.

#include <fcntl.h>
#include <sys/stat.h>
#include <termios.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "cryptochaos.hpp"

namespace fs = std::filesystem;
using namespace cryptochaos;
using nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kInput = 2, kAuth = 3, kInternal = 4 };

int exit_code(Errc c) {
  switch (c) {
    case Errc::usage:
      return kUsage;
    case Errc::invalid_input:
    case Errc::bad_magic:
    case Errc::unsupported_version:
    case Errc::bad_length:
    case Errc::io_error:
      return kInput;
    case Errc::authentication_failure:
    case Errc::contributory_behavior:
      return kAuth;
    case Errc::entropy_unavailable:
    case Errc::internal:
      return kInternal;
  }
  return kInternal;
}

// --- files -------------------------------------------------------------------

Bytes read_input(const fs::path& path) { return bench::read_file(path); }

/// Writes through a temporary file in the target directory, then renames, so a
/// failed command never leaves a partial output behind.
void write_atomic(const fs::path& path, ByteView data, mode_t mode = 0644) {
  fs::path dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
  std::string tmpl = (dir / ("." + path.filename().string() + ".XXXXXX")).string();
  int fd = ::mkstemp(tmpl.data());
  if (fd < 0) fail(Errc::io_error, "cannot create temporary file in " + dir.string());
  auto cleanup = [&] {
    ::close(fd);
    ::unlink(tmpl.c_str());
  };
  if (::fchmod(fd, mode) != 0) {
    cleanup();
    fail(Errc::io_error, "cannot set permissions on " + tmpl);
  }
  std::size_t off = 0;
  while (off < data.size()) {
    ssize_t n = ::write(fd, data.data() + off, data.size() - off);
    if (n <= 0) {
      cleanup();
      fail(Errc::io_error, "write failed: " + path.string());
    }
    off += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) {
    ::unlink(tmpl.c_str());
    fail(Errc::io_error, "cannot flush " + path.string());
  }
  if (::rename(tmpl.c_str(), path.c_str()) != 0) {
    ::unlink(tmpl.c_str());
    fail(Errc::io_error, "cannot rename into " + path.string());
  }
}

void write_atomic(const fs::path& path, std::string_view text, mode_t mode = 0644) { write_atomic(path, as_bytes(text), mode); }

keyforge::PublicKey read_public_key(const fs::path& path) {
  Bytes raw = read_input(path);
  std::string text(raw.begin(), raw.end());
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  if (text.size() != 64) fail(Errc::invalid_input, path.string() + ": expected 64 hex characters");
  return keyforge::PublicKey::from_hex(text);
}

keyforge::SecretKey read_secret_key(const fs::path& path) {
  Bytes raw = read_input(path);
  if (raw.size() != 32) {
    secure_wipe(raw);
    fail(Errc::invalid_input, path.string() + ": secret key must be 32 raw bytes");
  }
  keyforge::SecretKey key{ByteView(raw)};
  secure_wipe(raw);
  return key;
}

// --- passphrase --------------------------------------------------------------

/// From CRYPTOCHAOS_PASSPHRASE, else a no-echo prompt on the terminal, else a
/// line from standard input. Never from argv.
keyforge::Passphrase read_passphrase() {
  if (const char* env = std::getenv("CRYPTOCHAOS_PASSPHRASE"); env != nullptr && *env != '\0')
    return keyforge::Passphrase(std::string_view(env));

  std::string line;
  if (::isatty(STDIN_FILENO)) {
    std::cerr << "Passphrase: " << std::flush;
    termios old{};
    const bool have_attrs = ::tcgetattr(STDIN_FILENO, &old) == 0;
    if (have_attrs) {
      termios quiet = old;
      quiet.c_lflag &= ~static_cast<tcflag_t>(ECHO);
      ::tcsetattr(STDIN_FILENO, TCSAFLUSH, &quiet);
    }
    std::getline(std::cin, line);
    if (have_attrs) ::tcsetattr(STDIN_FILENO, TCSAFLUSH, &old);
    std::cerr << '\n';
  } else {
    std::getline(std::cin, line);
  }
  if (line.empty()) fail(Errc::usage, "no passphrase: set CRYPTOCHAOS_PASSPHRASE or type one at the prompt");
  keyforge::Passphrase p{std::string_view(line)};
  secure_wipe(std::span(reinterpret_cast<std::uint8_t*>(line.data()), line.size()));
  return p;
}

std::unique_ptr<RandomSource> make_rng(const std::optional<std::uint64_t>& seed) {
  if (seed) {
    std::cerr << "warning: --seed makes key material deterministic; use only for tests\n";
    return std::make_unique<SeededRandom>(*seed);
  }
  return std::make_unique<SystemRandom>();
}

// --- commands ----------------------------------------------------------------

void cmd_keygen(const fs::path& out, const std::optional<std::uint64_t>& seed) {
  auto rng = make_rng(seed);
  auto kp = keyforge::generate_keypair(*rng);
  write_atomic(out, kp.secret.view(), 0600);
  fs::path pub = out;
  pub += ".pub";
  write_atomic(pub, kp.public_key.hex() + "\n");
  std::cout << kp.public_key.hex() << '\n';
}

void cmd_encrypt(const fs::path& to, const fs::path& in, const fs::path& out, const std::optional<std::uint64_t>& seed) {
  auto recipient = read_public_key(to);
  Bytes plain = read_input(in);
  auto passphrase = read_passphrase();
  auto rng = make_rng(seed);
  write_atomic(out, envelope::encrypt_file(passphrase, recipient, plain, *rng));
}

void cmd_decrypt(const fs::path& key_path, const fs::path& in, const fs::path& out) {
  auto secret = read_secret_key(key_path);
  Bytes sealed = read_input(in);
  (void)envelope::parse(sealed);  // format faults surface before the prompt
  auto passphrase = read_passphrase();
  Bytes plain = envelope::decrypt_file(passphrase, secret, sealed);
  write_atomic(out, plain);
  secure_wipe(plain);
}

/// Pixels of a PGM, otherwise the raw bytes.
ImageBuffer load_as_image(const fs::path& path) {
  Bytes raw = read_input(path);
  if (looks_like_pgm(raw)) return read_pgm(raw);
  require(!raw.empty(), path.string() + " is empty");
  return ImageBuffer::from_bytes(raw);
}

json metric_or_error(auto&& compute) {
  try {
    return compute();
  } catch (const Error& e) {
    return json{{"error", e.what()}};
  }
}

void cmd_analyze(const fs::path& in, const std::optional<fs::path>& reference, bool as_json) {
  ImageBuffer img = load_as_image(in);
  metrics::ByteHistogram hist(img.pixels());
  json j;
  j["file"] = in.string();
  j["bytes"] = img.size();
  j["entropy"] = metric_or_error([&] { return json(metrics::shannon_entropy(hist)); });
  j["adjacent_correlation"] = metric_or_error([&] { return json(metrics::adjacent_correlation(img.pixels())); });
  j["histogram_uniformity"] = metric_or_error([&] { return json(metrics::histogram_uniformity(hist)); });
  if (reference) {
    ImageBuffer ref = load_as_image(*reference);
    j["npcr"] = metric_or_error([&] { return json(metrics::npcr(ref, img)); });
    j["uaci"] = metric_or_error([&] { return json(metrics::uaci(ref, img)); });
    j["mse"] = metric_or_error([&] { return json(metrics::mse_psnr(ref, img).mse); });
    j["psnr_db"] = metric_or_error([&] {
      double p = metrics::mse_psnr(ref, img).psnr_db;
      return std::isinf(p) ? json("inf") : json(p);
    });
  }
  if (as_json) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  for (const auto& [k, v] : j.items()) {
    std::cout << std::left << std::setw(22) << k << ' ';
    if (v.is_object())
      std::cout << "error: " << v.at("error").get<std::string>() << '\n';
    else if (v.is_string())
      std::cout << v.get<std::string>() << '\n';
    else
      std::cout << v.dump() << '\n';
  }
}

void cmd_nist(const fs::path& in, const nist::SuiteOptions& opt, bool as_json) {
  Bytes data = read_input(in);
  auto report = nist::run_suite(data, opt);
  if (as_json) {
    json rows = json::array();
    for (const auto& r : report.results)
      rows.push_back({{"test", r.test_name}, {"p_values", r.p_values}, {"passed", r.passed}, {"parameters", r.parameters}, {"note", r.note}});
    std::cout << json{{"bits", data.size() * 8}, {"alpha", nist::kAlpha}, {"results", rows}, {"passed", report.passed_count()}}.dump(2)
              << '\n';
    return;
  }
  std::cout << "bits: " << data.size() * 8 << ", alpha = " << nist::kAlpha << '\n';
  for (const auto& r : report.results) {
    std::cout << std::left << std::setw(16) << r.test_name << (r.passed ? "Pass" : "Fail");
    if (!r.p_values.empty()) {
      std::cout << "  p =";
      for (double p : r.p_values) std::cout << ' ' << std::setprecision(6) << p;
    }
    if (!r.note.empty()) std::cout << "  (" << r.note << ')';
    std::cout << '\n';
  }
  std::cout << report.summary() << '\n';
}

void cmd_grover(unsigned key_bits, const std::string& t_per_oracle, const std::string& overhead, const std::optional<std::string>& ref,
                bool table, bool as_json) {
  quantum::GroverParams p;
  p.key_bits = key_bits;
  auto t = quantum::parse_decimal(t_per_oracle);
  require(boost::multiprecision::denominator(t) == 1, "--t-per-oracle must be an integer");
  p.t_per_oracle = boost::multiprecision::numerator(t);
  p.overhead = quantum::parse_decimal(overhead);
  p.reference_algorithm = ref;
  auto e = quantum::estimate(p);

  auto row_json = [](const quantum::ReferenceRow& r) {
    return json{{"algorithm", r.algorithm}, {"t_gate_count", r.t_gate_count}, {"grover_speedup_estimate", r.grover_speedup_estimate}};
  };
  if (as_json) {
    json j{{"key_bits", e.key_bits},
           {"iterations", e.iterations.str()},
           {"effective_keyspace_bits", quantum::to_string(e.effective_keyspace_bits)},
           {"t_per_oracle", p.t_per_oracle.str()},
           {"overhead", quantum::to_string(p.overhead)},
           {"total_t_gates", e.total_t_gates.str()}};
    if (e.reference) j["reference"] = row_json(*e.reference);
    if (table) {
      j["reference_table"] = json::array();
      for (const auto& r : quantum::published_reference_table()) j["reference_table"].push_back(row_json(r));
    }
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::cout << "key bits                " << e.key_bits << '\n'
            << "Grover iterations       " << e.iterations.str() << " (" << quantum::scientific(e.iterations) << ")\n"
            << "effective keyspace      2^" << quantum::to_string(e.effective_keyspace_bits) << '\n'
            << "T gates per oracle      " << p.t_per_oracle.str() << '\n'
            << "overhead                " << quantum::to_string(p.overhead) << '\n'
            << "total T gates           " << quantum::scientific(e.total_t_gates) << '\n';
  if (e.reference)
    std::cout << "published (" << e.reference->algorithm << ")  T gates " << e.reference->t_gate_count << ", speedup estimate "
              << e.reference->grover_speedup_estimate << " (reference data, not derived)\n";
  if (table) {
    std::cout << "\nPublished quantum resource table (reference data):\n";
    for (const auto& r : quantum::published_reference_table())
      std::cout << "  " << std::left << std::setw(12) << r.algorithm << std::setw(10) << r.t_gate_count << r.grover_speedup_estimate << '\n';
  }
}

int cmd_bench(bench::BenchConfig cfg, const std::string& format, const std::optional<fs::path>& out) {
  auto fmt = bench::parse_format(format);
  auto report = bench::run_bench(cfg);
  std::string text = bench::emit_report(report, fmt);
  if (out)
    write_atomic(*out, text);
  else
    std::cout << text;
  for (const auto& r : report.rows)
    if (r.status == bench::RowStatus::failed) std::cerr << "error: " << r.algorithm << ": " << r.diagnostic << '\n';
  return report.any_required_failed() ? kInternal : kOk;
}

void cmd_synth(const fs::path& out, std::uint64_t seed, std::size_t width, std::size_t height) {
  require(width >= 1 && height >= 1 && width <= 65535 && height <= 65535, "image dimensions must lie in [1, 65535]");
  write_atomic(out, write_pgm(synthetic_image(seed, width, height)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CryptoChaos: chaos-seeded hybrid encryption and cipher evaluation"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "cryptochaos 1.0.0");

  std::optional<std::uint64_t> seed;
  bool as_json = false;
  fs::path in, out, key, to;
  std::optional<fs::path> reference, bench_out;

  auto* keygen = app.add_subcommand("keygen", "Generate an X25519 recipient key pair (writes PATH and PATH.pub)");
  keygen->add_option("--out", out, "Secret key path")->required();
  keygen->add_option("--seed", seed, "Deterministic test-mode randomness");

  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a file to a recipient public key");
  encrypt->add_option("--to", to, "Recipient public key (.pub)")->required()->check(CLI::ExistingFile);
  encrypt->add_option("--in", in, "Plaintext file")->required();
  encrypt->add_option("--out", out, "Envelope output (.cch)")->required();
  encrypt->add_option("--seed", seed, "Deterministic test-mode randomness");

  auto* decrypt = app.add_subcommand("decrypt", "Decrypt an envelope with the recipient secret key");
  decrypt->add_option("--key", key, "Recipient secret key")->required()->check(CLI::ExistingFile);
  decrypt->add_option("--in", in, "Envelope (.cch)")->required();
  decrypt->add_option("--out", out, "Plaintext output")->required();

  auto* analyze = app.add_subcommand("analyze", "Entropy, correlation and uniformity of a file or PGM image");
  analyze->add_option("--in", in, "File or PGM image")->required();
  analyze->add_option("--reference", reference, "Plain image for NPCR/UACI/MSE/PSNR");
  analyze->add_flag("--json", as_json, "Structured output");

  nist::SuiteOptions nist_opt;
  auto* nist_cmd = app.add_subcommand("nist", "Seven SP 800-22 tests on a file's bits (MSB first)");
  nist_cmd->add_option("--in", in, "Input file")->required();
  nist_cmd->add_option("--template", nist_opt.template_bits, "Template bits for the template test")->capture_default_str();
  nist_cmd->add_option("--block-size", nist_opt.block_len, "Block frequency M")->capture_default_str();
  nist_cmd->add_option("--serial-m", nist_opt.serial_m, "Serial test pattern length")->capture_default_str();
  nist_cmd->add_flag("--json", as_json, "Structured output");

  unsigned key_bits = 256;
  std::string t_per_oracle = std::to_string(quantum::kDefaultTPerOracle), overhead = "1";
  std::optional<std::string> ref_alg;
  bool table = false;
  auto* grover = app.add_subcommand("grover", "Grover key-search cost estimate");
  grover->add_option("--key-bits", key_bits, "Key length k")->capture_default_str();
  grover->add_option("--t-per-oracle", t_per_oracle, "T gates per oracle call")->capture_default_str();
  grover->add_option("--overhead", overhead, "Error-correction multiplier (>= 1)")->capture_default_str();
  grover->add_option("--reference", ref_alg, "Show the published row for this algorithm");
  grover->add_flag("--table", table, "Print the published reference table");
  grover->add_flag("--json", as_json, "Structured output");

  bench::BenchConfig cfg;
  std::string format = "text";
  std::optional<fs::path> workload;
  std::uint64_t bench_seed = cfg.seed;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark cipher adapters on an image workload");
  bench_cmd->add_option("--runs", cfg.runs, "Timed runs per adapter")->capture_default_str();
  bench_cmd->add_option("--warmup", cfg.warmup, "Untimed warmup runs")->capture_default_str();
  bench_cmd->add_option("--adapters", cfg.adapters, "Subset of adapters")->delimiter(',');
  bench_cmd->add_option("--workload", workload, "PGM image (default: synthetic 512x512)");
  bench_cmd->add_option("--seed", bench_seed, "Seed for synthetic workload, keys and metric ciphertexts")->capture_default_str();
  bench_cmd->add_option("--format", format, "text, json or csv")->capture_default_str();
  bench_cmd->add_flag("--json", as_json, "Same as --format json");
  bench_cmd->add_option("--out", bench_out, "Write the report here instead of stdout");

  std::uint64_t synth_seed = 1;
  std::size_t width = 512, height = 512;
  auto* synth = app.add_subcommand("synth-image", "Write the deterministic synthetic test image (PGM)");
  synth->add_option("--out", out, "Output .pgm")->required();
  synth->add_option("--seed", synth_seed, "Noise seed")->capture_default_str();
  synth->add_option("--width", width)->capture_default_str();
  synth->add_option("--height", height)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*keygen) {
      cmd_keygen(out, seed);
    } else if (*encrypt) {
      cmd_encrypt(to, in, out, seed);
    } else if (*decrypt) {
      cmd_decrypt(key, in, out);
    } else if (*analyze) {
      cmd_analyze(in, reference, as_json);
    } else if (*nist_cmd) {
      cmd_nist(in, nist_opt, as_json);
    } else if (*grover) {
      cmd_grover(key_bits, t_per_oracle, overhead, ref_alg, table, as_json);
    } else if (*bench_cmd) {
      cfg.seed = bench_seed;
      if (workload)
        cfg.workload = *workload;
      else
        cfg.workload = bench::SyntheticWorkload{bench_seed};
      return cmd_bench(cfg, as_json ? "json" : format, bench_out);
    } else if (*synth) {
      cmd_synth(out, synth_seed, width, height);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
