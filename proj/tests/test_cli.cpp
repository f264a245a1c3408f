#include <gtest/gtest.h>
#include <sys/stat.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "cryptochaos/bench.hpp"
#include "cryptochaos/report.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("cryptochaos-cli-" + std::to_string(::getpid()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  /// Runs the tool with stdin closed; `env` is prepended to the command line.
  Result run(const std::string& args, const std::string& env = "") const {
    std::string cmd = "cd '" + dir_.string() + "' && " + env + " '" CRYPTOCHAOS_CLI_PATH "' " + args + " </dev/null 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
  }

  std::string slurp(const std::string& name) const {
    std::ifstream f(path(name), std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
  }

  fs::path dir_;
};

const std::string kPass = "CRYPTOCHAOS_PASSPHRASE='open sesame'";

}  // namespace

TEST_F(Cli, KeygenWritesSecretAndPublic) {
  ASSERT_EQ(run("keygen --out k").code, 0);
  EXPECT_EQ(fs::file_size(path("k")), 32u);
  struct stat st {};
  ASSERT_EQ(::stat(path("k").c_str(), &st), 0);
  EXPECT_EQ(st.st_mode & 0777, 0600u);
  auto pub = slurp("k.pub");
  ASSERT_EQ(pub.size(), 65u);
  EXPECT_EQ(pub.back(), '\n');
  EXPECT_EQ(pub.find_first_not_of("0123456789abcdef"), 64u);
}

TEST_F(Cli, EncryptDecryptRoundTrip) {
  ASSERT_EQ(run("keygen --out k").code, 0);
  ASSERT_EQ(run("synth-image --out img.pgm --seed 3").code, 0);
  ASSERT_EQ(run("encrypt --to k.pub --in img.pgm --out img.cch", kPass).code, 0);
  ASSERT_EQ(run("decrypt --key k --in img.cch --out back.pgm", kPass).code, 0);
  EXPECT_EQ(slurp("back.pgm"), slurp("img.pgm"));
}

TEST_F(Cli, WrongPassphraseExitsThreeWithoutOutput) {
  ASSERT_EQ(run("keygen --out k").code, 0);
  ASSERT_EQ(run("synth-image --out img.pgm --width 16 --height 16").code, 0);
  ASSERT_EQ(run("encrypt --to k.pub --in img.pgm --out img.cch", kPass).code, 0);
  EXPECT_EQ(run("decrypt --key k --in img.cch --out back.pgm", "CRYPTOCHAOS_PASSPHRASE=wrong").code, 3);
  EXPECT_FALSE(fs::exists(path("back.pgm")));
  std::size_t entries = std::distance(fs::directory_iterator(dir_), fs::directory_iterator{});
  EXPECT_EQ(entries, 4u);  // k, k.pub, img.pgm, img.cch: no temporaries left
}

TEST_F(Cli, MissingPassphraseIsUsageError) {
  ASSERT_EQ(run("keygen --out k").code, 0);
  ASSERT_EQ(run("synth-image --out img.pgm --width 4 --height 4").code, 0);
  EXPECT_EQ(run("encrypt --to k.pub --in img.pgm --out img.cch").code, 1);
  EXPECT_FALSE(fs::exists(path("img.cch")));
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("keygen").code, 1);
  EXPECT_EQ(run("bench --adapters ROT13 --runs 1 --warmup 0").code, 1);
  ASSERT_EQ(run("keygen --out k").code, 0);
  ASSERT_EQ(run("synth-image --out img.pgm --width 4 --height 4").code, 0);
  EXPECT_EQ(run("decrypt --key k --in img.pgm --out x", kPass).code, 2);
  EXPECT_EQ(run("analyze --in missing.bin").code, 2);
  EXPECT_EQ(run("grover --key-bits 0").code, 2);
}

TEST_F(Cli, SeededKeygenAndSynthAreDeterministic) {
  ASSERT_EQ(run("keygen --out a --seed 9").code, 0);
  ASSERT_EQ(run("keygen --out b --seed 9").code, 0);
  EXPECT_EQ(slurp("a"), slurp("b"));
  ASSERT_EQ(run("synth-image --out x.pgm --seed 5").code, 0);
  ASSERT_EQ(run("synth-image --out y.pgm --seed 5").code, 0);
  EXPECT_EQ(slurp("x.pgm"), slurp("y.pgm"));
}

TEST_F(Cli, AnalyzeReportsZeroVarianceWithoutFailing) {
  std::ofstream(path("flat.bin"), std::ios::binary) << std::string(64, 'A');
  auto r = run("analyze --in flat.bin --json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("entropy").get<double>(), 0.0);
  EXPECT_TRUE(j.at("adjacent_correlation").contains("error"));
}

TEST_F(Cli, NistJson) {
  ASSERT_EQ(run("synth-image --out img.pgm --width 64 --height 64").code, 0);
  auto r = run("nist --in img.pgm --json --serial-m 3");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("results").size(), 7u);
}

TEST_F(Cli, GroverJson) {
  auto r = run("grover --key-bits 256 --table --json");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("effective_keyspace_bits"), "128");
  EXPECT_EQ(j.at("reference_table").size(), 5u);
}

TEST_F(Cli, BenchJsonParsesBack) {
  auto r = run("bench --runs 1 --warmup 0 --adapters AES-GCM,ChaCha20 --json");
  ASSERT_EQ(r.code, 0);
  auto report = cryptochaos::bench::parse_report(r.out);
  ASSERT_EQ(report.rows.size(), 2u);
  EXPECT_EQ(report.rows[0].samples, 1u);
}
