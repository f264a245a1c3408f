#pragma once

// Thin RAII wrappers over the OpenSSL EVP primitives the pipeline uses.

#include <openssl/core_names.h>
#include <openssl/err.h>
#include <openssl/evp.h>
#include <openssl/kdf.h>
#include <openssl/params.h>
#include <openssl/provider.h>
#include <openssl/rand.h>

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "cryptochaos/bytes.hpp"

namespace cryptochaos::primitives {

namespace detail {

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* p) const noexcept { EVP_CIPHER_CTX_free(p); }
};
struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* p) const noexcept { EVP_MD_CTX_free(p); }
};
struct PkeyDeleter {
  void operator()(EVP_PKEY* p) const noexcept { EVP_PKEY_free(p); }
};
struct PkeyCtxDeleter {
  void operator()(EVP_PKEY_CTX* p) const noexcept { EVP_PKEY_CTX_free(p); }
};
struct KdfDeleter {
  void operator()(EVP_KDF* p) const noexcept { EVP_KDF_free(p); }
};
struct KdfCtxDeleter {
  void operator()(EVP_KDF_CTX* p) const noexcept { EVP_KDF_CTX_free(p); }
};
struct CipherDeleter {
  void operator()(EVP_CIPHER* p) const noexcept { EVP_CIPHER_free(p); }
};

using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;
using MdCtx = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;
using Pkey = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using PkeyCtx = std::unique_ptr<EVP_PKEY_CTX, PkeyCtxDeleter>;

inline std::string openssl_error(const char* what) {
  std::string msg = what;
  if (unsigned long e = ERR_get_error(); e != 0) {
    char buf[256];
    ERR_error_string_n(e, buf, sizeof buf);
    msg += ": ";
    msg += buf;
  }
  ERR_clear_error();
  return msg;
}

inline void check(int rc, const char* what) {
  if (rc != 1) fail(Errc::internal, openssl_error(what));
}

inline CipherCtx new_cipher_ctx() {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) fail(Errc::internal, "EVP_CIPHER_CTX_new failed");
  return ctx;
}

inline int as_int(std::size_t n) {
  require(n <= static_cast<std::size_t>(INT32_MAX), "buffer too large for a single cipher call");
  return static_cast<int>(n);
}

}  // namespace detail

inline constexpr std::size_t kDigestBytes = 32;
using Digest = std::array<std::uint8_t, kDigestBytes>;

inline Digest digest(const EVP_MD* md, ByteView data) {
  Digest out{};
  unsigned int len = 0;
  detail::check(EVP_Digest(data.data(), data.size(), out.data(), &len, md, nullptr), "EVP_Digest");
  if (len != kDigestBytes) fail(Errc::internal, "unexpected digest length");
  return out;
}

inline Digest sha3_256(ByteView data) { return digest(EVP_sha3_256(), data); }
inline Digest sha256(ByteView data) { return digest(EVP_sha256(), data); }

/// HKDF (RFC 5869) with SHA-256, extract-then-expand.
inline Bytes hkdf_sha256(ByteView ikm, ByteView salt, ByteView info, std::size_t length) {
  std::unique_ptr<EVP_KDF, detail::KdfDeleter> kdf(EVP_KDF_fetch(nullptr, "HKDF", nullptr));
  if (!kdf) fail(Errc::internal, detail::openssl_error("EVP_KDF_fetch(HKDF)"));
  std::unique_ptr<EVP_KDF_CTX, detail::KdfCtxDeleter> ctx(EVP_KDF_CTX_new(kdf.get()));
  if (!ctx) fail(Errc::internal, detail::openssl_error("EVP_KDF_CTX_new"));

  char digest_name[] = "SHA256";
  OSSL_PARAM params[5];
  params[0] = OSSL_PARAM_construct_utf8_string(OSSL_KDF_PARAM_DIGEST, digest_name, 0);
  params[1] = OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_KEY, const_cast<std::uint8_t*>(ikm.data()), ikm.size());
  params[2] = OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_SALT, const_cast<std::uint8_t*>(salt.data()), salt.size());
  params[3] = OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_INFO, const_cast<std::uint8_t*>(info.data()), info.size());
  params[4] = OSSL_PARAM_construct_end();

  Bytes out(length);
  if (EVP_KDF_derive(ctx.get(), out.data(), out.size(), params) != 1)
    fail(Errc::internal, detail::openssl_error("HKDF derive"));
  return out;
}

// --- X25519 -----------------------------------------------------------------

inline constexpr std::size_t kX25519Bytes = 32;
using X25519Key = std::array<std::uint8_t, kX25519Bytes>;

inline void x25519_clamp(std::span<std::uint8_t, kX25519Bytes> scalar) noexcept {
  scalar[0] &= 248;
  scalar[31] &= 127;
  scalar[31] |= 64;
}

inline X25519Key x25519_public_from_secret(ByteView secret) {
  require(secret.size() == kX25519Bytes, "X25519 secret must be 32 bytes");
  detail::Pkey key(EVP_PKEY_new_raw_private_key(EVP_PKEY_X25519, nullptr, secret.data(), secret.size()));
  if (!key) fail(Errc::invalid_input, detail::openssl_error("X25519 private key"));
  X25519Key pub{};
  std::size_t len = pub.size();
  detail::check(EVP_PKEY_get_raw_public_key(key.get(), pub.data(), &len), "X25519 public key");
  return pub;
}

/// Raw X25519 function. Returns nullopt when the result is the all-zero point
/// (low-order peer key).
inline std::optional<X25519Key> x25519(ByteView secret, ByteView peer_public) {
  require(secret.size() == kX25519Bytes, "X25519 secret must be 32 bytes");
  require(peer_public.size() == kX25519Bytes, "X25519 public key must be 32 bytes");
  detail::Pkey priv(EVP_PKEY_new_raw_private_key(EVP_PKEY_X25519, nullptr, secret.data(), secret.size()));
  detail::Pkey peer(EVP_PKEY_new_raw_public_key(EVP_PKEY_X25519, nullptr, peer_public.data(), peer_public.size()));
  if (!priv || !peer) fail(Errc::invalid_input, detail::openssl_error("X25519 key import"));
  detail::PkeyCtx ctx(EVP_PKEY_CTX_new(priv.get(), nullptr));
  if (!ctx) fail(Errc::internal, detail::openssl_error("EVP_PKEY_CTX_new"));
  detail::check(EVP_PKEY_derive_init(ctx.get()), "EVP_PKEY_derive_init");
  detail::check(EVP_PKEY_derive_set_peer(ctx.get(), peer.get()), "EVP_PKEY_derive_set_peer");
  X25519Key out{};
  std::size_t len = out.size();
  // OpenSSL refuses to return an all-zero shared secret; that is the only
  // derive failure possible with well-formed 32-byte inputs.
  if (EVP_PKEY_derive(ctx.get(), out.data(), &len) != 1) {
    ERR_clear_error();
    return std::nullopt;
  }
  std::uint8_t acc = 0;
  for (auto b : out) acc |= b;
  if (acc == 0) return std::nullopt;
  return out;
}

// --- AES-256-GCM ------------------------------------------------------------

inline constexpr std::size_t kGcmKeyBytes = 32;
inline constexpr std::size_t kGcmNonceBytes = 12;
inline constexpr std::size_t kGcmTagBytes = 16;
using GcmTag = std::array<std::uint8_t, kGcmTagBytes>;

struct GcmSealed {
  Bytes ciphertext;
  GcmTag tag{};
};

inline GcmSealed aes256gcm_seal(ByteView key, ByteView nonce, ByteView aad, ByteView plaintext) {
  require(key.size() == kGcmKeyBytes, "AES-256-GCM key must be 32 bytes");
  require(nonce.size() == kGcmNonceBytes, "AES-GCM nonce must be 12 bytes");
  auto ctx = detail::new_cipher_ctx();
  detail::check(EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr), "GCM init");
  detail::check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(nonce.size()), nullptr), "GCM ivlen");
  detail::check(EVP_EncryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), nonce.data()), "GCM key");
  int len = 0;
  if (!aad.empty()) detail::check(EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(), detail::as_int(aad.size())), "GCM aad");
  GcmSealed out;
  out.ciphertext.resize(plaintext.size());
  if (!plaintext.empty())
    detail::check(EVP_EncryptUpdate(ctx.get(), out.ciphertext.data(), &len, plaintext.data(), detail::as_int(plaintext.size())), "GCM update");
  detail::check(EVP_EncryptFinal_ex(ctx.get(), out.ciphertext.data() + plaintext.size(), &len), "GCM final");
  detail::check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kGcmTagBytes, out.tag.data()), "GCM tag");
  return out;
}

/// Returns nullopt on tag mismatch. No plaintext leaves this function unless
/// the tag verified.
inline std::optional<Bytes> aes256gcm_open(ByteView key, ByteView nonce, ByteView aad, ByteView ciphertext, ByteView tag) {
  require(key.size() == kGcmKeyBytes, "AES-256-GCM key must be 32 bytes");
  require(nonce.size() == kGcmNonceBytes, "AES-GCM nonce must be 12 bytes");
  require(tag.size() == kGcmTagBytes, "AES-GCM tag must be 16 bytes");
  auto ctx = detail::new_cipher_ctx();
  detail::check(EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr), "GCM init");
  detail::check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(nonce.size()), nullptr), "GCM ivlen");
  detail::check(EVP_DecryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), nonce.data()), "GCM key");
  int len = 0;
  if (!aad.empty()) detail::check(EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(), detail::as_int(aad.size())), "GCM aad");
  Bytes plain(ciphertext.size());
  if (!ciphertext.empty())
    detail::check(EVP_DecryptUpdate(ctx.get(), plain.data(), &len, ciphertext.data(), detail::as_int(ciphertext.size())), "GCM update");
  detail::check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kGcmTagBytes, const_cast<std::uint8_t*>(tag.data())), "GCM set tag");
  if (EVP_DecryptFinal_ex(ctx.get(), plain.data() + plain.size(), &len) != 1) {
    ERR_clear_error();
    secure_wipe(plain);
    return std::nullopt;
  }
  return plain;
}

// --- ChaCha20 (raw stream, no authenticator) --------------------------------

inline constexpr std::size_t kChaChaKeyBytes = 32;
inline constexpr std::size_t kChaChaNonceBytes = 12;

/// ChaCha20 keystream XOR (RFC 8439 layout: 32-bit block counter, 96-bit nonce).
inline Bytes chacha20_xor(ByteView key, ByteView nonce, ByteView input, std::uint32_t counter = 0) {
  require(key.size() == kChaChaKeyBytes, "ChaCha20 key must be 32 bytes");
  require(nonce.size() == kChaChaNonceBytes, "ChaCha20 nonce must be 12 bytes");
  // OpenSSL takes a 16-byte IV: little-endian counter then nonce.
  std::array<std::uint8_t, 16> iv{};
  for (int i = 0; i < 4; ++i) iv[i] = static_cast<std::uint8_t>(counter >> (8 * i));
  std::copy(nonce.begin(), nonce.end(), iv.begin() + 4);
  auto ctx = detail::new_cipher_ctx();
  detail::check(EVP_EncryptInit_ex(ctx.get(), EVP_chacha20(), nullptr, key.data(), iv.data()), "ChaCha20 init");
  Bytes out(input.size());
  int len = 0;
  if (!input.empty())
    detail::check(EVP_EncryptUpdate(ctx.get(), out.data(), &len, input.data(), detail::as_int(input.size())), "ChaCha20 update");
  detail::check(EVP_EncryptFinal_ex(ctx.get(), out.data() + input.size(), &len), "ChaCha20 final");
  return out;
}

// --- Legacy 64-bit block ciphers (CBC, PKCS#7) -------------------------------

enum class LegacyCipher { blowfish_cbc, cast5_cbc };

namespace detail {

inline bool load_legacy_provider() {
  static const bool loaded = [] {
    // Loading "legacy" explicitly disables the implicit default provider.
    OSSL_PROVIDER* def = OSSL_PROVIDER_load(nullptr, "default");
    OSSL_PROVIDER* legacy = OSSL_PROVIDER_load(nullptr, "legacy");
    ERR_clear_error();
    return def != nullptr && legacy != nullptr;
  }();
  return loaded;
}

inline const char* legacy_name(LegacyCipher c) { return c == LegacyCipher::blowfish_cbc ? "BF-CBC" : "CAST5-CBC"; }

inline std::unique_ptr<EVP_CIPHER, CipherDeleter> fetch_legacy(LegacyCipher c) {
  if (!load_legacy_provider()) return nullptr;
  std::unique_ptr<EVP_CIPHER, CipherDeleter> cipher(EVP_CIPHER_fetch(nullptr, legacy_name(c), nullptr));
  ERR_clear_error();
  return cipher;
}

}  // namespace detail

inline constexpr std::size_t kLegacyBlockBytes = 8;
inline constexpr std::size_t kLegacyKeyBytes = 16;

inline bool legacy_cipher_available(LegacyCipher c) { return detail::fetch_legacy(c) != nullptr; }

inline Bytes legacy_cbc(LegacyCipher c, bool encrypt, ByteView key, ByteView iv, ByteView input) {
  require(key.size() == kLegacyKeyBytes, "legacy cipher key must be 16 bytes");
  require(iv.size() == kLegacyBlockBytes, "legacy cipher IV must be 8 bytes");
  auto cipher = detail::fetch_legacy(c);
  if (!cipher) fail(Errc::internal, std::string(detail::legacy_name(c)) + " unavailable (OpenSSL legacy provider)");
  auto ctx = detail::new_cipher_ctx();
  detail::check(EVP_CipherInit_ex(ctx.get(), cipher.get(), nullptr, nullptr, nullptr, encrypt ? 1 : 0), "legacy init");
  detail::check(EVP_CIPHER_CTX_set_key_length(ctx.get(), static_cast<int>(key.size())), "legacy key length");
  detail::check(EVP_CipherInit_ex(ctx.get(), nullptr, nullptr, key.data(), iv.data(), encrypt ? 1 : 0), "legacy key");
  Bytes out(input.size() + kLegacyBlockBytes);
  int len = 0;
  int total = 0;
  if (!input.empty()) {
    detail::check(EVP_CipherUpdate(ctx.get(), out.data(), &len, input.data(), detail::as_int(input.size())), "legacy update");
    total = len;
  }
  if (EVP_CipherFinal_ex(ctx.get(), out.data() + total, &len) != 1)
    fail(Errc::authentication_failure, detail::openssl_error("legacy cipher padding check"));
  total += len;
  out.resize(static_cast<std::size_t>(total));
  return out;
}

}  // namespace cryptochaos::primitives
