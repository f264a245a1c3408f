#pragma once

// The .cch container. Byte layout, all integers big-endian:
//
//   offset  size    field
//   0       4       magic "CCH1"
//   4       1       version 0x01
//   5       32      ephemeral X25519 public key
//   37      32      HKDF salt
//   69      12      AES-GCM nonce
//   81      8       ciphertext length
//   89      ct_len  ciphertext
//   89+n    16      GCM tag
//
// Associated data = magic || version || ephemeral public key || salt.

#include <array>
#include <cstdint>

#include "cryptochaos/bytes.hpp"
#include "cryptochaos/keyforge.hpp"
#include "cryptochaos/primitives.hpp"
#include "cryptochaos/random.hpp"

namespace cryptochaos::envelope {

inline constexpr std::array<std::uint8_t, 4> kMagic = {'C', 'C', 'H', '1'};
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kNonceBytes = primitives::kGcmNonceBytes;
inline constexpr std::size_t kTagBytes = primitives::kGcmTagBytes;
inline constexpr std::size_t kAadBytes = 4 + 1 + 32 + 32;
inline constexpr std::size_t kHeaderBytes = kAadBytes + kNonceBytes + 8;
inline constexpr std::size_t kOverheadBytes = kHeaderBytes + kTagBytes;

using Nonce = FixedBytes<kNonceBytes, struct NonceTag>;
using Tag = FixedBytes<kTagBytes, struct TagTag>;

struct Envelope {
  keyforge::PublicKey ephemeral_public;
  keyforge::Salt salt;
  Nonce nonce;
  Bytes ciphertext;
  Tag tag;

  std::size_t serialized_size() const noexcept { return kOverheadBytes + ciphertext.size(); }
  friend bool operator==(const Envelope&, const Envelope&) = default;
};

inline std::array<std::uint8_t, kAadBytes> associated_data(const keyforge::PublicKey& eph, const keyforge::Salt& salt) {
  std::array<std::uint8_t, kAadBytes> aad{};
  auto it = std::copy(kMagic.begin(), kMagic.end(), aad.begin());
  *it++ = kVersion;
  it = std::copy(eph.view().begin(), eph.view().end(), it);
  std::copy(salt.view().begin(), salt.view().end(), it);
  return aad;
}

inline Bytes serialize(const Envelope& e) {
  Bytes out;
  out.reserve(e.serialized_size());
  auto aad = associated_data(e.ephemeral_public, e.salt);
  out.insert(out.end(), aad.begin(), aad.end());
  out.insert(out.end(), e.nonce.view().begin(), e.nonce.view().end());
  const std::uint64_t n = e.ciphertext.size();
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(n >> shift));
  out.insert(out.end(), e.ciphertext.begin(), e.ciphertext.end());
  out.insert(out.end(), e.tag.view().begin(), e.tag.view().end());
  return out;
}

inline Envelope parse(ByteView in) {
  const std::size_t prefix = std::min(in.size(), kMagic.size());
  if (!std::equal(kMagic.begin(), kMagic.begin() + prefix, in.begin()))
    fail(Errc::bad_magic, "not a CryptoChaos envelope (bad magic)");
  if (in.size() < kMagic.size() + 1) fail(Errc::bad_length, "envelope truncated before version byte");
  if (in[4] != kVersion) fail(Errc::unsupported_version, "unsupported version " + std::to_string(in[4]));
  if (in.size() < kOverheadBytes) fail(Errc::bad_length, "envelope truncated: " + std::to_string(in.size()) + " bytes");

  std::uint64_t ct_len = 0;
  for (std::size_t i = 0; i < 8; ++i) ct_len = ct_len << 8 | in[kAadBytes + kNonceBytes + i];
  if (ct_len != in.size() - kOverheadBytes)
    fail(Errc::bad_length, "ciphertext length field " + std::to_string(ct_len) + " does not match envelope size");

  Envelope e;
  e.ephemeral_public = keyforge::PublicKey(in.subspan(5, 32));
  e.salt = keyforge::Salt(in.subspan(37, 32));
  e.nonce = Nonce(in.subspan(kAadBytes, kNonceBytes));
  auto body = in.subspan(kHeaderBytes, static_cast<std::size_t>(ct_len));
  e.ciphertext.assign(body.begin(), body.end());
  e.tag = Tag(in.subspan(kHeaderBytes + body.size(), kTagBytes));
  return e;
}

/// Fields bound into the tag alongside the ciphertext.
struct Header {
  keyforge::PublicKey ephemeral_public;
  keyforge::Salt salt;
};

/// Seals with a caller-chosen nonce. Reusing a nonce under one key breaks
/// GCM; only test and benchmark code pins nonces.
inline Envelope seal_with_nonce(const keyforge::FinalKey& key, const Header& header, ByteView plaintext, const Nonce& nonce) {
  auto aad = associated_data(header.ephemeral_public, header.salt);
  auto sealed = primitives::aes256gcm_seal(key.view(), nonce.view(), aad, plaintext);
  return Envelope{header.ephemeral_public, header.salt, nonce, std::move(sealed.ciphertext), Tag(sealed.tag)};
}

inline Envelope seal(const keyforge::FinalKey& key, const Header& header, ByteView plaintext, RandomSource& rng) {
  return seal_with_nonce(key, header, plaintext, Nonce(rng.draw<kNonceBytes>()));
}

inline Bytes open(const keyforge::FinalKey& key, const Envelope& e) {
  auto aad = associated_data(e.ephemeral_public, e.salt);
  auto plain = primitives::aes256gcm_open(key.view(), e.nonce.view(), aad, e.ciphertext, e.tag.view());
  if (!plain) fail(Errc::authentication_failure, "authentication failed: envelope tag does not verify");
  return std::move(*plain);
}

// --- Full pipeline -------------------------------------------------------------

/// Per-message randomness: ephemeral X25519 scalar, HKDF salt, GCM nonce.
struct MessageRandomness {
  keyforge::SecretKey ephemeral_secret;
  keyforge::Salt salt;
  Nonce nonce;

  static MessageRandomness draw(RandomSource& rng) {
    MessageRandomness m;
    rng.fill(m.ephemeral_secret.mutable_view());
    m.salt = keyforge::Salt(rng.draw<keyforge::kSaltBytes>());
    m.nonce = Nonce(rng.draw<kNonceBytes>());
    return m;
  }
};

inline Envelope encrypt(const keyforge::Passphrase& passphrase, const keyforge::PublicKey& recipient_public, ByteView plaintext,
                        const MessageRandomness& m) {
  auto ephemeral = keyforge::keypair_from_secret(m.ephemeral_secret.view());
  auto shared = keyforge::agree(ephemeral.secret, recipient_public);
  auto chaos_key = keyforge::chaos_key_from_passphrase(passphrase);
  auto final_key = keyforge::derive_final_key(shared, chaos_key, m.salt);
  return seal_with_nonce(final_key, Header{ephemeral.public_key, m.salt}, plaintext, m.nonce);
}

inline Bytes encrypt_file(const keyforge::Passphrase& passphrase, const keyforge::PublicKey& recipient_public, ByteView plaintext,
                          const MessageRandomness& m) {
  return serialize(encrypt(passphrase, recipient_public, plaintext, m));
}

inline Bytes encrypt_file(const keyforge::Passphrase& passphrase, const keyforge::PublicKey& recipient_public, ByteView plaintext,
                          RandomSource& rng) {
  return encrypt_file(passphrase, recipient_public, plaintext, MessageRandomness::draw(rng));
}

/// Wrong passphrase, wrong recipient key and a tampered envelope body all
/// surface as the same authentication failure.
inline Bytes decrypt_file(const keyforge::Passphrase& passphrase, const keyforge::SecretKey& recipient_secret, ByteView serialized) {
  Envelope e = parse(serialized);
  keyforge::SharedSecret shared;
  try {
    shared = keyforge::agree(recipient_secret, e.ephemeral_public);
  } catch (const Error& err) {
    if (err.code() != Errc::contributory_behavior) throw;
    fail(Errc::authentication_failure, "authentication failed: envelope tag does not verify");
  }
  auto chaos_key = keyforge::chaos_key_from_passphrase(passphrase);
  auto final_key = keyforge::derive_final_key(shared, chaos_key, e.salt);
  return open(final_key, e);
}

}  // namespace cryptochaos::envelope
