#pragma once

// Layered key derivation:
//   passphrase -> map seeds -> pre-key -> SHA3-256 chaos key
//   X25519 shared secret -> BLAKE3 compression
//   HKDF-SHA256(BLAKE3(S) || K_chaos, salt, info) -> AES-256-GCM key

#include <string_view>

#include "cryptochaos/blake3.hpp"
#include "cryptochaos/bytes.hpp"
#include "cryptochaos/chaos.hpp"
#include "cryptochaos/primitives.hpp"
#include "cryptochaos/random.hpp"

namespace cryptochaos::keyforge {

inline constexpr std::size_t kKeyBytes = 32;
inline constexpr std::size_t kSaltBytes = 32;
inline constexpr std::string_view kHkdfInfo = "CryptoChaos-v1-AES256GCM";

class Passphrase {
 public:
  explicit Passphrase(std::string_view utf8) : Passphrase(as_bytes(utf8)) {}
  explicit Passphrase(ByteView bytes) : bytes_(bytes) { require(!bytes_.empty(), "passphrase must not be empty"); }

  ByteView view() const noexcept { return bytes_.view(); }
  void wipe() noexcept { bytes_.wipe(); }

 private:
  SecretBuffer bytes_;
};

using ChaosKey = SecretBytes<kKeyBytes, struct ChaosKeyTag>;
using SharedSecret = SecretBytes<kKeyBytes, struct SharedSecretTag>;
using CompressedSecret = SecretBytes<kKeyBytes, struct CompressedSecretTag>;
using FinalKey = SecretBytes<kKeyBytes, struct FinalKeyTag>;
using SecretKey = SecretBytes<primitives::kX25519Bytes, struct SecretKeyTag>;
using PublicKey = FixedBytes<primitives::kX25519Bytes, struct PublicKeyTag>;
using Salt = FixedBytes<kSaltBytes, struct SaltTag>;

struct RecipientKeypair {
  SecretKey secret;
  PublicKey public_key;

  void wipe() noexcept { secret.wipe(); }
};

inline chaos::MapSeed derive_seed(const Passphrase& p, chaos::MapId id) {
  const std::uint8_t suffix[2] = {0x00, static_cast<std::uint8_t>(id)};
  return chaos::MapSeed(primitives::sha3_256(concat({p.view(), suffix})));
}

/// seed_i = SHA3-256(passphrase || 0x00 || map_id)
inline chaos::MapSeedSet derive_seeds(const Passphrase& p) {
  return {derive_seed(p, chaos::MapId::logistic), derive_seed(p, chaos::MapId::chebyshev), derive_seed(p, chaos::MapId::tent),
          derive_seed(p, chaos::MapId::henon)};
}

inline ChaosKey derive_chaos_key(ByteView pre_key) {
  require(pre_key.size() == chaos::kPreKeyBytes, "pre-key must be 128 bytes");
  return ChaosKey(primitives::sha3_256(pre_key));
}

inline ChaosKey derive_chaos_key(const chaos::PreKey& pre_key) { return derive_chaos_key(pre_key.view()); }

inline ChaosKey chaos_key_from_passphrase(const Passphrase& p) {
  auto seeds = derive_seeds(p);
  return derive_chaos_key(chaos::build_pre_key(seeds));
}

/// Clamps the scalar per RFC 7748 and computes its public point.
inline RecipientKeypair keypair_from_secret(ByteView secret) {
  RecipientKeypair kp;
  kp.secret = SecretKey(secret);
  primitives::x25519_clamp(std::span<std::uint8_t, 32>(kp.secret.data(), 32));
  kp.public_key = PublicKey(primitives::x25519_public_from_secret(kp.secret.view()));
  return kp;
}

inline RecipientKeypair generate_keypair(RandomSource& rng) {
  SecretKey raw;
  rng.fill(raw.mutable_view());
  return keypair_from_secret(raw.view());
}

inline SharedSecret agree(const SecretKey& own_secret, const PublicKey& peer_public) {
  auto shared = primitives::x25519(own_secret.view(), peer_public.view());
  if (!shared) fail(Errc::contributory_behavior, "X25519 produced the all-zero shared secret (low-order public key)");
  SharedSecret s(*shared);
  secure_wipe(*shared);
  return s;
}

inline CompressedSecret compress_secret(const SharedSecret& s) {
  auto h = Blake3::hash(s.view());
  CompressedSecret out(h);
  secure_wipe(h);
  return out;
}

inline FinalKey derive_final_key(const SharedSecret& s, const ChaosKey& chaos_key, const Salt& salt) {
  auto compressed = compress_secret(s);
  Bytes ikm = concat({compressed.view(), chaos_key.view()});
  Bytes okm = primitives::hkdf_sha256(ikm, salt.view(), as_bytes(kHkdfInfo), kKeyBytes);
  FinalKey key{ByteView(okm)};
  secure_wipe(ikm);
  secure_wipe(okm);
  return key;
}

inline FinalKey derive_final_key(ByteView s, ByteView chaos_key, ByteView salt) {
  return derive_final_key(SharedSecret(s), ChaosKey(chaos_key), Salt(salt));
}

}  // namespace cryptochaos::keyforge
