// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_CRYPTO_HPP_
#define PESAGG_CRYPTO_HPP_

#include <array>
#include <cstdint>
#include <span>

#include "pesagg/bytes.hpp"
#include "pesagg/group.hpp"

namespace pesagg {

// A PRG/PRF seed of kappa bits (kappa is a protocol parameter, multiple of 8).
struct Seed {
  Bytes bytes;

  size_t bits() const { return bytes.size() * 8; }
  bool operator==(const Seed&) const = default;
  auto operator<=>(const Seed&) const = default;
  std::string hex() const { return to_hex(bytes); }
};

// PRF(secret, round) -> seed of out_bits.  Used to turn long-lived pairwise
// secrets into per-round seeds; out_bits must be a positive multiple of 8.
Seed prf(std::span<const uint8_t> secret, uint64_t input, uint32_t out_bits);

// Random-access expansion of a seed into an unbounded stream of ring
// elements of `width_bits` each.  element(k) is O(1), so masking a sparse
// index set touches only those positions — nobody ever expands a full dense
// vector just to read a handful of entries.
class PrgStream {
 public:
  PrgStream(const Seed& seed, uint32_t width_bits);

  uint64_t element(uint64_t index) const;
  uint32_t width_bits() const { return width_; }

 private:
  std::array<uint8_t, 32> key_;
  uint32_t width_;
  uint64_t mask_;
  size_t elem_bytes_;
  size_t per_block_;
  mutable uint64_t cached_block_ = UINT64_MAX;
  mutable std::array<uint8_t, 64> block_{};
};

// One-shot convenience used in tests and in small derivations.
uint64_t prg_element(const Seed& seed, uint64_t index, uint32_t width_bits);

// Authenticated encryption under a key derived from a DH shared secret.
// Wire form is nonce || body where body already carries the MAC; decryption
// with the wrong key or a flipped bit fails loudly.
struct Ciphertext {
  Bytes nonce;
  Bytes body;

  Bytes encode() const;
  static Ciphertext decode(std::span<const uint8_t> wire);
  size_t wire_size() const { return nonce.size() + body.size(); }
  bool operator==(const Ciphertext&) const = default;
};

// Nonces are built from (round, label, sender) so a key pair never reuses
// one within a round as long as the (label, sender) pair is unique.
struct NonceParts {
  uint32_t round = 0;
  uint8_t label = 0;
  uint32_t sender = 0;
};

Bytes sym_key_from_secret(std::span<const uint8_t> shared_secret);
Ciphertext sym_encrypt(const Bytes& key, const NonceParts& nonce, std::span<const uint8_t> plaintext);
Bytes sym_decrypt(const Bytes& key, const Ciphertext& ct);  // throws CryptoError on auth failure

// Domain-separated BLAKE2b helper for the public-randomness derivations.
Bytes hash32(std::string_view context, std::span<const Bytes> parts);

}  // namespace pesagg

#endif  // PESAGG_CRYPTO_HPP_
