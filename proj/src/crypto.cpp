// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/crypto.hpp"

#include <sodium.h>

#include <cstring>

namespace pesagg {

namespace {

void ensure_sodium() {
  static const int rc = sodium_init();
  if (rc < 0) throw std::runtime_error("libsodium initialization failed");
}

// 16-byte context strings double as BLAKE2b keys for domain separation.
constexpr unsigned char kPrfContext[16] = {'p', 'e', 's', 'a', 'g', 'g', '.', 'p',
                                           'r', 'f', '.', 'v', '1', 0,   0,   0};
constexpr unsigned char kPrgContext[16] = {'p', 'e', 's', 'a', 'g', 'g', '.', 'p',
                                           'r', 'g', '.', 'v', '1', 0,   0,   0};
constexpr unsigned char kAeadContext[16] = {'p', 'e', 's', 'a', 'g', 'g', '.', 'a',
                                            'e', 'a', 'd', '.', 'v', '1', 0,   0};

}  // namespace

Seed prf(std::span<const uint8_t> secret, uint64_t input, uint32_t out_bits) {
  ensure_sodium();
  if (out_bits == 0 || out_bits % 8 != 0)
    throw CryptoError("prf output width must be a positive multiple of 8 bits");
  const size_t want = out_bits / 8;
  // BLAKE2b will not emit fewer than 16 bytes; hash wide, then truncate.
  const size_t hash_len = want < crypto_generichash_BYTES_MIN
                              ? crypto_generichash_BYTES_MIN
                              : (want > crypto_generichash_BYTES_MAX
                                     ? crypto_generichash_BYTES_MAX
                                     : want);
  if (want > crypto_generichash_BYTES_MAX)
    throw CryptoError("prf output width exceeds hash capacity");

  crypto_generichash_state st;
  crypto_generichash_init(&st, kPrfContext, sizeof kPrfContext, hash_len);
  crypto_generichash_update(&st, secret.data(), secret.size());
  uint8_t word[8];
  for (int i = 0; i < 8; ++i) word[i] = static_cast<uint8_t>(input >> (8 * i));
  crypto_generichash_update(&st, word, 8);
  Bytes full(hash_len);
  crypto_generichash_final(&st, full.data(), hash_len);
  full.resize(want);
  return Seed{std::move(full)};
}

PrgStream::PrgStream(const Seed& seed, uint32_t width_bits) : width_(width_bits) {
  ensure_sodium();
  if (width_ == 0 || width_ > 64 || width_ % 8 != 0)
    throw CryptoError("prg element width must be 8..64 bits in byte steps");
  mask_ = width_ == 64 ? UINT64_MAX : ((1ull << width_) - 1);
  elem_bytes_ = width_ / 8;
  per_block_ = block_.size() / elem_bytes_;
  crypto_generichash(key_.data(), key_.size(), seed.bytes.data(), seed.bytes.size(),
                     kPrgContext, sizeof kPrgContext);
}

uint64_t PrgStream::element(uint64_t index) const {
  const uint64_t block = index / per_block_;
  if (block != cached_block_) {
    uint8_t nonce[crypto_stream_chacha20_NONCEBYTES] = {0};
    for (int i = 0; i < 8; ++i) nonce[i] = static_cast<uint8_t>(block >> (8 * i));
    crypto_stream_chacha20(block_.data(), block_.size(), nonce, key_.data());
    cached_block_ = block;
  }
  const size_t off = static_cast<size_t>(index % per_block_) * elem_bytes_;
  uint64_t v = 0;
  for (size_t i = 0; i < elem_bytes_; ++i)
    v |= static_cast<uint64_t>(block_[off + i]) << (8 * i);
  return v & mask_;
}

uint64_t prg_element(const Seed& seed, uint64_t index, uint32_t width_bits) {
  return PrgStream(seed, width_bits).element(index);
}

Bytes Ciphertext::encode() const {
  Bytes out;
  out.reserve(nonce.size() + body.size());
  out.insert(out.end(), nonce.begin(), nonce.end());
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

Ciphertext Ciphertext::decode(std::span<const uint8_t> wire) {
  constexpr size_t n = crypto_aead_chacha20poly1305_ietf_NPUBBYTES;
  if (wire.size() < n + crypto_aead_chacha20poly1305_ietf_ABYTES)
    throw CryptoError("ciphertext too short");
  Ciphertext ct;
  ct.nonce.assign(wire.begin(), wire.begin() + n);
  ct.body.assign(wire.begin() + n, wire.end());
  return ct;
}

Bytes sym_key_from_secret(std::span<const uint8_t> shared_secret) {
  ensure_sodium();
  Bytes key(crypto_aead_chacha20poly1305_ietf_KEYBYTES);
  crypto_generichash(key.data(), key.size(), shared_secret.data(), shared_secret.size(),
                     kAeadContext, sizeof kAeadContext);
  return key;
}

static Bytes build_nonce(const NonceParts& p) {
  Bytes nonce(crypto_aead_chacha20poly1305_ietf_NPUBBYTES, 0);
  for (int i = 0; i < 4; ++i) nonce[i] = static_cast<uint8_t>(p.round >> (8 * i));
  nonce[4] = p.label;
  for (int i = 0; i < 4; ++i) nonce[5 + i] = static_cast<uint8_t>(p.sender >> (8 * i));
  return nonce;
}

Ciphertext sym_encrypt(const Bytes& key, const NonceParts& nonce_parts,
                       std::span<const uint8_t> plaintext) {
  ensure_sodium();
  if (key.size() != crypto_aead_chacha20poly1305_ietf_KEYBYTES)
    throw CryptoError("symmetric key must be 32 bytes");
  Ciphertext ct;
  ct.nonce = build_nonce(nonce_parts);
  ct.body.resize(plaintext.size() + crypto_aead_chacha20poly1305_ietf_ABYTES);
  unsigned long long out_len = 0;
  crypto_aead_chacha20poly1305_ietf_encrypt(ct.body.data(), &out_len, plaintext.data(),
                                            plaintext.size(), nullptr, 0, nullptr,
                                            ct.nonce.data(), key.data());
  ct.body.resize(out_len);
  return ct;
}

Bytes sym_decrypt(const Bytes& key, const Ciphertext& ct) {
  ensure_sodium();
  if (key.size() != crypto_aead_chacha20poly1305_ietf_KEYBYTES)
    throw CryptoError("symmetric key must be 32 bytes");
  if (ct.nonce.size() != crypto_aead_chacha20poly1305_ietf_NPUBBYTES)
    throw CryptoError("nonce must be 12 bytes");
  if (ct.body.size() < crypto_aead_chacha20poly1305_ietf_ABYTES)
    throw CryptoError("ciphertext too short");
  Bytes pt(ct.body.size() - crypto_aead_chacha20poly1305_ietf_ABYTES);
  unsigned long long out_len = 0;
  if (crypto_aead_chacha20poly1305_ietf_decrypt(pt.data(), &out_len, nullptr,
                                                ct.body.data(), ct.body.size(), nullptr,
                                                0, ct.nonce.data(), key.data()) != 0)
    throw CryptoError("authenticated decryption failed");
  pt.resize(out_len);
  return pt;
}

Bytes hash32(std::string_view context, std::span<const Bytes> parts) {
  ensure_sodium();
  crypto_generichash_state st;
  crypto_generichash_init(&st, nullptr, 0, 32);
  crypto_generichash_update(&st, reinterpret_cast<const unsigned char*>(context.data()),
                            context.size());
  const uint8_t zero = 0;
  crypto_generichash_update(&st, &zero, 1);
  for (const Bytes& part : parts) {
    uint8_t len[4];
    for (int i = 0; i < 4; ++i)
      len[i] = static_cast<uint8_t>(static_cast<uint32_t>(part.size()) >> (8 * i));
    crypto_generichash_update(&st, len, 4);
    crypto_generichash_update(&st, part.data(), part.size());
  }
  Bytes out(32);
  crypto_generichash_final(&st, out.data(), out.size());
  return out;
}

}  // namespace pesagg
