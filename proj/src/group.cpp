// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/group.hpp"

#include <sodium.h>

#include <algorithm>

namespace pesagg {

namespace {

void ensure_sodium() {
  static const int rc = sodium_init();
  if (rc < 0) throw std::runtime_error("libsodium initialization failed");
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t p) {
  uint64_t acc = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) acc = mulmod(acc, base, p);
    base = mulmod(base, base, p);
    exp >>= 1;
  }
  return acc;
}

}  // namespace

KeyPair X25519Group::generate(DetRng& rng) const {
  ensure_sodium();
  KeyPair kp;
  kp.private_key.resize(crypto_scalarmult_SCALARBYTES);
  rng.fill(kp.private_key);
  kp.public_key.resize(crypto_scalarmult_BYTES);
  if (crypto_scalarmult_base(kp.public_key.data(), kp.private_key.data()) != 0)
    throw CryptoError("x25519 base point multiplication failed");
  return kp;
}

Bytes X25519Group::key_agree(const Bytes& private_key, const Bytes& peer_public) const {
  ensure_sodium();
  if (private_key.size() != crypto_scalarmult_SCALARBYTES)
    throw CryptoError("x25519 private key must be 32 bytes");
  if (!valid_element(peer_public)) throw CryptoError("invalid x25519 group element");
  Bytes out(crypto_scalarmult_BYTES);
  if (crypto_scalarmult(out.data(), private_key.data(), peer_public.data()) != 0)
    throw CryptoError("x25519 agreement hit a degenerate element");
  return out;
}

bool X25519Group::valid_element(const Bytes& e) const {
  if (e.size() != crypto_scalarmult_BYTES) return false;
  // Reject the all-zero encoding outright; other low-order points surface as
  // a crypto_scalarmult failure in key_agree.
  return std::any_of(e.begin(), e.end(), [](uint8_t b) { return b != 0; });
}

ModPGroup::ModPGroup(uint64_t prime, uint64_t generator) : p_(prime), g_(generator) {
  if (p_ < 3 || p_ >= (1ull << 32)) throw CryptoError("modp prime out of range");
  if (g_ <= 1 || g_ >= p_) throw CryptoError("modp generator out of range");
  // Order of g by walking the cycle; the groups here are tiny by design.
  order_ = 1;
  for (uint64_t x = g_; x != 1; x = mulmod(x, g_, p_)) ++order_;
  elem_bytes_ = 1;
  for (uint64_t v = p_ - 1; v > 0xff; v >>= 8) ++elem_bytes_;
}

Bytes ModPGroup::encode(uint64_t v) const {
  Bytes out(elem_bytes_);
  for (size_t i = 0; i < elem_bytes_; ++i)
    out[elem_bytes_ - 1 - i] = static_cast<uint8_t>(v >> (8 * i));
  return out;
}

uint64_t ModPGroup::decode(const Bytes& e) const {
  if (e.size() != elem_bytes_) throw CryptoError("modp element has wrong length");
  uint64_t v = 0;
  for (uint8_t b : e) v = (v << 8) | b;
  return v;
}

KeyPair ModPGroup::generate(DetRng& rng) const {
  // Exponents in [1, order-1]: zero would hand every peer the identity.
  uint64_t a = 1 + rng.uniform_below(order_ - 1);
  KeyPair kp;
  kp.private_key = encode(a);
  kp.public_key = encode(powmod(g_, a, p_));
  return kp;
}

Bytes ModPGroup::key_agree(const Bytes& private_key, const Bytes& peer_public) const {
  uint64_t a = decode(private_key);
  if (a == 0 || a % order_ == 0) throw CryptoError("modp private exponent is degenerate");
  if (!valid_element(peer_public)) throw CryptoError("invalid modp group element");
  uint64_t e = decode(peer_public);
  return encode(powmod(e, a, p_));
}

bool ModPGroup::valid_element(const Bytes& e) const {
  if (e.size() != elem_bytes_) return false;
  uint64_t v = 0;
  for (uint8_t b : e) v = (v << 8) | b;
  if (v == 0 || v >= p_) return false;
  return powmod(v, order_, p_) == 1;  // inside <g>
}

std::unique_ptr<DhGroup> make_group(const std::string& name) {
  if (name == "x25519") return std::make_unique<X25519Group>();
  if (name == "modp-tiny") return std::make_unique<ModPGroup>(23, 5);
  throw CryptoError("unknown group backend: " + name);
}

}  // namespace pesagg
