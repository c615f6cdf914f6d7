// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_GROUP_HPP_
#define PESAGG_GROUP_HPP_

#include <cstdint>
#include <memory>
#include <stdexcept>

#include "pesagg/bytes.hpp"
#include "pesagg/rng.hpp"

namespace pesagg {

struct CryptoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KeyPair {
  Bytes private_key;  // held locally, never placed in a protocol message
  Bytes public_key;
};

// Diffie-Hellman group used for the two per-user key pairs.  Both sides of
// key_agree must land on identical bytes; everything downstream (seed PRF,
// symmetric keys) is derived from that shared encoding.
class DhGroup {
 public:
  virtual ~DhGroup() = default;

  virtual size_t element_size() const = 0;
  virtual KeyPair generate(DetRng& rng) const = 0;
  // priv * peer's public element.  Throws CryptoError on malformed or
  // degenerate peer elements and on a zero/invalid private scalar.
  virtual Bytes key_agree(const Bytes& private_key, const Bytes& peer_public) const = 0;
  virtual bool valid_element(const Bytes& e) const = 0;
};

// X25519 production backend.
class X25519Group final : public DhGroup {
 public:
  size_t element_size() const override { return 32; }
  KeyPair generate(DetRng& rng) const override;
  Bytes key_agree(const Bytes& private_key, const Bytes& peer_public) const override;
  bool valid_element(const Bytes& e) const override;
};

// Tiny multiplicative group mod a small prime; exists so unit tests can
// brute-force discrete logs and enumerate the whole group.  Not for
// production parameters.
class ModPGroup final : public DhGroup {
 public:
  ModPGroup(uint64_t prime, uint64_t generator);

  size_t element_size() const override { return elem_bytes_; }
  KeyPair generate(DetRng& rng) const override;
  Bytes key_agree(const Bytes& private_key, const Bytes& peer_public) const override;
  bool valid_element(const Bytes& e) const override;

  uint64_t prime() const { return p_; }
  uint64_t generator() const { return g_; }
  uint64_t order() const { return order_; }  // multiplicative order of g

  uint64_t decode(const Bytes& e) const;
  Bytes encode(uint64_t v) const;

 private:
  uint64_t p_, g_, order_;
  size_t elem_bytes_;
};

std::unique_ptr<DhGroup> make_group(const std::string& name);

}  // namespace pesagg

#endif  // PESAGG_GROUP_HPP_
