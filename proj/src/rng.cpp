// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/rng.hpp"

#include <sodium.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace pesagg {

namespace {

void ensure_sodium() {
  static const int rc = sodium_init();
  if (rc < 0) throw std::runtime_error("libsodium initialization failed");
}

}  // namespace

DetRng::DetRng(uint64_t master, std::string_view domain, uint64_t lane,
               uint64_t slot) {
  ensure_sodium();
  static const unsigned char ctx[16] = {'p', 'e', 's', 'a', 'g', 'g', '.',
                                        'r', 'n', 'g', '.', 'v', '1', 0, 0, 0};
  crypto_generichash_state st;
  crypto_generichash_init(&st, ctx, sizeof ctx, key_.size());
  uint8_t word[8];
  for (int i = 0; i < 8; ++i) word[i] = static_cast<uint8_t>(master >> (8 * i));
  crypto_generichash_update(&st, word, 8);
  crypto_generichash_update(
      &st, reinterpret_cast<const unsigned char*>(domain.data()), domain.size());
  // NUL keeps ("ab",1) and ("a",...) style collisions from ever mattering.
  const uint8_t zero = 0;
  crypto_generichash_update(&st, &zero, 1);
  for (int i = 0; i < 8; ++i) word[i] = static_cast<uint8_t>(lane >> (8 * i));
  crypto_generichash_update(&st, word, 8);
  for (int i = 0; i < 8; ++i) word[i] = static_cast<uint8_t>(slot >> (8 * i));
  crypto_generichash_update(&st, word, 8);
  crypto_generichash_final(&st, key_.data(), key_.size());
  pos_ = buf_.size();  // force refill on first draw
}

void DetRng::refill() {
  uint8_t nonce[crypto_stream_chacha20_NONCEBYTES] = {0};
  for (int i = 0; i < 8; ++i) nonce[i] = static_cast<uint8_t>(chunk_ >> (8 * i));
  crypto_stream_chacha20(buf_.data(), buf_.size(), nonce, key_.data());
  ++chunk_;
  pos_ = 0;
}

uint64_t DetRng::next_u64() {
  if (pos_ + 8 > buf_.size()) refill();
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(buf_[pos_ + i]) << (8 * i);
  pos_ += 8;
  return v;
}

uint64_t DetRng::uniform_below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
  if ((bound & (bound - 1)) == 0) return next_u64() & (bound - 1);
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  while (true) {
    uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

double DetRng::unit_real() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double DetRng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * unit_real() - 1.0;
    v = 2.0 * unit_real() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  has_spare_ = true;
  return u * m;
}

void DetRng::fill(std::span<uint8_t> out) {
  for (auto& b : out) {
    if (pos_ >= buf_.size()) refill();
    b = buf_[pos_++];
  }
}

}  // namespace pesagg
