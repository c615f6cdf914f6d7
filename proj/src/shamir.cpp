// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/shamir.hpp"

#include <algorithm>
#include <set>

namespace pesagg {

namespace {

Field mod(const Field& a, const Field& p) {
  Field r = a % p;
  if (r < 0) r += p;
  return r;
}

// Extended Euclid; p prime and 0 < a < p here, so the inverse exists.
Field mod_inverse(const Field& a, const Field& p) {
  Field old_r = mod(a, p), r = p;
  Field old_s = 1, s = 0;
  while (r != 0) {
    Field q = old_r / r;
    Field tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw ShareError("no modular inverse");
  return mod(old_s, p);
}

Field uniform_field(DetRng& rng, const Field& p) {
  // Rejection sampling over the minimal byte width keeps the draw unbiased.
  size_t bits = 0;
  for (Field v = p - 1; v > 0; v >>= 1) ++bits;
  const size_t nbytes = (bits + 7) / 8;
  const unsigned top_excess = static_cast<unsigned>(nbytes * 8 - bits);
  Bytes buf(nbytes);
  while (true) {
    rng.fill(buf);
    buf[0] &= static_cast<uint8_t>(0xff >> top_excess);
    Field v = 0;
    for (uint8_t b : buf) v = (v << 8) | b;
    if (v < p) return v;
  }
}

}  // namespace

std::vector<SecretShare> ss_share_with_coeffs(const Field& secret,
                                              std::span<const Field> coeffs,
                                              uint32_t count, const Field& prime) {
  if (secret < 0 || secret >= prime) throw ShareError("secret outside share field");
  if (count == 0 || Field(count) >= prime)
    throw ShareError("share count must satisfy 1 <= count < p");
  std::vector<SecretShare> shares;
  shares.reserve(count);
  for (uint32_t holder = 1; holder <= count; ++holder) {
    // Horner from the top coefficient down to the secret.
    Field acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
      acc = mod(acc * holder + *it, prime);
    acc = mod(acc * holder + secret, prime);
    shares.push_back(SecretShare{holder, std::move(acc)});
  }
  return shares;
}

std::vector<SecretShare> ss_share(const Field& secret, uint32_t ell, uint32_t count,
                                  const Field& prime, DetRng& rng) {
  if (ell == 0 || ell > count) throw ShareError("threshold must satisfy 1 <= ell <= count");
  std::vector<Field> coeffs(ell - 1);
  for (auto& c : coeffs) c = uniform_field(rng, prime);
  return ss_share_with_coeffs(secret, coeffs, count, prime);
}

Field ss_recon(std::span<const SecretShare> shares, uint32_t ell, const Field& prime) {
  if (ell == 0) throw ShareError("threshold must be positive");
  if (shares.size() < ell) throw ShareError("too few shares for reconstruction");

  // Deterministic subset: lowest ell holders.  Honest sharings interpolate
  // to the same secret from any subset, so the choice is free.
  std::vector<SecretShare> picked(shares.begin(), shares.end());
  std::sort(picked.begin(), picked.end(),
            [](const SecretShare& a, const SecretShare& b) { return a.holder < b.holder; });
  std::set<uint32_t> seen;
  for (const auto& s : picked) {
    if (s.holder == 0) throw ShareError("holder index must be 1-based");
    if (!seen.insert(s.holder).second) throw ShareError("duplicate share holder");
    if (s.value < 0 || s.value >= prime) throw ShareError("share value outside field");
  }
  picked.resize(ell);

  Field secret = 0;
  for (uint32_t j = 0; j < ell; ++j) {
    Field num = 1, den = 1;
    for (uint32_t m = 0; m < ell; ++m) {
      if (m == j) continue;
      num = mod(num * picked[m].holder, prime);
      den = mod(den * (Field(picked[m].holder) - Field(picked[j].holder)), prime);
    }
    Field lagrange = mod(num * mod_inverse(den, prime), prime);
    secret = mod(secret + picked[j].value * lagrange, prime);
  }
  return secret;
}

Field seed_to_field(const Seed& seed) {
  Field v = 0;
  for (uint8_t b : seed.bytes) v = (v << 8) | b;
  return v;
}

Seed field_to_seed(const Field& value, uint32_t kappa_bits) {
  if (kappa_bits == 0 || kappa_bits % 8 != 0)
    throw ShareError("seed width must be a positive multiple of 8 bits");
  if (value < 0 || (value >> kappa_bits) != 0)
    throw ShareError("reconstructed value exceeds the seed domain");
  Bytes out(kappa_bits / 8);
  Field v = value;
  for (size_t i = 0; i < out.size(); ++i) {
    out[out.size() - 1 - i] = static_cast<uint8_t>(v & 0xff);
    v >>= 8;
  }
  return Seed{std::move(out)};
}

Field share_field_prime(uint32_t kappa_bits) {
  // Fixed table keeps encodings stable; each entry is prime and strictly
  // above the 2^kappa it serves.
  static const struct {
    uint32_t max_kappa;
    const char* prime;
  } kTable[] = {
      {8, "257"},
      {16, "65537"},
      {32, "4294967311"},
      {64, "18446744073709551629"},
      {128, "1361129467683753853853498429727072845819"},  // 2^130 - 5
  };
  for (const auto& row : kTable)
    if (kappa_bits <= row.max_kappa) return Field(row.prime);
  throw ShareError("no share field configured for seeds above 128 bits");
}

size_t share_wire_size(const Field& prime) {
  size_t bytes = 0;
  for (Field v = prime - 1; v > 0; v >>= 8) ++bytes;
  return 4 + bytes;
}

Bytes encode_share(const SecretShare& share, const Field& prime) {
  const size_t value_bytes = share_wire_size(prime) - 4;
  ByteWriter w;
  w.u32(share.holder);
  Bytes big(value_bytes);
  Field v = share.value;
  for (size_t i = 0; i < value_bytes; ++i) {
    big[value_bytes - 1 - i] = static_cast<uint8_t>(v & 0xff);
    v >>= 8;
  }
  if (v != 0) throw ShareError("share value exceeds field width");
  w.raw(big);
  return w.take();
}

SecretShare decode_share(std::span<const uint8_t> wire, const Field& prime) {
  ByteReader r(wire);
  SecretShare s;
  s.holder = r.u32();
  Bytes big = r.raw(share_wire_size(prime) - 4);
  r.expect_done();
  for (uint8_t b : big) s.value = (s.value << 8) | b;
  return s;
}

}  // namespace pesagg
