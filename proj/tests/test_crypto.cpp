// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "pesagg/crypto.hpp"
#include "pesagg/group.hpp"
#include "pesagg/rng.hpp"
#include "pesagg/shamir.hpp"

using namespace pesagg;

namespace {

// Brute-force modular exponentiation oracle; deliberately independent of the
// library implementation.
uint64_t oracle_pow(uint64_t base, uint64_t exp, uint64_t p) {
  uint64_t acc = 1;
  for (uint64_t i = 0; i < exp; ++i) acc = (acc * base) % p;
  return acc;
}

}  // namespace

TEST_CASE("detrng streams are deterministic and domain separated") {
  DetRng a(42, "alpha", 1, 2);
  DetRng b(42, "alpha", 1, 2);
  for (int i = 0; i < 100; ++i) CHECK_EQ(a.next_u64(), b.next_u64());

  DetRng base(42, "alpha", 1, 2);
  DetRng other_domain(42, "beta", 1, 2);
  DetRng other_lane(42, "alpha", 2, 2);
  DetRng other_slot(42, "alpha", 1, 3);
  DetRng other_master(43, "alpha", 1, 2);
  uint64_t v = base.next_u64();
  CHECK_NE(v, other_domain.next_u64());
  CHECK_NE(v, other_lane.next_u64());
  CHECK_NE(v, other_slot.next_u64());
  CHECK_NE(v, other_master.next_u64());
}

TEST_CASE("detrng uniform_below stays in range and is roughly uniform") {
  DetRng rng(7, "uniform");
  std::array<int, 10> buckets{};
  for (int i = 0; i < 10000; ++i) {
    uint64_t v = rng.uniform_below(10);
    REQUIRE(v < 10);
    ++buckets[v];
  }
  // Each bucket ~ Binomial(10000, 0.1): mean 1000, sigma 30.
  for (int c : buckets) CHECK(std::abs(c - 1000) < 150);

  CHECK_THROWS(rng.uniform_below(0));
  for (int i = 0; i < 1000; ++i) CHECK(rng.uniform_below(1) == 0);
}

TEST_CASE("detrng gaussian has unit-normal moments") {
  DetRng rng(9, "gauss");
  const int n = 20000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    double g = rng.gaussian();
    sum += g;
    sq += g * g;
  }
  double mean = sum / n, var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.06);
}

TEST_CASE("modp group matches the brute-force oracle") {
  ModPGroup group(23, 5);
  CHECK_EQ(group.order(), 22);  // 5 generates all of Z_23^*

  // peer public 5^15, own exponent 6: shared value is 5^(15*6) = (5^15)^6.
  Bytes peer_pub = group.encode(oracle_pow(5, 15, 23));
  Bytes shared = group.key_agree(group.encode(6), peer_pub);
  CHECK_EQ(group.decode(shared), oracle_pow(oracle_pow(5, 15, 23), 6, 23));
  CHECK_EQ(group.decode(shared), 2);  // frozen from the oracle

  for (uint64_t a = 1; a < 22; ++a) {
    for (uint64_t b = 1; b < 22; ++b) {
      Bytes pub_a = group.encode(oracle_pow(5, a, 23));
      Bytes pub_b = group.encode(oracle_pow(5, b, 23));
      Bytes s_ab = group.key_agree(group.encode(a), pub_b);
      Bytes s_ba = group.key_agree(group.encode(b), pub_a);
      CHECK_EQ(s_ab, s_ba);
    }
  }
}

TEST_CASE("modp group rejects malformed elements and degenerate exponents") {
  ModPGroup group(23, 5);
  CHECK_THROWS_AS(group.key_agree(group.encode(6), group.encode(0)), CryptoError);
  CHECK_FALSE(group.valid_element(Bytes{23}));
  CHECK_FALSE(group.valid_element(Bytes{0}));
  CHECK_THROWS_AS(group.key_agree(group.encode(0), group.encode(5)), CryptoError);
  CHECK_THROWS_AS(group.key_agree(group.encode(22), group.encode(5)), CryptoError);

  // g = 2 only generates the quadratic residues mod 23; 5 is outside <2>.
  ModPGroup sub(23, 2);
  CHECK_EQ(sub.order(), 11);
  CHECK(sub.valid_element(sub.encode(4)));
  CHECK_FALSE(sub.valid_element(sub.encode(5)));
  CHECK_THROWS_AS(sub.key_agree(sub.encode(3), sub.encode(5)), CryptoError);
}

TEST_CASE("x25519 agreement is symmetric and rejects the zero element") {
  X25519Group group;
  DetRng rng(11, "keys");
  KeyPair a = group.generate(rng);
  KeyPair b = group.generate(rng);
  Bytes s_ab = group.key_agree(a.private_key, b.public_key);
  Bytes s_ba = group.key_agree(b.private_key, a.public_key);
  CHECK_EQ(s_ab, s_ba);
  CHECK_EQ(s_ab.size(), 32);

  KeyPair c = group.generate(rng);
  CHECK_NE(group.key_agree(a.private_key, c.public_key), s_ab);
  CHECK_THROWS_AS(group.key_agree(a.private_key, Bytes(32, 0)), CryptoError);
  CHECK_THROWS_AS(group.key_agree(a.private_key, Bytes(31, 1)), CryptoError);
}

TEST_CASE("prf is deterministic and separates keys, inputs, and widths") {
  Bytes k1 = {1, 2, 3, 4};
  Bytes k2 = {1, 2, 3, 5};
  Seed s1 = prf(k1, 7, 128);
  CHECK_EQ(s1.bytes.size(), 16);
  CHECK_EQ(s1, prf(k1, 7, 128));
  CHECK_NE(s1, prf(k2, 7, 128));
  CHECK_NE(s1, prf(k1, 8, 128));
  CHECK_EQ(prf(k1, 7, 8).bytes.size(), 1);
  CHECK_THROWS_AS(prf(k1, 7, 13), CryptoError);
  CHECK_THROWS_AS(prf(k1, 7, 0), CryptoError);
}

TEST_CASE("prf collisions at kappa=8 follow the birthday bound") {
  // 500 trials of 20 single-byte outputs; oracle probability of a
  // collision-free trial is prod_{i<20}(1 - i/256).
  double p_free = 1.0;
  for (int i = 1; i < 20; ++i) p_free *= 1.0 - i / 256.0;
  const int trials = 500;
  int free_count = 0;
  for (int t = 0; t < trials; ++t) {
    Bytes key = {static_cast<uint8_t>(t), static_cast<uint8_t>(t >> 8), 9};
    std::set<uint8_t> seen;
    bool collided = false;
    for (uint64_t i = 0; i < 20; ++i)
      if (!seen.insert(prf(key, i, 8).bytes[0]).second) collided = true;
    if (!collided) ++free_count;
  }
  const double mean = trials * p_free;
  const double sigma = std::sqrt(trials * p_free * (1.0 - p_free));
  CHECK(std::abs(free_count - mean) <= 3.0 * sigma);
}

TEST_CASE("prg gives random access identical to sequential expansion") {
  Seed seed{Bytes(16, 0xab)};
  PrgStream stream(seed, 32);
  std::vector<uint64_t> forward;
  for (uint64_t k = 0; k < 100; ++k) forward.push_back(stream.element(k));
  // Same elements read backwards, through a fresh stream and odd order.
  PrgStream stream2(seed, 32);
  for (uint64_t k = 100; k-- > 0;) CHECK_EQ(stream2.element(k), forward[k]);
  CHECK_EQ(stream2.element(57), forward[57]);
  CHECK_EQ(stream2.element(0), forward[0]);

  Seed other{Bytes(16, 0xac)};
  CHECK_NE(prg_element(other, 0, 32), forward[0]);
  CHECK_EQ(prg_element(seed, 3, 32), forward[3]);
}

TEST_CASE("prg respects element width") {
  Seed seed{Bytes(16, 0x11)};
  PrgStream s8(seed, 8);
  PrgStream s64(seed, 64);
  bool high64 = false;
  for (uint64_t k = 0; k < 1000; ++k) {
    CHECK(s8.element(k) < 256);
    if (s64.element(k) > UINT32_MAX) high64 = true;
  }
  CHECK(high64);
  CHECK_THROWS_AS(PrgStream(seed, 0), CryptoError);
  CHECK_THROWS_AS(PrgStream(seed, 65), CryptoError);
  CHECK_THROWS_AS(PrgStream(seed, 12), CryptoError);
}

TEST_CASE("prg elements are unbiased at width 32") {
  Seed seed{Bytes(16, 0x77)};
  PrgStream s(seed, 32);
  const int n = 100000;
  double sum = 0;
  for (int k = 0; k < n; ++k) sum += static_cast<double>(s.element(k));
  const double mean = sum / n;
  const double expect = std::pow(2.0, 31);
  CHECK(std::abs(mean - expect) / expect < 0.01);
}

TEST_CASE("aead round-trips across payload sizes and authenticates") {
  Bytes secret = {9, 9, 9};
  Bytes key = sym_key_from_secret(secret);
  CHECK_EQ(key.size(), 32);
  NonceParts nonce{.round = 3, .label = 1, .sender = 17};

  for (size_t len : {size_t{0}, size_t{1}, size_t{31}, size_t{32}, size_t{1024}}) {
    Bytes pt(len);
    for (size_t i = 0; i < len; ++i) pt[i] = static_cast<uint8_t>(i * 7);
    Ciphertext ct = sym_encrypt(key, nonce, pt);
    CHECK_EQ(ct.wire_size(), len + 28);  // 12 nonce + 16 tag
    CHECK_EQ(sym_decrypt(key, ct), pt);

    Ciphertext wire_rt = Ciphertext::decode(ct.encode());
    CHECK_EQ(wire_rt, ct);
  }

  Bytes pt = {1, 2, 3, 4};
  Ciphertext ct = sym_encrypt(key, nonce, pt);
  Ciphertext tampered = ct;
  tampered.body[0] ^= 1;
  CHECK_THROWS_AS(sym_decrypt(key, tampered), CryptoError);
  Bytes wrong_key = sym_key_from_secret(Bytes{9, 9, 8});
  CHECK_THROWS_AS(sym_decrypt(wrong_key, ct), CryptoError);
}

TEST_CASE("shamir matches the hand-computed polynomial") {
  // f(x) = 5 + 3x over F_7.
  const Field p = 7;
  std::vector<Field> coeffs = {3};
  auto shares = ss_share_with_coeffs(5, coeffs, 3, p);
  REQUIRE_EQ(shares.size(), 3);
  CHECK_EQ(shares[0], SecretShare{1, 1});
  CHECK_EQ(shares[1], SecretShare{2, 4});
  CHECK_EQ(shares[2], SecretShare{3, 0});

  std::vector<SecretShare> two = {shares[0], shares[1]};
  CHECK_EQ(ss_recon(two, 2, p), 5);
  std::vector<SecretShare> other = {shares[2], shares[0]};
  CHECK_EQ(ss_recon(other, 2, p), 5);
}

TEST_CASE("shamir round-trips over the production field") {
  const Field p = share_field_prime(128);
  DetRng rng(5, "shamir");
  for (int iter = 0; iter < 10; ++iter) {
    Seed secret{Bytes(16)};
    rng.fill(secret.bytes);
    auto shares = ss_share(seed_to_field(secret), 5, 8, p, rng);
    REQUIRE_EQ(shares.size(), 8);
    // A few specific 5-subsets; the acceptance suite sweeps all of them.
    std::vector<SecretShare> subset = {shares[7], shares[2], shares[4], shares[0], shares[5]};
    CHECK_EQ(field_to_seed(ss_recon(subset, 5, p), 128), secret);
    std::vector<SecretShare> prefix(shares.begin(), shares.begin() + 5);
    CHECK_EQ(field_to_seed(ss_recon(prefix, 5, p), 128), secret);
    // Extra shares beyond ell are accepted and ignored.
    CHECK_EQ(field_to_seed(ss_recon(shares, 5, p), 128), secret);
  }
}

TEST_CASE("shamir below-threshold share tuples are uniform for every secret") {
  // ell = 3 over F_7: enumerate all polynomials; the (share_1, share_2)
  // distribution must be flat and identical regardless of the secret.
  const Field p = 7;
  for (int s = 0; s < 7; ++s) {
    std::map<std::pair<int, int>, int> counts;
    for (int a1 = 0; a1 < 7; ++a1) {
      for (int a2 = 0; a2 < 7; ++a2) {
        std::vector<Field> coeffs = {a1, a2};
        auto shares = ss_share_with_coeffs(s, coeffs, 4, p);
        counts[{static_cast<int>(shares[0].value), static_cast<int>(shares[1].value)}]++;
      }
    }
    CHECK_EQ(counts.size(), 49);
    for (const auto& [pair, n] : counts) CHECK_EQ(n, 1);
  }
}

TEST_CASE("shamir rejects malformed inputs") {
  const Field p = 7;
  DetRng rng(1, "err");
  CHECK_THROWS_AS(ss_share(9, 2, 3, p, rng), ShareError);   // secret >= p
  CHECK_THROWS_AS(ss_share(3, 4, 3, p, rng), ShareError);   // ell > count
  CHECK_THROWS_AS(ss_share(3, 2, 9, p, rng), ShareError);   // count >= p
  auto shares = ss_share(3, 3, 4, p, rng);
  std::vector<SecretShare> few(shares.begin(), shares.begin() + 2);
  CHECK_THROWS_AS(ss_recon(few, 3, p), ShareError);
  std::vector<SecretShare> dup = {shares[0], shares[0], shares[1]};
  CHECK_THROWS_AS(ss_recon(dup, 3, p), ShareError);
  std::vector<SecretShare> zero_holder = {{0, 1}, {1, 2}, {2, 3}};
  CHECK_THROWS_AS(ss_recon(zero_holder, 3, p), ShareError);

  CHECK_THROWS_AS(field_to_seed(Field(256), 8), ShareError);
  CHECK_EQ(field_to_seed(Field(255), 8).bytes, Bytes{0xff});
}

TEST_CASE("share field primes exceed the seed domain") {
  CHECK_EQ(share_field_prime(8), Field(257));
  CHECK_EQ(share_field_prime(16), Field(65537));
  CHECK(share_field_prime(128) > (Field(1) << 128));
  // 2^130 - 5
  CHECK_EQ(share_field_prime(128), (Field(1) << 130) - 5);
}

TEST_CASE("share wire encoding round-trips at fixed width") {
  const Field p = share_field_prime(128);
  CHECK_EQ(share_wire_size(p), 4 + 17);
  SecretShare s{6, (Field(1) << 129) + 12345};
  Bytes wire = encode_share(s, p);
  CHECK_EQ(wire.size(), share_wire_size(p));
  CHECK_EQ(decode_share(wire, p), s);

  const Field tiny = 257;
  SecretShare t{3, 200};
  CHECK_EQ(share_wire_size(tiny), 4 + 2);
  CHECK_EQ(decode_share(encode_share(t, tiny), tiny), t);
}

TEST_CASE("seed field embedding is big-endian and invertible") {
  Seed seed{Bytes{0x01, 0x00, 0x00, 0x02}};
  CHECK_EQ(seed_to_field(seed), Field(0x01000002));
  CHECK_EQ(field_to_seed(Field(0x01000002), 32), seed);
}

TEST_CASE("hash32 separates contexts and inputs") {
  std::vector<Bytes> parts = {{1, 2}, {3}};
  Bytes h = hash32("ctx-a", parts);
  CHECK_EQ(h.size(), 32);
  CHECK_EQ(h, hash32("ctx-a", parts));
  CHECK_NE(h, hash32("ctx-b", parts));
  std::vector<Bytes> shifted = {{1}, {2, 3}};  // same flat bytes, different framing
  CHECK_NE(h, hash32("ctx-a", shifted));
}
