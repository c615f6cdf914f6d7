// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_SHAMIR_HPP_
#define PESAGG_SHAMIR_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <vector>

#include "pesagg/crypto.hpp"

namespace pesagg {

using Field = boost::multiprecision::cpp_int;

struct ShareError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One evaluation of the sharing polynomial.  `holder` is the 1-based
// evaluation point (position of the holding decryptor in the canonical
// ordering of the committee, plus one).
struct SecretShare {
  uint32_t holder = 0;
  Field value;

  bool operator==(const SecretShare&) const = default;
};

// Split `secret` into `count` shares with reconstruction threshold `ell`
// (degree ell-1 polynomial, uniform coefficients).  Requires
// 1 <= ell <= count < p and 0 <= secret < p.
std::vector<SecretShare> ss_share(const Field& secret, uint32_t ell, uint32_t count,
                                  const Field& prime, DetRng& rng);

// Deterministic variant with caller-chosen coefficients a_1..a_{ell-1};
// exists so tests can pin exact polynomials.
std::vector<SecretShare> ss_share_with_coeffs(const Field& secret,
                                              std::span<const Field> coeffs,
                                              uint32_t count, const Field& prime);

// Lagrange interpolation at zero over any >= ell shares with distinct
// holders.  Throws ShareError when given too few or duplicate shares.
Field ss_recon(std::span<const SecretShare> shares, uint32_t ell, const Field& prime);

// Seeds ride through the share field as big-endian integers; the field
// prime is chosen strictly above 2^kappa so the embedding never wraps.
Field seed_to_field(const Seed& seed);
Seed field_to_seed(const Field& value, uint32_t kappa_bits);

// Smallest prime from a fixed table that exceeds 2^kappa.
Field share_field_prime(uint32_t kappa_bits);

// Share wire form: holder as u32, value as fixed-width big-endian.
Bytes encode_share(const SecretShare& share, const Field& prime);
SecretShare decode_share(std::span<const uint8_t> wire, const Field& prime);
size_t share_wire_size(const Field& prime);

}  // namespace pesagg

#endif  // PESAGG_SHAMIR_HPP_
