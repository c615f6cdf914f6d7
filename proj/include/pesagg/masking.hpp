// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_MASKING_HPP_
#define PESAGG_MASKING_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pesagg/crypto.hpp"
#include "pesagg/indicator.hpp"
#include "pesagg/ring.hpp"

namespace pesagg {

// Classic full-vector masking: x + PRG(individual) + sum of signed pairwise
// streams.  The sign convention (+ for the lexicographically smaller party)
// makes pairwise terms cancel in the server-side sum; the caller passes the
// sign it owes each neighbor.
RingVector classic_mask(const RingVector& x, const Seed& individual_seed,
                        std::span<const std::pair<Seed, int>> pairwise);

// Per-element layer: adds sum_u PRG(seed_u)[k] at exactly the flagged scope
// positions.  Cost is |flags| * |seeds| stream elements — independent of the
// dense vector length.
void add_element_masks(RingVector& x, const IndicatorSet& flags,
                       std::span<const Seed> decryptor_seeds, const MaskScope& scope);

// A decryptor's element-wise aggregate mask over the scope: at positions
// with at least t_prime contributors, the sum of that decryptor's pairwise
// streams across the contributors; below threshold the entry is withheld.
struct ElementMaskVector {
  std::vector<uint64_t> values;   // one per scope position
  std::vector<uint8_t> present;   // 1 = released, 0 = withheld

  bool operator==(const ElementMaskVector&) const = default;

  void encode_to(ByteWriter& w, uint32_t width_bits) const;
  static ElementMaskVector decode_from(ByteReader& r, size_t scope_size, uint32_t width_bits);
};

// client_seeds must be sorted by client id; contributors holds sorted client
// ids per scope position (from build_contributors).
ElementMaskVector element_masks(const std::vector<std::vector<uint32_t>>& contributors,
                                std::span<const std::pair<uint32_t, Seed>> client_seeds,
                                uint32_t t_prime, const MaskScope& scope,
                                uint32_t width_bits);

struct RevealedAggregate {
  RingVector values;              // full length; meaningful where disclosed
  std::vector<uint8_t> disclosed; // per vector index

  bool operator==(const RevealedAggregate&) const = default;
};

// Server-side unmasking: strips every client's individual stream over the
// full vector, then per scope position subtracts each surviving decryptor's
// element mask plus (when some decryptors dropped) the reconstructed masks
// those dropouts would have contributed.  A scope position is disclosed only
// when every surviving decryptor released it; out-of-scope positions are
// always disclosed.
RevealedAggregate unmask(const RingVector& aggregate, std::span<const Seed> individual_seeds,
                         std::span<const ElementMaskVector> emks, const MaskScope& scope,
                         const std::vector<uint64_t>* recovered_scope_masks);

// Ground-truth referee computed from the plaintext updates: the exact sums
// plus which positions the protocol is supposed to disclose.
struct OracleResult {
  RingVector plaintext_sum;
  std::vector<uint32_t> contributor_count;  // per scope position
  std::vector<uint8_t> expected_disclosed;  // per vector index
};

OracleResult reveal_oracle(std::span<const RingVector> updates, const MaskScope& scope,
                           uint32_t t_prime);

}  // namespace pesagg

#endif  // PESAGG_MASKING_HPP_
