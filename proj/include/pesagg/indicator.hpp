// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_INDICATOR_HPP_
#define PESAGG_INDICATOR_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pesagg/bytes.hpp"
#include "pesagg/ring.hpp"

namespace pesagg {

// The subset of vector positions covered by per-element masking.  Indices
// outside the scope are aggregated the classic way (always revealed), so
// everything per-element — indicators, element masks, disclosure decisions —
// is expressed in scope positions.
class MaskScope {
 public:
  MaskScope() = default;
  explicit MaskScope(std::vector<uint32_t> indices, size_t vector_len);
  static MaskScope prefix(size_t scope_len, size_t vector_len);

  size_t size() const { return indices_.size(); }
  size_t vector_len() const { return vector_len_; }
  const std::vector<uint32_t>& indices() const { return indices_; }
  uint32_t index_at(size_t pos) const { return indices_[pos]; }

  bool contains(uint32_t index) const;
  // Scope position of a vector index, if covered.
  std::optional<uint32_t> position_of(uint32_t index) const;

  bool operator==(const MaskScope&) const = default;

 private:
  std::vector<uint32_t> indices_;  // sorted, unique
  std::vector<uint32_t> position_;  // vector index -> position + 1, 0 = absent
  size_t vector_len_ = 0;
};

// A client's non-zero flags restricted to the mask scope, held as sorted
// scope positions.
struct IndicatorSet {
  std::vector<uint32_t> positions;

  bool contains(uint32_t pos) const;
  size_t size() const { return positions.size(); }
  bool operator==(const IndicatorSet&) const = default;

  // varint count, then varint deltas between consecutive positions.
  Bytes encode() const;
  static IndicatorSet decode(std::span<const uint8_t> wire, size_t scope_size);
  void encode_to(ByteWriter& w) const;
  static IndicatorSet decode_from(ByteReader& r, size_t scope_size);
};

// B_i = positions inside the scope where the quantized update is non-zero.
IndicatorSet indicator(const RingVector& x, const MaskScope& scope);

// Per-position contributor lists: table[pos] = sorted client ids whose
// indicator covers pos.  This is the |C[k]| structure both the server and
// every decryptor derive from the forwarded indicator sets.
std::vector<std::vector<uint32_t>> build_contributors(
    std::span<const std::pair<uint32_t, IndicatorSet>> indicators, const MaskScope& scope);

}  // namespace pesagg

#endif  // PESAGG_INDICATOR_HPP_
