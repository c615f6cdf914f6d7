// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/indicator.hpp"

#include <algorithm>

namespace pesagg {

MaskScope::MaskScope(std::vector<uint32_t> indices, size_t vector_len)
    : indices_(std::move(indices)), vector_len_(vector_len) {
  if (!std::is_sorted(indices_.begin(), indices_.end()) ||
      std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw RingError("mask scope indices must be sorted and unique");
  if (!indices_.empty() && indices_.back() >= vector_len_)
    throw RingError("mask scope index exceeds vector length");
  position_.assign(vector_len_, 0);
  for (size_t pos = 0; pos < indices_.size(); ++pos)
    position_[indices_[pos]] = static_cast<uint32_t>(pos) + 1;
}

MaskScope MaskScope::prefix(size_t scope_len, size_t vector_len) {
  if (scope_len > vector_len) throw RingError("mask scope larger than vector");
  std::vector<uint32_t> idx(scope_len);
  for (size_t i = 0; i < scope_len; ++i) idx[i] = static_cast<uint32_t>(i);
  return MaskScope(std::move(idx), vector_len);
}

bool MaskScope::contains(uint32_t index) const {
  return index < position_.size() && position_[index] != 0;
}

std::optional<uint32_t> MaskScope::position_of(uint32_t index) const {
  if (index >= position_.size() || position_[index] == 0) return std::nullopt;
  return position_[index] - 1;
}

bool IndicatorSet::contains(uint32_t pos) const {
  return std::binary_search(positions.begin(), positions.end(), pos);
}

void IndicatorSet::encode_to(ByteWriter& w) const {
  w.varint(positions.size());
  uint32_t prev = 0;
  for (size_t i = 0; i < positions.size(); ++i) {
    w.varint(i == 0 ? positions[0] : positions[i] - prev);
    prev = positions[i];
  }
}

Bytes IndicatorSet::encode() const {
  ByteWriter w;
  encode_to(w);
  return w.take();
}

IndicatorSet IndicatorSet::decode_from(ByteReader& r, size_t scope_size) {
  IndicatorSet set;
  uint64_t n = r.varint();
  if (n > scope_size) throw CodecError("indicator set larger than scope");
  set.positions.reserve(n);
  uint64_t prev = 0;
  for (uint64_t i = 0; i < n; ++i) {
    uint64_t delta = r.varint();
    if (i > 0 && delta == 0) throw CodecError("indicator positions must be strictly increasing");
    prev = i == 0 ? delta : prev + delta;
    if (prev >= scope_size) throw CodecError("indicator position outside scope");
    set.positions.push_back(static_cast<uint32_t>(prev));
  }
  return set;
}

IndicatorSet IndicatorSet::decode(std::span<const uint8_t> wire, size_t scope_size) {
  ByteReader r(wire);
  IndicatorSet set = decode_from(r, scope_size);
  r.expect_done();
  return set;
}

IndicatorSet indicator(const RingVector& x, const MaskScope& scope) {
  if (x.size() != scope.vector_len())
    throw RingError("indicator input length does not match scope");
  IndicatorSet set;
  for (size_t pos = 0; pos < scope.size(); ++pos)
    if (x.at(scope.index_at(pos)) != 0)
      set.positions.push_back(static_cast<uint32_t>(pos));
  return set;
}

std::vector<std::vector<uint32_t>> build_contributors(
    std::span<const std::pair<uint32_t, IndicatorSet>> indicators, const MaskScope& scope) {
  std::vector<std::vector<uint32_t>> table(scope.size());
  for (const auto& [client, set] : indicators)
    for (uint32_t pos : set.positions) {
      if (pos >= scope.size()) throw RingError("indicator position outside scope");
      table[pos].push_back(client);
    }
  for (auto& row : table) std::sort(row.begin(), row.end());
  return table;
}

}  // namespace pesagg
