// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/masking.hpp"

#include <algorithm>

namespace pesagg {

RingVector classic_mask(const RingVector& x, const Seed& individual_seed,
                        std::span<const std::pair<Seed, int>> pairwise) {
  RingVector out = x;
  PrgStream own(individual_seed, x.width_bits());
  for (size_t k = 0; k < out.size(); ++k) out.add_at(k, own.element(k));
  for (const auto& [seed, sign] : pairwise) {
    if (sign != 1 && sign != -1) throw RingError("pairwise mask sign must be +/-1");
    PrgStream stream(seed, x.width_bits());
    if (sign > 0)
      for (size_t k = 0; k < out.size(); ++k) out.add_at(k, stream.element(k));
    else
      for (size_t k = 0; k < out.size(); ++k) out.sub_at(k, stream.element(k));
  }
  return out;
}

void add_element_masks(RingVector& x, const IndicatorSet& flags,
                       std::span<const Seed> decryptor_seeds, const MaskScope& scope) {
  if (x.size() != scope.vector_len())
    throw RingError("per-element mask target does not match scope");
  for (const Seed& seed : decryptor_seeds) {
    PrgStream stream(seed, x.width_bits());
    for (uint32_t pos : flags.positions) {
      if (pos >= scope.size()) throw RingError("indicator position outside scope");
      const uint32_t k = scope.index_at(pos);
      x.add_at(k, stream.element(k));
    }
  }
}

void ElementMaskVector::encode_to(ByteWriter& w, uint32_t width_bits) const {
  if (values.size() != present.size()) throw RingError("element mask shape mismatch");
  w.varint(values.size());
  Bytes bitmap((values.size() + 7) / 8, 0);
  for (size_t i = 0; i < present.size(); ++i)
    if (present[i]) bitmap[i / 8] |= static_cast<uint8_t>(1u << (i % 8));
  w.raw(bitmap);
  const size_t eb = width_bits / 8;
  for (size_t i = 0; i < values.size(); ++i) {
    if (!present[i]) continue;
    for (size_t b = 0; b < eb; ++b) w.u8(static_cast<uint8_t>(values[i] >> (8 * b)));
  }
}

ElementMaskVector ElementMaskVector::decode_from(ByteReader& r, size_t scope_size,
                                                 uint32_t width_bits) {
  ElementMaskVector emk;
  uint64_t n = r.varint();
  if (n != scope_size) throw CodecError("element mask vector length mismatch");
  Bytes bitmap = r.raw((n + 7) / 8);
  emk.values.assign(n, 0);
  emk.present.assign(n, 0);
  const size_t eb = width_bits / 8;
  const uint64_t mask = RingVector::width_mask(width_bits);
  for (size_t i = 0; i < n; ++i) {
    if (!(bitmap[i / 8] >> (i % 8) & 1)) continue;
    emk.present[i] = 1;
    uint64_t v = 0;
    for (size_t b = 0; b < eb; ++b) v |= static_cast<uint64_t>(r.u8()) << (8 * b);
    emk.values[i] = v & mask;
  }
  return emk;
}

ElementMaskVector element_masks(const std::vector<std::vector<uint32_t>>& contributors,
                                std::span<const std::pair<uint32_t, Seed>> client_seeds,
                                uint32_t t_prime, const MaskScope& scope,
                                uint32_t width_bits) {
  if (contributors.size() != scope.size())
    throw RingError("contributor table does not match scope");
  const uint64_t mask = RingVector::width_mask(width_bits);

  // One stream per client, built lazily: indices into client_seeds.
  std::vector<std::unique_ptr<PrgStream>> streams(client_seeds.size());
  auto stream_for = [&](uint32_t client) -> PrgStream& {
    auto it = std::lower_bound(client_seeds.begin(), client_seeds.end(), client,
                               [](const auto& p, uint32_t c) { return p.first < c; });
    if (it == client_seeds.end() || it->first != client)
      throw RingError("contributor without a pairwise seed");
    const size_t idx = static_cast<size_t>(it - client_seeds.begin());
    if (!streams[idx])
      streams[idx] = std::make_unique<PrgStream>(it->second, width_bits);
    return *streams[idx];
  };

  ElementMaskVector emk;
  emk.values.assign(scope.size(), 0);
  emk.present.assign(scope.size(), 0);
  for (size_t pos = 0; pos < scope.size(); ++pos) {
    if (contributors[pos].size() < t_prime) continue;  // withheld below threshold
    const uint32_t k = scope.index_at(pos);
    uint64_t acc = 0;
    for (uint32_t client : contributors[pos]) acc = (acc + stream_for(client).element(k)) & mask;
    emk.values[pos] = acc;
    emk.present[pos] = 1;
  }
  return emk;
}

RevealedAggregate unmask(const RingVector& aggregate, std::span<const Seed> individual_seeds,
                         std::span<const ElementMaskVector> emks, const MaskScope& scope,
                         const std::vector<uint64_t>* recovered_scope_masks) {
  if (aggregate.size() != scope.vector_len())
    throw RingError("aggregate length does not match scope");
  if (recovered_scope_masks && recovered_scope_masks->size() != scope.size())
    throw RingError("recovered mask vector does not match scope");

  RevealedAggregate out;
  out.values = aggregate;
  out.disclosed.assign(aggregate.size(), 1);

  for (const Seed& seed : individual_seeds) {
    PrgStream stream(seed, aggregate.width_bits());
    for (size_t k = 0; k < out.values.size(); ++k) out.values.sub_at(k, stream.element(k));
  }

  for (const ElementMaskVector& emk : emks)
    if (emk.values.size() != scope.size()) throw RingError("element mask shape mismatch");

  for (size_t pos = 0; pos < scope.size(); ++pos) {
    const uint32_t k = scope.index_at(pos);
    bool complete = true;
    for (const ElementMaskVector& emk : emks) {
      if (!emk.present[pos]) {
        complete = false;
        break;
      }
    }
    if (!complete) {
      // Some surviving decryptor withheld this position: below the
      // disclosure threshold, so the masked residual must stay hidden.
      out.disclosed[k] = 0;
      out.values.set(k, 0);
      continue;
    }
    for (const ElementMaskVector& emk : emks) out.values.sub_at(k, emk.values[pos]);
    if (recovered_scope_masks) out.values.sub_at(k, (*recovered_scope_masks)[pos]);
  }
  return out;
}

OracleResult reveal_oracle(std::span<const RingVector> updates, const MaskScope& scope,
                           uint32_t t_prime) {
  if (updates.empty()) throw RingError("oracle requires at least one update");
  OracleResult res;
  res.plaintext_sum = RingVector(updates[0].size(), updates[0].width_bits());
  for (const RingVector& u : updates) res.plaintext_sum.add_assign(u);

  res.contributor_count.assign(scope.size(), 0);
  for (const RingVector& u : updates)
    for (size_t pos = 0; pos < scope.size(); ++pos)
      if (u.at(scope.index_at(pos)) != 0) ++res.contributor_count[pos];

  res.expected_disclosed.assign(updates[0].size(), 1);
  for (size_t pos = 0; pos < scope.size(); ++pos)
    if (res.contributor_count[pos] < t_prime)
      res.expected_disclosed[scope.index_at(pos)] = 0;
  return res;
}

}  // namespace pesagg
