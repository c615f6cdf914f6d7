// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/ring.hpp"

#include <cmath>

namespace pesagg {

uint64_t RingVector::width_mask(uint32_t width_bits) {
  if (width_bits != 8 && width_bits != 16 && width_bits != 32 && width_bits != 64)
    throw RingError("ring width must be 8, 16, 32, or 64 bits");
  return width_bits == 64 ? UINT64_MAX : ((1ull << width_bits) - 1);
}

RingVector::RingVector(size_t n, uint32_t width_bits)
    : width_(width_bits), mask_(width_mask(width_bits)), elems_(n, 0) {}

void RingVector::add_assign(const RingVector& other) {
  if (other.size() != size() || other.width_ != width_)
    throw RingError("ring vector shape mismatch");
  for (size_t k = 0; k < elems_.size(); ++k)
    elems_[k] = (elems_[k] + other.elems_[k]) & mask_;
}

void RingVector::sub_assign(const RingVector& other) {
  if (other.size() != size() || other.width_ != width_)
    throw RingError("ring vector shape mismatch");
  for (size_t k = 0; k < elems_.size(); ++k)
    elems_[k] = (elems_[k] - other.elems_[k]) & mask_;
}

Bytes RingVector::serialize() const {
  const size_t eb = width_ / 8;
  Bytes out(elems_.size() * eb);
  size_t pos = 0;
  for (uint64_t v : elems_)
    for (size_t i = 0; i < eb; ++i) out[pos++] = static_cast<uint8_t>(v >> (8 * i));
  return out;
}

RingVector RingVector::deserialize(std::span<const uint8_t> wire, size_t n,
                                   uint32_t width_bits) {
  RingVector rv(n, width_bits);
  const size_t eb = width_bits / 8;
  if (wire.size() != n * eb) throw RingError("ring vector wire length mismatch");
  size_t pos = 0;
  for (size_t k = 0; k < n; ++k) {
    uint64_t v = 0;
    for (size_t i = 0; i < eb; ++i) v |= static_cast<uint64_t>(wire[pos++]) << (8 * i);
    rv.elems_[k] = v & rv.mask_;
  }
  return rv;
}

RingVector quantize(std::span<const double> x, uint32_t frac_bits, uint32_t width_bits,
                    uint32_t max_contributors) {
  if (max_contributors == 0) throw RingError("contributor bound must be positive");
  RingVector out(x.size(), width_bits);
  const double scale = std::ldexp(1.0, static_cast<int>(frac_bits));
  // Headroom check: max_contributors aligned copies of the largest magnitude
  // must still fit in the signed half of the ring.
  const double headroom = std::ldexp(1.0, static_cast<int>(width_bits) - 1);
  for (size_t k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x[k])) throw RingError("quantize requires finite inputs");
    const double scaled = x[k] * scale;
    if (std::abs(scaled) * max_contributors >= headroom)
      throw RingError("quantized magnitude would overflow the aggregation ring");
    const int64_t q = std::llround(scaled);
    out.set(k, static_cast<uint64_t>(q));  // two's-complement wrap
  }
  return out;
}

std::vector<double> dequantize(const RingVector& v, uint32_t frac_bits) {
  std::vector<double> out(v.size());
  const double scale = std::ldexp(1.0, -static_cast<int>(frac_bits));
  const uint64_t half = 1ull << (v.width_bits() - 1);
  for (size_t k = 0; k < v.size(); ++k) {
    const uint64_t raw = v.at(k);
    if (raw >= half) {
      // Centered representative in [-2^(w-1), 2^(w-1)).
      const uint64_t mag = (~raw & v.mask()) + 1;
      out[k] = -static_cast<double>(mag) * scale;
    } else {
      out[k] = static_cast<double>(raw) * scale;
    }
  }
  return out;
}

std::vector<double> sparsify(std::span<const double> x, double threshold) {
  if (threshold < 0) throw RingError("sparsification threshold must be nonnegative");
  std::vector<double> out(x.begin(), x.end());
  for (double& v : out)
    if (std::abs(v) <= threshold) v = 0.0;
  return out;
}

}  // namespace pesagg
