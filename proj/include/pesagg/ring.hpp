// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_RING_HPP_
#define PESAGG_RING_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pesagg/bytes.hpp"

namespace pesagg {

struct RingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense vector over Z_{2^w}, w in {8,16,32,64}.  Elements live in uint64_t
// and every mutation re-wraps, so overflow is ordinary modular wraparound
// rather than UB regardless of width.
class RingVector {
 public:
  RingVector() = default;
  RingVector(size_t n, uint32_t width_bits);

  static uint64_t width_mask(uint32_t width_bits);

  size_t size() const { return elems_.size(); }
  uint32_t width_bits() const { return width_; }
  uint64_t mask() const { return mask_; }

  uint64_t at(size_t k) const { return elems_[k]; }
  void set(size_t k, uint64_t v) { elems_[k] = v & mask_; }
  void add_at(size_t k, uint64_t v) { elems_[k] = (elems_[k] + v) & mask_; }
  void sub_at(size_t k, uint64_t v) { elems_[k] = (elems_[k] - v) & mask_; }

  void add_assign(const RingVector& other);
  void sub_assign(const RingVector& other);

  bool operator==(const RingVector&) const = default;

  // w/8 bytes per element, little-endian, no header.
  Bytes serialize() const;
  static RingVector deserialize(std::span<const uint8_t> wire, size_t n, uint32_t width_bits);

 private:
  uint32_t width_ = 0;
  uint64_t mask_ = 0;
  std::vector<uint64_t> elems_;
};

// Fixed-point embedding of reals into the ring: q = round(x * 2^frac_bits),
// encoded two's-complement.  The guard requires |q| * max_contributors to
// stay below 2^(w-1) so no honest aggregate can wrap.
RingVector quantize(std::span<const double> x, uint32_t frac_bits, uint32_t width_bits,
                    uint32_t max_contributors);
std::vector<double> dequantize(const RingVector& v, uint32_t frac_bits);

// Zero out entries with |x| <= threshold; the sparsification step applied
// before indicator construction.
std::vector<double> sparsify(std::span<const double> x, double threshold);

}  // namespace pesagg

#endif  // PESAGG_RING_HPP_
