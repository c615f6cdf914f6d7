// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_RNG_HPP_
#define PESAGG_RNG_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pesagg {

// Deterministic stream RNG.  Every random choice in the simulator comes from
// one of these, keyed by (master seed, domain label, lane, slot), so any
// party's randomness can be re-derived independently of scheduling order and
// independently of how much randomness other parties consumed.
class DetRng {
 public:
  DetRng(uint64_t master, std::string_view domain, uint64_t lane = 0,
         uint64_t slot = 0);

  uint64_t next_u64();
  uint32_t next_u32() { return static_cast<uint32_t>(next_u64()); }
  // Unbiased draw from [0, bound) via rejection sampling.  bound > 0.
  uint64_t uniform_below(uint64_t bound);
  // [0, 1) with 53 bits of precision.
  double unit_real();
  double gaussian();
  void fill(std::span<uint8_t> out);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  void refill();

  std::array<uint8_t, 32> key_;
  std::array<uint8_t, 1024> buf_;
  size_t pos_ = 0;
  uint64_t chunk_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace pesagg

#endif  // PESAGG_RNG_HPP_
