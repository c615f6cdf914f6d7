// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_PKI_HPP_
#define PESAGG_PKI_HPP_

#include <cstdint>
#include <map>

#include "pesagg/group.hpp"

namespace pesagg {

// Out-of-band directory of everyone's two public keys: the seed-agreement
// key (a) and the symmetric-channel key (b).  The simulated server never
// gets to tamper with it, which is what anchors authenticity.
class PkiDirectory {
 public:
  struct Entry {
    Bytes pub_a;
    Bytes pub_b;
  };

  void register_user(uint32_t id, Bytes pub_a, Bytes pub_b);
  const Entry& lookup(uint32_t id) const;
  bool has(uint32_t id) const { return entries_.count(id) != 0; }
  size_t size() const { return entries_.size(); }

 private:
  std::map<uint32_t, Entry> entries_;
};

}  // namespace pesagg

#endif  // PESAGG_PKI_HPP_
