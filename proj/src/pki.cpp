// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/pki.hpp"

namespace pesagg {

void PkiDirectory::register_user(uint32_t id, Bytes pub_a, Bytes pub_b) {
  auto [it, inserted] = entries_.try_emplace(id, Entry{std::move(pub_a), std::move(pub_b)});
  (void)it;
  if (!inserted)
    throw CryptoError("duplicate user id in key directory: " + std::to_string(id));
}

const PkiDirectory::Entry& PkiDirectory::lookup(uint32_t id) const {
  auto it = entries_.find(id);
  if (it == entries_.end())
    throw CryptoError("missing peer public key for user " + std::to_string(id));
  return it->second;
}

}  // namespace pesagg
