// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_LEDGER_HPP_
#define PESAGG_LEDGER_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pesagg {

enum class Role : uint8_t { kClient = 0, kServer = 1, kDecryptor = 2 };
enum class Phase : uint8_t { kSetup = 0, kReport = 1, kUnmask = 2, kDropRecovery = 3 };
enum class Counter : uint8_t {
  kPrfEvals = 0,
  kPrgElements = 1,
  kSymOps = 2,
  kShareOps = 3,
  kRingOps = 4,
  kBytesSent = 5,
  kBytesReceived = 6,
};

const char* role_name(Role r);
const char* phase_name(Phase p);
const char* counter_name(Counter c);

inline constexpr size_t kRoleCount = 3;
inline constexpr size_t kPhaseCount = 4;
inline constexpr size_t kCounterCount = 7;

// Aggregated operation counts per (role, phase).  Pure accounting: the
// protocol code reports work as it happens and nothing here feeds back into
// protocol behavior.
class CostLedger {
 public:
  CostLedger() { cells_.fill(0); }

  void add(Role r, Phase p, Counter c, int64_t n);
  int64_t get(Role r, Phase p, Counter c) const;
  void merge(const CostLedger& other);

  bool operator==(const CostLedger&) const = default;

  // One row per (role, phase, counter) in fixed enumeration order.
  std::string to_csv(uint32_t round) const;
  static std::string csv_header();

  int64_t phase_total(Phase p) const;
  int64_t total(Counter c) const;

 private:
  static size_t idx(Role r, Phase p, Counter c);
  std::array<int64_t, kRoleCount * kPhaseCount * kCounterCount> cells_;
};

// Handle the role functions use to report work against a fixed (role, phase)
// cell; null ledger means "don't count" (used by oracle-style replays).
class CostScope {
 public:
  CostScope() = default;
  CostScope(CostLedger* ledger, Role role, Phase phase)
      : ledger_(ledger), role_(role), phase_(phase) {}

  void add(Counter c, int64_t n) const {
    if (ledger_) ledger_->add(role_, phase_, c, n);
  }

 private:
  CostLedger* ledger_ = nullptr;
  Role role_ = Role::kClient;
  Phase phase_ = Phase::kSetup;
};

}  // namespace pesagg

#endif  // PESAGG_LEDGER_HPP_
