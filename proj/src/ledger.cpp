// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/ledger.hpp"

#include <stdexcept>

namespace pesagg {

const char* role_name(Role r) {
  switch (r) {
    case Role::kClient: return "client";
    case Role::kServer: return "server";
    case Role::kDecryptor: return "decryptor";
  }
  return "?";
}

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::kSetup: return "setup";
    case Phase::kReport: return "report";
    case Phase::kUnmask: return "unmask";
    case Phase::kDropRecovery: return "droprcv";
  }
  return "?";
}

const char* counter_name(Counter c) {
  switch (c) {
    case Counter::kPrfEvals: return "prf_evals";
    case Counter::kPrgElements: return "prg_elements";
    case Counter::kSymOps: return "sym_ops";
    case Counter::kShareOps: return "share_ops";
    case Counter::kRingOps: return "ring_ops";
    case Counter::kBytesSent: return "bytes_sent";
    case Counter::kBytesReceived: return "bytes_received";
  }
  return "?";
}

size_t CostLedger::idx(Role r, Phase p, Counter c) {
  return (static_cast<size_t>(r) * kPhaseCount + static_cast<size_t>(p)) * kCounterCount +
         static_cast<size_t>(c);
}

void CostLedger::add(Role r, Phase p, Counter c, int64_t n) {
  if (n < 0) throw std::invalid_argument("negative cost increment");
  cells_[idx(r, p, c)] += n;
}

int64_t CostLedger::get(Role r, Phase p, Counter c) const { return cells_[idx(r, p, c)]; }

void CostLedger::merge(const CostLedger& other) {
  for (size_t i = 0; i < cells_.size(); ++i) cells_[i] += other.cells_[i];
}

std::string CostLedger::csv_header() { return "round,role,phase,counter,value"; }

std::string CostLedger::to_csv(uint32_t round) const {
  std::string out;
  for (size_t r = 0; r < kRoleCount; ++r)
    for (size_t p = 0; p < kPhaseCount; ++p)
      for (size_t c = 0; c < kCounterCount; ++c) {
        out += std::to_string(round);
        out += ',';
        out += role_name(static_cast<Role>(r));
        out += ',';
        out += phase_name(static_cast<Phase>(p));
        out += ',';
        out += counter_name(static_cast<Counter>(c));
        out += ',';
        out += std::to_string(
            get(static_cast<Role>(r), static_cast<Phase>(p), static_cast<Counter>(c)));
        out += '\n';
      }
  return out;
}

int64_t CostLedger::phase_total(Phase p) const {
  int64_t sum = 0;
  for (size_t r = 0; r < kRoleCount; ++r)
    for (size_t c = 0; c < kCounterCount; ++c)
      sum += get(static_cast<Role>(r), p, static_cast<Counter>(c));
  return sum;
}

int64_t CostLedger::total(Counter c) const {
  int64_t sum = 0;
  for (size_t r = 0; r < kRoleCount; ++r)
    for (size_t p = 0; p < kPhaseCount; ++p)
      sum += get(static_cast<Role>(r), static_cast<Phase>(p), c);
  return sum;
}

}  // namespace pesagg
