// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_HARNESS_HPP_
#define PESAGG_HARNESS_HPP_

#include <optional>
#include <vector>

#include "pesagg/adversary.hpp"
#include "pesagg/workload.hpp"

namespace pesagg {

// A decryptor that goes silent: from phase `at` onward it answers nothing.
// kUnmask dropouts trigger seed recovery; kDropRecovery dropouts only thin
// the recovery quorum.  (Clients are one-shot reporters here, so decryptors
// are the only parties with anything to drop out of.)
struct DropoutEvent {
  uint32_t decryptor = 0;
  Phase at = Phase::kUnmask;

  bool operator==(const DropoutEvent&) const = default;
};

struct RoundConfig {
  ProtocolParams params;
  uint32_t population = 0;  // user universe; 0 means clients + decryptors
  uint64_t master_seed = 1;
  uint32_t round = 1;
  WorkloadConfig workload;
  AdversaryConfig adversary;
  std::vector<DropoutEvent> dropouts;
  // Shuffles message arrival order inside each phase.  Outcomes and the
  // canonical transcript must not change — that is the point.
  bool randomize_delivery = false;
  uint64_t delivery_seed = 0;
};

struct RoundResult {
  std::optional<RevealedAggregate> revealed;
  std::optional<AbortInfo> abort;
  std::vector<uint32_t> committee, clients, victims;
  OracleResult oracle;
  CostLedger ledger;
  Transcript transcript;
  ForgeReport forge;
  DisguisePlan disguise;
  HarvestResult harvest;
  LeakageReport leakage;

  bool completed() const { return revealed.has_value() && !abort.has_value(); }
};

// One full simulated round: deterministic in (params, seeds, workload,
// adversary, dropouts); delivery randomization must wash out entirely.
RoundResult run_round(const RoundConfig& cfg);

}  // namespace pesagg

#endif  // PESAGG_HARNESS_HPP_
