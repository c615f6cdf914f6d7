// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_ADVERSARY_HPP_
#define PESAGG_ADVERSARY_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pesagg/roles.hpp"

namespace pesagg {

// Static corruption for one round: the server is always assumed malicious
// when any behavior below is enabled, and the listed users feed it their
// whole view.
struct AdversaryConfig {
  std::vector<uint32_t> colluding_clients;     // subset of the selected clients
  std::vector<uint32_t> colluding_decryptors;  // subset of the committee

  // Server inflates contributor lists at sub-threshold positions to exactly
  // the disclosure threshold before forwarding.
  bool forge_indicators = false;
  uint32_t forge_max_positions = 1;

  // Server falsely reports live decryptors as dropped, tailoring a
  // different victim list per honest responder to harvest seed shares.
  bool disguise_dropouts = false;

  // Colluding decryptors withhold their element-mask vectors entirely.
  bool withhold_element_masks = false;

  bool enabled() const {
    return forge_indicators || disguise_dropouts || withhold_element_masks ||
           !colluding_clients.empty() || !colluding_decryptors.empty();
  }
  bool operator==(const AdversaryConfig&) const = default;
};

// ---------------------------------------------------------------------------
// Indicator forging.

struct ForgedPosition {
  uint32_t pos = 0;          // scope position
  uint32_t true_count = 0;   // contributors before inflation
  std::vector<uint32_t> forged_colluding;  // client ids added with known seeds
  std::vector<uint32_t> forged_honest;     // client ids added blind
};

struct ForgeReport {
  std::vector<ForgedPosition> positions;
};

// Mutates the server's indicator table: at up to max_positions scope
// positions with 0 < contributors < t_prime, adds forged contributors until
// the count reads exactly t_prime.  Colluding clients are used first (their
// mask streams can be corrected away later); honest ids fill the remainder
// and leave residuals nobody can remove.
ForgeReport forge_indicators(ServerState& st, std::span<const uint32_t> colluding_clients,
                             uint32_t max_positions);

// ---------------------------------------------------------------------------
// Disguised-dropout share harvesting.

struct DisguiseRequest {
  uint32_t responder = 0;  // honest decryptor the request goes to
  RecoveryRequestMsg request;
};

struct DisguisePlan {
  std::vector<uint32_t> targets;          // honest decryptors under attack
  std::vector<DisguiseRequest> requests;  // at most one per honest responder
};

// Plans the biggest harvest a lying server can run in one round: every
// request stays under delta_max, never names its recipient, and each target
// needs ell minus |colluders| honest shares.  Capacity, not cleverness, is
// what limits the target list.
DisguisePlan plan_disguised_dropouts(const ServerState& st,
                                     std::span<const uint32_t> colluding_decryptors,
                                     const ProtocolParams& params);

struct HarvestResult {
  // Fully reconstructed seed sets: victim -> seeds aligned with the client
  // list.  Partial targets (some client seed short of ell shares) are not
  // included.
  std::map<uint32_t, std::vector<Seed>> recovered;
  uint64_t honest_share_units = 0;  // (victim, client) entries honest responders released
  uint32_t refusals = 0;
};

// Pools the responses with the colluders' self-decrypted share columns and
// reconstructs whatever reaches ell distinct holders.
HarvestResult harvest_disguised(const ServerState& st, const DisguisePlan& plan,
                                std::span<const std::pair<uint32_t, RecoveryResponseMsg>> responses,
                                std::span<const std::pair<uint32_t, RecoveryRefusalMsg>> refusals,
                                std::span<const DecryptorState> committee_states,
                                std::span<const uint32_t> colluding_decryptors,
                                const ProtocolParams& params);

// ---------------------------------------------------------------------------
// Post-round knowledge audit.

// Everything the adversary coalition holds after the round, spelled out so
// the leakage measurement is an explicit closure over it rather than an
// estimate: the server's collected state, colluders' private states, and
// any seed sets obtained through (real or disguised) recovery.
struct AdversaryView {
  const ServerState* server = nullptr;
  std::span<const ClientState> client_states;        // aligned with server->clients
  std::span<const DecryptorState> decryptor_states;  // aligned with committee
  std::span<const RingVector> updates;               // true plaintexts (referee only)
  std::span<const uint32_t> colluding_clients;
  std::span<const uint32_t> colluding_decryptors;
  const std::map<uint32_t, std::vector<Seed>>* harvested_seeds = nullptr;
};

struct LeakageReport {
  // Per scope position.
  std::vector<uint8_t> view_defined;  // adversary can compute some value
  std::vector<uint64_t> view;         // its honest-sum estimate where defined
  std::vector<uint8_t> leaked;        // defined, correct, and >= 1 honest contributor
  // Positions with at least one but fewer than t honest contributors: the
  // ones the protocol owes privacy to, and how many of them leaked anyway.
  // (t, not t_prime: colluders padding a count past t_prime is budgeted
  // for, and still guarantees >= t honest contributors behind a release.)
  uint32_t below_threshold_total = 0;
  uint32_t below_threshold_leaked = 0;
};

// Computes the adversary's best possible per-position estimate of the
// honest contribution sum, using only material the coalition actually
// holds, then grades it against ground truth.
LeakageReport measure_leakage(const AdversaryView& v, const MaskScope& scope,
                              const ProtocolParams& params);

}  // namespace pesagg

#endif  // PESAGG_ADVERSARY_HPP_
