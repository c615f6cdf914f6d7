// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_ROLES_HPP_
#define PESAGG_ROLES_HPP_

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pesagg/ledger.hpp"
#include "pesagg/messages.hpp"
#include "pesagg/params.hpp"
#include "pesagg/pki.hpp"

namespace pesagg {

struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Public, deterministic selection from shared randomness.  Every party can
// recompute these locally, so none of them are protocol messages.

// Lowest-ranked `count` users under a keyed hash of the public randomness.
std::vector<uint32_t> select_committee(const Bytes& public_r, uint32_t n_users,
                                       uint32_t count);
// Same ranking trick over the remaining users.
std::vector<uint32_t> select_clients(const Bytes& public_r, uint32_t n_users, uint32_t count,
                                     std::span<const uint32_t> committee);
// Pairwise-mask partners: every client picks its `degree` lowest-ranked
// edges, then sets are symmetrized (j in A_i iff i in A_j), so the result
// has at least `degree` partners per client.  Returned in `clients` order.
std::vector<std::vector<uint32_t>> neighbor_sets(const Bytes& public_r, uint32_t round,
                                                 std::span<const uint32_t> clients,
                                                 uint32_t degree);

// ---------------------------------------------------------------------------
// Per-party key material.

struct PairwiseKeys {
  Seed seed;     // per-round PRF output of the DH secret from the a-keys
  Bytes sym_key; // authenticated-channel key from the b-keys
};

struct ClientState {
  uint32_t id = 0;
  uint32_t round = 0;
  std::vector<uint32_t> neighbors;           // other clients, ascending
  std::map<uint32_t, Seed> neighbor_seeds;   // per-round pairwise mask seeds
  std::vector<uint32_t> committee;           // decryptor ids, ascending
  std::vector<PairwiseKeys> committee_keys;  // aligned with committee
  Seed individual_seed;                      // drawn fresh in client_report
};

struct DecryptorState {
  uint32_t id = 0;
  uint32_t committee_index = 0;  // position in the ascending committee list
  uint32_t round = 0;
  std::vector<uint32_t> committee;
  std::vector<uint32_t> clients;             // ascending
  std::vector<PairwiseKeys> client_keys;     // aligned with clients
  DecryptorForwardMsg forward;               // retained for the recovery phase
};

// Derives a client's round state: pairwise seeds with neighbors via the
// a-keys, plus seeds and channel keys toward every committee member.
ClientState client_setup(uint32_t id, const KeyPair& key_a, const KeyPair& key_b,
                         uint32_t round, std::span<const uint32_t> neighbors,
                         std::span<const uint32_t> committee, const PkiDirectory& pki,
                         const DhGroup& group, const ProtocolParams& params,
                         CostScope cost);

DecryptorState decryptor_setup(uint32_t id, const KeyPair& key_a, const KeyPair& key_b,
                               uint32_t round, std::span<const uint32_t> committee,
                               std::span<const uint32_t> clients, const PkiDirectory& pki,
                               const DhGroup& group, const ProtocolParams& params,
                               CostScope cost);

// ---------------------------------------------------------------------------
// Report phase.

// Masks the update (per-element layer at flagged positions, classic layer
// over the full vector), shares the individual seed and every committee
// pairwise seed, and encrypts each share toward its holder.
ClientReportMsg client_report(ClientState& st, const RingVector& update,
                              const MaskScope& scope, const ProtocolParams& params,
                              DetRng& rng, CostScope cost);

struct ServerState {
  ProtocolParams params;
  MaskScope scope;
  uint32_t round = 0;
  std::vector<uint32_t> clients;
  std::vector<uint32_t> committee;
  RingVector aggregate;
  // Indicator sets the server forwards; under an indicator-forging server
  // these are the inflated ones, and they also drive recovery-phase mask
  // reconstruction so the server stays self-consistent.
  std::vector<std::pair<uint32_t, IndicatorSet>> indicators;
  std::vector<ClientReportMsg> reports;  // aligned with clients
  std::vector<uint32_t> unmask_responders;          // committee ids, ascending arrival
  std::vector<ElementMaskVector> emks;              // aligned with unmask_responders
  std::map<uint32_t, std::vector<SecretShare>> individual_shares;  // client -> shares
  std::vector<Seed> recon_individual_seeds;         // filled by server_unmask
  // Victim -> that victim's pairwise seeds by client (filled by
  // server_recover).  Recovery hands the server exactly this material, so
  // retaining it is what makes the post-round knowledge audit honest.
  std::map<uint32_t, std::vector<Seed>> recovered_pair_seeds;
};

ServerState server_init(const ProtocolParams& params, const MaskScope& scope, uint32_t round,
                        std::vector<uint32_t> clients, std::vector<uint32_t> committee);

// Ingests all client reports (exactly one per selected client) and builds
// the masked aggregate.
void server_collect(ServerState& st, std::span<const std::pair<uint32_t, ClientReportMsg>> reports,
                    CostScope cost);

// The per-decryptor slice: every client's indicator set plus the ciphertext
// column addressed to that committee member.
DecryptorForwardMsg server_forward_for(const ServerState& st, uint32_t committee_index);

// ---------------------------------------------------------------------------
// Unmask phase.

// Builds the contributor table from the forwarded indicators, emits the
// element-wise mask vector (withholding below-threshold positions), and
// returns the plaintext shares of every client's individual seed.
UnmaskResponseMsg decryptor_unmask(DecryptorState& st, const DecryptorForwardMsg& fwd,
                                   const MaskScope& scope, const ProtocolParams& params,
                                   CostScope cost);

void server_receive_unmask(ServerState& st, uint32_t decryptor_id,
                           const UnmaskResponseMsg& resp, CostScope cost);

struct AbortInfo {
  Phase phase = Phase::kUnmask;
  std::string cause;
};

struct UnmaskOutcome {
  std::optional<RevealedAggregate> revealed;  // set when no decryptor dropped
  std::optional<AbortInfo> abort;
  std::vector<uint32_t> victims;  // dropped committee ids needing recovery
};

// Either completes the round (full committee responded), aborts (fewer than
// ell responses), or names the dropouts for the recovery phase.
UnmaskOutcome server_unmask(ServerState& st, CostScope cost);

// ---------------------------------------------------------------------------
// Dropout recovery phase.

// Validates the dropout claim (committee membership, size at most
// delta_max), then releases this decryptor's share of every listed victim's
// pairwise seed with every client, decrypted from the retained column.
std::variant<RecoveryResponseMsg, RecoveryRefusalMsg> decryptor_recover(
    DecryptorState& st, const RecoveryRequestMsg& req, const ProtocolParams& params,
    CostScope cost);

struct RecoveryOutcome {
  std::optional<RevealedAggregate> revealed;
  std::optional<AbortInfo> abort;
};

// Reconstructs every (client, victim) pairwise seed from the returned
// shares, rebuilds the masks the victims never applied, and finishes
// unmasking.  Any honest refusal poisons the round.
RecoveryOutcome server_recover(
    ServerState& st, std::span<const uint32_t> victims,
    std::span<const std::pair<uint32_t, RecoveryResponseMsg>> responses,
    std::span<const std::pair<uint32_t, RecoveryRefusalMsg>> refusals, CostScope cost);

}  // namespace pesagg

#endif  // PESAGG_ROLES_HPP_
