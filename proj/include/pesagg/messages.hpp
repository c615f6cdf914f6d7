// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_MESSAGES_HPP_
#define PESAGG_MESSAGES_HPP_

#include <cstdint>
#include <vector>

#include "pesagg/crypto.hpp"
#include "pesagg/indicator.hpp"
#include "pesagg/masking.hpp"
#include "pesagg/shamir.hpp"

namespace pesagg {

// The aggregation server is not a user; it routes under a reserved id.
inline constexpr uint32_t kServerId = 0xffffffff;

enum class MsgType : uint8_t {
  kClientReport = 1,
  kDecryptorForward = 2,
  kUnmaskResponse = 3,
  kRecoveryRequest = 4,
  kRecoveryResponse = 5,
  kRecoveryRefusal = 6,
};

// Shape information decoders need; everything in it is public protocol
// configuration.
struct WireContext {
  uint32_t vector_len = 0;
  uint32_t ring_width = 0;
  uint32_t scope_size = 0;
  uint32_t decryptors = 0;
  Field share_prime;
};

// Client -> server, Report phase.  Share ciphertexts are indexed by the
// holder's position in the canonical committee ordering; pair_share_cts[u][v]
// protects the share (held by u) of the seed this client pairs with v.
struct ClientReportMsg {
  RingVector masked;
  IndicatorSet flags;
  std::vector<Ciphertext> individual_share_cts;
  std::vector<std::vector<Ciphertext>> pair_share_cts;

  Bytes encode() const;
  static ClientReportMsg decode(std::span<const uint8_t> wire, const WireContext& ctx);
  bool operator==(const ClientReportMsg&) const = default;
};

// The slice of one client's report that a single decryptor needs.
struct ForwardedReport {
  uint32_t client = 0;
  IndicatorSet flags;
  Ciphertext individual_ct;
  std::vector<Ciphertext> pair_cts;  // by seed owner, committee order

  bool operator==(const ForwardedReport&) const = default;
};

// Server -> decryptor, Report phase.
struct DecryptorForwardMsg {
  std::vector<ForwardedReport> reports;  // ascending client id

  Bytes encode(uint32_t scope_size) const;
  static DecryptorForwardMsg decode(std::span<const uint8_t> wire, const WireContext& ctx);
  bool operator==(const DecryptorForwardMsg&) const = default;
};

struct ShareEntry {
  uint32_t client = 0;
  SecretShare share;

  bool operator==(const ShareEntry&) const = default;
};

// Decryptor -> server, Unmask phase: the element-wise mask vector plus this
// decryptor's plaintext shares of every client's individual seed.
struct UnmaskResponseMsg {
  ElementMaskVector emk;
  std::vector<ShareEntry> individual_shares;  // ascending client id

  Bytes encode(uint32_t ring_width, const Field& share_prime) const;
  static UnmaskResponseMsg decode(std::span<const uint8_t> wire, const WireContext& ctx);
  bool operator==(const UnmaskResponseMsg&) const = default;
};

// Server -> decryptor, DropRecovery phase: the dropout claim.  The share
// ciphertexts were already delivered in the forward message, so the claim
// itself is just a victim list.
struct RecoveryRequestMsg {
  std::vector<uint32_t> victims;  // ascending decryptor id

  Bytes encode() const;
  static RecoveryRequestMsg decode(std::span<const uint8_t> wire);
  bool operator==(const RecoveryRequestMsg&) const = default;
};

struct VictimShares {
  uint32_t victim = 0;
  std::vector<ShareEntry> shares;  // ascending client id

  bool operator==(const VictimShares&) const = default;
};

// Decryptor -> server, DropRecovery phase.
struct RecoveryResponseMsg {
  std::vector<VictimShares> victims;  // request order

  Bytes encode(const Field& share_prime) const;
  static RecoveryResponseMsg decode(std::span<const uint8_t> wire, const WireContext& ctx);
  bool operator==(const RecoveryResponseMsg&) const = default;
};

enum class RefusalCause : uint8_t {
  kOversizedDropoutList = 0,
  kUnknownVictim = 1,
  // The claim lists the recipient itself: a live decryptor reading its own
  // id in a dropout list holds proof the server is lying.
  kSelfVictim = 2,
};

const char* refusal_cause_name(RefusalCause c);

struct RecoveryRefusalMsg {
  RefusalCause cause = RefusalCause::kOversizedDropoutList;

  Bytes encode() const;
  static RecoveryRefusalMsg decode(std::span<const uint8_t> wire);
  bool operator==(const RecoveryRefusalMsg&) const = default;
};

struct Envelope {
  MsgType type = MsgType::kClientReport;
  uint32_t round = 0;
  uint32_t sender = 0;
  uint32_t receiver = 0;
  Bytes body;

  Bytes encode() const;
  static Envelope decode_from(ByteReader& r);
  size_t wire_size() const { return 13 + 4 + body.size(); }
  bool operator==(const Envelope&) const = default;
};

// Full message log of a round in canonical order; byte-identical transcripts
// are the replay/determinism contract.
struct Transcript {
  std::vector<Envelope> messages;

  Bytes encode() const;  // magic, version, then length-prefixed envelopes
  static Transcript decode(std::span<const uint8_t> wire);
  bool operator==(const Transcript&) const = default;
};

}  // namespace pesagg

#endif  // PESAGG_MESSAGES_HPP_
