// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pesagg/ledger.hpp"
#include "pesagg/messages.hpp"
#include "pesagg/pki.hpp"
#include "pesagg/rng.hpp"

using namespace pesagg;

namespace {

WireContext small_ctx() {
  WireContext ctx;
  ctx.vector_len = 4;
  ctx.ring_width = 32;
  ctx.scope_size = 2;
  ctx.decryptors = 2;
  ctx.share_prime = share_field_prime(128);
  return ctx;
}

Ciphertext make_ct(uint8_t tag, std::initializer_list<uint8_t> pt) {
  Bytes key = sym_key_from_secret(Bytes{tag});
  return sym_encrypt(key, NonceParts{.round = 1, .label = tag, .sender = 9}, Bytes(pt));
}

ClientReportMsg make_report(const WireContext& ctx) {
  ClientReportMsg msg;
  msg.masked = RingVector(ctx.vector_len, ctx.ring_width);
  msg.masked.set(0, 7);
  msg.masked.set(3, 0xdeadbeef);
  msg.flags.positions = {0, 1};
  for (uint32_t u = 0; u < ctx.decryptors; ++u) {
    msg.individual_share_cts.push_back(make_ct(static_cast<uint8_t>(u), {1, 2, 3}));
    msg.pair_share_cts.push_back({});
    for (uint32_t v = 0; v < ctx.decryptors; ++v)
      msg.pair_share_cts[u].push_back(make_ct(static_cast<uint8_t>(10 + u * 2 + v), {4, 5}));
  }
  return msg;
}

}  // namespace

TEST_CASE("envelope encoding is byte-stable") {
  Envelope env{MsgType::kClientReport, 2, 3, kServerId, Bytes{0xaa}};
  Bytes wire = env.encode();
  CHECK_EQ(to_hex(wire), "010200000003000000ffffffff01000000aa");
  CHECK_EQ(wire.size(), env.wire_size());
  ByteReader r(wire);
  CHECK_EQ(Envelope::decode_from(r), env);
  CHECK(r.done());

  Bytes bad = wire;
  bad[0] = 9;  // unknown type tag
  ByteReader br(bad);
  CHECK_THROWS_AS(Envelope::decode_from(br), CodecError);
}

TEST_CASE("client report round-trips and validates shape") {
  WireContext ctx = small_ctx();
  ClientReportMsg msg = make_report(ctx);
  Bytes wire = msg.encode();
  CHECK_EQ(ClientReportMsg::decode(wire, ctx), msg);

  WireContext wrong = ctx;
  wrong.decryptors = 3;
  CHECK_THROWS_AS(ClientReportMsg::decode(wire, wrong), CodecError);
  wrong = ctx;
  wrong.vector_len = 5;
  CHECK_THROWS_AS(ClientReportMsg::decode(wire, wrong), CodecError);

  ClientReportMsg ragged = msg;
  ragged.pair_share_cts[0].pop_back();
  CHECK_THROWS_AS(ragged.encode(), CodecError);

  Bytes trailing = wire;
  trailing.push_back(0);
  CHECK_THROWS_AS(ClientReportMsg::decode(trailing, ctx), CodecError);
}

TEST_CASE("decryptor forward keeps clients ascending") {
  WireContext ctx = small_ctx();
  DecryptorForwardMsg msg;
  for (uint32_t id : {2u, 5u}) {
    ForwardedReport rep;
    rep.client = id;
    rep.flags.positions = {1};
    rep.individual_ct = make_ct(1, {9});
    rep.pair_cts = {make_ct(2, {8}), make_ct(3, {7})};
    msg.reports.push_back(rep);
  }
  Bytes wire = msg.encode(ctx.scope_size);
  CHECK_EQ(DecryptorForwardMsg::decode(wire, ctx), msg);

  std::swap(msg.reports[0], msg.reports[1]);
  CHECK_THROWS_AS(msg.encode(ctx.scope_size), CodecError);
}

TEST_CASE("unmask response carries masks and plaintext shares") {
  WireContext ctx = small_ctx();
  UnmaskResponseMsg msg;
  msg.emk.values = {123, 0};
  msg.emk.present = {1, 0};
  msg.individual_shares = {
      {4, SecretShare{1, Field("123456789012345678901234567890")}},
      {9, SecretShare{1, 42}},
  };
  Bytes wire = msg.encode(ctx.ring_width, ctx.share_prime);
  CHECK_EQ(UnmaskResponseMsg::decode(wire, ctx), msg);

  UnmaskResponseMsg unsorted = msg;
  std::swap(unsorted.individual_shares[0], unsorted.individual_shares[1]);
  CHECK_THROWS_AS(unsorted.encode(ctx.ring_width, ctx.share_prime), CodecError);
}

TEST_CASE("recovery request, response, and refusal round-trip") {
  WireContext ctx = small_ctx();
  RecoveryRequestMsg req{{3, 7, 9}};
  CHECK_EQ(RecoveryRequestMsg::decode(req.encode()), req);
  RecoveryRequestMsg dup{{3, 3}};
  CHECK_THROWS_AS(dup.encode(), CodecError);

  RecoveryResponseMsg resp;
  resp.victims.push_back(VictimShares{
      7, {{1, SecretShare{2, 11}}, {4, SecretShare{2, 22}}}});
  resp.victims.push_back(VictimShares{9, {{1, SecretShare{2, 33}}}});
  CHECK_EQ(RecoveryResponseMsg::decode(resp.encode(ctx.share_prime), ctx), resp);

  RecoveryRefusalMsg refusal{RefusalCause::kUnknownVictim};
  CHECK_EQ(RecoveryRefusalMsg::decode(refusal.encode()), refusal);
  CHECK_THROWS_AS(RecoveryRefusalMsg::decode(Bytes{9}), CodecError);
}

TEST_CASE("transcripts round-trip with framing") {
  Transcript t;
  t.messages.push_back(Envelope{MsgType::kClientReport, 1, 0, kServerId, {1, 2}});
  t.messages.push_back(Envelope{MsgType::kRecoveryRequest, 1, kServerId, 4, {}});
  Bytes wire = t.encode();
  CHECK_EQ(Bytes(wire.begin(), wire.begin() + 4), Bytes{'P', 'E', 'T', 'R'});
  CHECK_EQ(Transcript::decode(wire), t);

  Bytes bad = wire;
  bad[0] = 'X';
  CHECK_THROWS_AS(Transcript::decode(bad), CodecError);
  Bytes truncated(wire.begin(), wire.end() - 1);
  CHECK_THROWS_AS(Transcript::decode(truncated), CodecError);
}

TEST_CASE("cost ledger accumulates per role and phase") {
  CostLedger ledger;
  ledger.add(Role::kClient, Phase::kReport, Counter::kPrgElements, 100);
  ledger.add(Role::kClient, Phase::kReport, Counter::kPrgElements, 20);
  ledger.add(Role::kServer, Phase::kUnmask, Counter::kRingOps, 7);
  CHECK_EQ(ledger.get(Role::kClient, Phase::kReport, Counter::kPrgElements), 120);
  CHECK_EQ(ledger.get(Role::kServer, Phase::kReport, Counter::kPrgElements), 0);
  CHECK_THROWS(ledger.add(Role::kClient, Phase::kSetup, Counter::kSymOps, -1));

  CostLedger other;
  other.add(Role::kServer, Phase::kUnmask, Counter::kRingOps, 3);
  ledger.merge(other);
  CHECK_EQ(ledger.get(Role::kServer, Phase::kUnmask, Counter::kRingOps), 10);
  CHECK_EQ(ledger.total(Counter::kRingOps), 10);
  CHECK_EQ(ledger.phase_total(Phase::kReport), 120);

  std::string csv = ledger.to_csv(3);
  CHECK(csv.find("3,client,report,prg_elements,120") != std::string::npos);
  CHECK(csv.find("3,server,unmask,ring_ops,10") != std::string::npos);
  CHECK_EQ(CostLedger::csv_header(), "round,role,phase,counter,value");
  // 3 roles x 4 phases x 7 counters rows, every cell present.
  CHECK_EQ(std::count(csv.begin(), csv.end(), '\n'), 84);

  CostScope scope(&ledger, Role::kDecryptor, Phase::kDropRecovery);
  scope.add(Counter::kSymOps, 5);
  CHECK_EQ(ledger.get(Role::kDecryptor, Phase::kDropRecovery, Counter::kSymOps), 5);
  CostScope null_scope;
  null_scope.add(Counter::kSymOps, 5);  // no-op, no crash
}

TEST_CASE("pki rejects duplicates and unknown lookups") {
  PkiDirectory pki;
  pki.register_user(3, Bytes{1}, Bytes{2});
  CHECK(pki.has(3));
  CHECK_EQ(pki.lookup(3).pub_a, Bytes{1});
  CHECK_EQ(pki.lookup(3).pub_b, Bytes{2});
  CHECK_THROWS_AS(pki.register_user(3, Bytes{9}, Bytes{9}), CryptoError);
  CHECK_THROWS_AS(pki.lookup(4), CryptoError);
  CHECK_EQ(pki.size(), 1);
}
