// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/messages.hpp"

namespace pesagg {

namespace {

void write_ct(ByteWriter& w, const Ciphertext& ct) { w.blob(ct.encode()); }

Ciphertext read_ct(ByteReader& r) { return Ciphertext::decode(r.blob()); }

void write_share(ByteWriter& w, const SecretShare& s, const Field& p) {
  w.raw(encode_share(s, p));
}

SecretShare read_share(ByteReader& r, const Field& p) {
  return decode_share(r.raw(share_wire_size(p)), p);
}

void check_ascending(uint32_t prev, uint32_t cur, bool first, const char* what) {
  if (!first && cur <= prev) throw CodecError(std::string(what) + " not in ascending order");
}

}  // namespace

Bytes ClientReportMsg::encode() const {
  ByteWriter w;
  w.u32(static_cast<uint32_t>(masked.size()));
  w.raw(masked.serialize());
  flags.encode_to(w);
  const uint32_t d = static_cast<uint32_t>(individual_share_cts.size());
  if (pair_share_cts.size() != d) throw CodecError("report share matrix is not square");
  w.u32(d);
  for (const auto& ct : individual_share_cts) write_ct(w, ct);
  for (const auto& column : pair_share_cts) {
    if (column.size() != d) throw CodecError("report share matrix is not square");
    for (const auto& ct : column) write_ct(w, ct);
  }
  return w.take();
}

ClientReportMsg ClientReportMsg::decode(std::span<const uint8_t> wire, const WireContext& ctx) {
  ByteReader r(wire);
  ClientReportMsg msg;
  const uint32_t n = r.u32();
  if (n != ctx.vector_len) throw CodecError("masked vector length mismatch");
  msg.masked = RingVector::deserialize(r.raw(static_cast<size_t>(n) * (ctx.ring_width / 8)),
                                       n, ctx.ring_width);
  msg.flags = IndicatorSet::decode_from(r, ctx.scope_size);
  const uint32_t d = r.u32();
  if (d != ctx.decryptors) throw CodecError("report share matrix does not match committee");
  msg.individual_share_cts.reserve(d);
  for (uint32_t u = 0; u < d; ++u) msg.individual_share_cts.push_back(read_ct(r));
  msg.pair_share_cts.assign(d, {});
  for (uint32_t u = 0; u < d; ++u) {
    msg.pair_share_cts[u].reserve(d);
    for (uint32_t v = 0; v < d; ++v) msg.pair_share_cts[u].push_back(read_ct(r));
  }
  r.expect_done();
  return msg;
}

Bytes DecryptorForwardMsg::encode(uint32_t scope_size) const {
  (void)scope_size;
  ByteWriter w;
  w.u32(static_cast<uint32_t>(reports.size()));
  uint32_t prev = 0;
  bool first = true;
  for (const auto& rep : reports) {
    check_ascending(prev, rep.client, first, "forwarded clients");
    prev = rep.client;
    first = false;
    w.u32(rep.client);
    rep.flags.encode_to(w);
    write_ct(w, rep.individual_ct);
    w.u32(static_cast<uint32_t>(rep.pair_cts.size()));
    for (const auto& ct : rep.pair_cts) write_ct(w, ct);
  }
  return w.take();
}

DecryptorForwardMsg DecryptorForwardMsg::decode(std::span<const uint8_t> wire,
                                                const WireContext& ctx) {
  ByteReader r(wire);
  DecryptorForwardMsg msg;
  const uint32_t n = r.u32();
  msg.reports.reserve(n);
  uint32_t prev = 0;
  for (uint32_t i = 0; i < n; ++i) {
    ForwardedReport rep;
    rep.client = r.u32();
    check_ascending(prev, rep.client, i == 0, "forwarded clients");
    prev = rep.client;
    rep.flags = IndicatorSet::decode_from(r, ctx.scope_size);
    rep.individual_ct = read_ct(r);
    const uint32_t d = r.u32();
    if (d != ctx.decryptors) throw CodecError("forwarded share column does not match committee");
    rep.pair_cts.reserve(d);
    for (uint32_t v = 0; v < d; ++v) rep.pair_cts.push_back(read_ct(r));
    msg.reports.push_back(std::move(rep));
  }
  r.expect_done();
  return msg;
}

Bytes UnmaskResponseMsg::encode(uint32_t ring_width, const Field& share_prime) const {
  ByteWriter w;
  emk.encode_to(w, ring_width);
  w.u32(static_cast<uint32_t>(individual_shares.size()));
  uint32_t prev = 0;
  bool first = true;
  for (const auto& entry : individual_shares) {
    check_ascending(prev, entry.client, first, "share clients");
    prev = entry.client;
    first = false;
    w.u32(entry.client);
    write_share(w, entry.share, share_prime);
  }
  return w.take();
}

UnmaskResponseMsg UnmaskResponseMsg::decode(std::span<const uint8_t> wire,
                                            const WireContext& ctx) {
  ByteReader r(wire);
  UnmaskResponseMsg msg;
  msg.emk = ElementMaskVector::decode_from(r, ctx.scope_size, ctx.ring_width);
  const uint32_t n = r.u32();
  msg.individual_shares.reserve(n);
  uint32_t prev = 0;
  for (uint32_t i = 0; i < n; ++i) {
    ShareEntry entry;
    entry.client = r.u32();
    check_ascending(prev, entry.client, i == 0, "share clients");
    prev = entry.client;
    entry.share = read_share(r, ctx.share_prime);
    msg.individual_shares.push_back(std::move(entry));
  }
  r.expect_done();
  return msg;
}

Bytes RecoveryRequestMsg::encode() const {
  ByteWriter w;
  w.u32(static_cast<uint32_t>(victims.size()));
  uint32_t prev = 0;
  bool first = true;
  for (uint32_t v : victims) {
    check_ascending(prev, v, first, "victim list");
    prev = v;
    first = false;
    w.u32(v);
  }
  return w.take();
}

RecoveryRequestMsg RecoveryRequestMsg::decode(std::span<const uint8_t> wire) {
  ByteReader r(wire);
  RecoveryRequestMsg msg;
  const uint32_t n = r.u32();
  msg.victims.reserve(n);
  uint32_t prev = 0;
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t v = r.u32();
    check_ascending(prev, v, i == 0, "victim list");
    prev = v;
    msg.victims.push_back(v);
  }
  r.expect_done();
  return msg;
}

Bytes RecoveryResponseMsg::encode(const Field& share_prime) const {
  ByteWriter w;
  w.u32(static_cast<uint32_t>(victims.size()));
  for (const auto& vs : victims) {
    w.u32(vs.victim);
    w.u32(static_cast<uint32_t>(vs.shares.size()));
    uint32_t prev = 0;
    bool first = true;
    for (const auto& entry : vs.shares) {
      check_ascending(prev, entry.client, first, "share clients");
      prev = entry.client;
      first = false;
      w.u32(entry.client);
      write_share(w, entry.share, share_prime);
    }
  }
  return w.take();
}

RecoveryResponseMsg RecoveryResponseMsg::decode(std::span<const uint8_t> wire,
                                                const WireContext& ctx) {
  ByteReader r(wire);
  RecoveryResponseMsg msg;
  const uint32_t n = r.u32();
  msg.victims.reserve(n);
  for (uint32_t i = 0; i < n; ++i) {
    VictimShares vs;
    vs.victim = r.u32();
    const uint32_t m = r.u32();
    vs.shares.reserve(m);
    uint32_t prev = 0;
    for (uint32_t j = 0; j < m; ++j) {
      ShareEntry entry;
      entry.client = r.u32();
      check_ascending(prev, entry.client, j == 0, "share clients");
      prev = entry.client;
      entry.share = read_share(r, ctx.share_prime);
      vs.shares.push_back(std::move(entry));
    }
    msg.victims.push_back(std::move(vs));
  }
  r.expect_done();
  return msg;
}

const char* refusal_cause_name(RefusalCause c) {
  switch (c) {
    case RefusalCause::kOversizedDropoutList: return "oversized dropout list";
    case RefusalCause::kUnknownVictim: return "victim outside committee";
    case RefusalCause::kSelfVictim: return "recipient named as victim";
  }
  return "?";
}

Bytes RecoveryRefusalMsg::encode() const {
  ByteWriter w;
  w.u8(static_cast<uint8_t>(cause));
  return w.take();
}

RecoveryRefusalMsg RecoveryRefusalMsg::decode(std::span<const uint8_t> wire) {
  ByteReader r(wire);
  RecoveryRefusalMsg msg;
  const uint8_t c = r.u8();
  if (c > static_cast<uint8_t>(RefusalCause::kSelfVictim))
    throw CodecError("unknown refusal cause");
  msg.cause = static_cast<RefusalCause>(c);
  r.expect_done();
  return msg;
}

Bytes Envelope::encode() const {
  ByteWriter w;
  w.u8(static_cast<uint8_t>(type));
  w.u32(round);
  w.u32(sender);
  w.u32(receiver);
  w.blob(body);
  return w.take();
}

Envelope Envelope::decode_from(ByteReader& r) {
  Envelope env;
  const uint8_t t = r.u8();
  if (t < 1 || t > 6) throw CodecError("unknown message type tag");
  env.type = static_cast<MsgType>(t);
  env.round = r.u32();
  env.sender = r.u32();
  env.receiver = r.u32();
  env.body = r.blob();
  return env;
}

Bytes Transcript::encode() const {
  ByteWriter w;
  w.raw(Bytes{'P', 'E', 'T', 'R'});
  w.u32(1);  // version
  w.u32(static_cast<uint32_t>(messages.size()));
  for (const Envelope& env : messages) w.blob(env.encode());
  return w.take();
}

Transcript Transcript::decode(std::span<const uint8_t> wire) {
  ByteReader r(wire);
  Bytes magic = r.raw(4);
  if (magic != Bytes{'P', 'E', 'T', 'R'}) throw CodecError("bad transcript magic");
  if (r.u32() != 1) throw CodecError("unsupported transcript version");
  const uint32_t n = r.u32();
  Transcript t;
  t.messages.reserve(n);
  for (uint32_t i = 0; i < n; ++i) {
    Bytes one = r.blob();
    ByteReader er(one);
    t.messages.push_back(Envelope::decode_from(er));
    er.expect_done();
  }
  r.expect_done();
  return t;
}

}  // namespace pesagg
