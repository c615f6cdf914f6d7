// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/roles.hpp"

#include <algorithm>
#include <set>

namespace pesagg {

namespace {

// Share-ciphertext nonce labels: 1 = individual-seed share, 2+v = share of
// the pairwise seed owned jointly with committee member at position v.
constexpr uint8_t kLabelIndividual = 1;
constexpr uint8_t kLabelPairBase = 2;

uint64_t rank64(const Bytes& public_r, std::string_view tag, uint64_t a, uint64_t b) {
  ByteWriter w;
  w.raw(Bytes(tag.begin(), tag.end()));
  w.u64(a);
  w.u64(b);
  std::vector<Bytes> parts = {public_r, w.take()};
  Bytes h = hash32("pesagg.select.v1", parts);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(h[i]) << (8 * i);
  return v;
}

std::vector<uint32_t> lowest_ranked(const Bytes& public_r, std::string_view tag,
                                    const std::vector<uint32_t>& candidates, uint32_t count) {
  if (count > candidates.size())
    throw ProtocolError("selection count exceeds candidate pool");
  std::vector<std::pair<uint64_t, uint32_t>> ranked;
  ranked.reserve(candidates.size());
  for (uint32_t id : candidates) ranked.push_back({rank64(public_r, tag, id, 0), id});
  std::sort(ranked.begin(), ranked.end());
  std::vector<uint32_t> out;
  out.reserve(count);
  for (uint32_t i = 0; i < count; ++i) out.push_back(ranked[i].second);
  std::sort(out.begin(), out.end());
  return out;
}

PairwiseKeys derive_pair_keys(const KeyPair& key_a, const KeyPair& key_b, uint32_t peer,
                              uint32_t round, const PkiDirectory& pki, const DhGroup& group,
                              const ProtocolParams& params) {
  const auto& entry = pki.lookup(peer);
  PairwiseKeys keys;
  keys.seed = prf(group.key_agree(key_a.private_key, entry.pub_a), round, params.kappa_bits);
  keys.sym_key = sym_key_from_secret(group.key_agree(key_b.private_key, entry.pub_b));
  return keys;
}

}  // namespace

std::vector<uint32_t> select_committee(const Bytes& public_r, uint32_t n_users,
                                       uint32_t count) {
  std::vector<uint32_t> all(n_users);
  for (uint32_t i = 0; i < n_users; ++i) all[i] = i;
  return lowest_ranked(public_r, "committee", all, count);
}

std::vector<uint32_t> select_clients(const Bytes& public_r, uint32_t n_users, uint32_t count,
                                     std::span<const uint32_t> committee) {
  std::set<uint32_t> excluded(committee.begin(), committee.end());
  std::vector<uint32_t> pool;
  for (uint32_t i = 0; i < n_users; ++i)
    if (!excluded.count(i)) pool.push_back(i);
  return lowest_ranked(public_r, "clients", pool, count);
}

std::vector<std::vector<uint32_t>> neighbor_sets(const Bytes& public_r, uint32_t round,
                                                 std::span<const uint32_t> clients,
                                                 uint32_t degree) {
  const size_t n = clients.size();
  if (degree >= n) throw ProtocolError("neighbor degree must be below the client count");
  // Edge ranks are symmetric in the pair, so both endpoints agree on them.
  std::vector<std::set<uint32_t>> chosen(n);
  for (size_t i = 0; i < n; ++i) {
    std::vector<std::pair<uint64_t, uint32_t>> ranked;
    ranked.reserve(n - 1);
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const uint64_t lo = std::min(clients[i], clients[j]);
      const uint64_t hi = std::max(clients[i], clients[j]);
      ranked.push_back({rank64(public_r, "edge", (static_cast<uint64_t>(round) << 32) | lo, hi),
                        static_cast<uint32_t>(j)});
    }
    std::nth_element(ranked.begin(), ranked.begin() + degree - 1, ranked.end());
    for (uint32_t k = 0; k < degree; ++k) chosen[i].insert(ranked[k].second);
  }
  // Symmetrize: an edge picked by either endpoint binds both.
  std::vector<std::vector<uint32_t>> out(n);
  for (size_t i = 0; i < n; ++i)
    for (uint32_t j : chosen[i]) {
      out[i].push_back(clients[j]);
      if (!chosen[j].count(static_cast<uint32_t>(i))) out[j].push_back(clients[i]);
    }
  for (auto& v : out) std::sort(v.begin(), v.end());
  return out;
}

ClientState client_setup(uint32_t id, const KeyPair& key_a, const KeyPair& key_b,
                         uint32_t round, std::span<const uint32_t> neighbors,
                         std::span<const uint32_t> committee, const PkiDirectory& pki,
                         const DhGroup& group, const ProtocolParams& params,
                         CostScope cost) {
  ClientState st;
  st.id = id;
  st.round = round;
  st.neighbors.assign(neighbors.begin(), neighbors.end());
  st.committee.assign(committee.begin(), committee.end());
  if (!std::is_sorted(st.committee.begin(), st.committee.end()))
    throw ProtocolError("committee list must be in canonical order");

  for (uint32_t j : st.neighbors) {
    const auto& entry = pki.lookup(j);
    st.neighbor_seeds[j] =
        prf(group.key_agree(key_a.private_key, entry.pub_a), round, params.kappa_bits);
    cost.add(Counter::kPrfEvals, 1);
  }
  st.committee_keys.reserve(st.committee.size());
  for (uint32_t u : st.committee) {
    st.committee_keys.push_back(derive_pair_keys(key_a, key_b, u, round, pki, group, params));
    cost.add(Counter::kPrfEvals, 1);
    cost.add(Counter::kSymOps, 1);  // channel-key derivation
  }
  return st;
}

DecryptorState decryptor_setup(uint32_t id, const KeyPair& key_a, const KeyPair& key_b,
                               uint32_t round, std::span<const uint32_t> committee,
                               std::span<const uint32_t> clients, const PkiDirectory& pki,
                               const DhGroup& group, const ProtocolParams& params,
                               CostScope cost) {
  DecryptorState st;
  st.id = id;
  st.round = round;
  st.committee.assign(committee.begin(), committee.end());
  st.clients.assign(clients.begin(), clients.end());
  if (!std::is_sorted(st.clients.begin(), st.clients.end()))
    throw ProtocolError("client list must be in canonical order");
  auto pos = std::find(st.committee.begin(), st.committee.end(), id);
  if (pos == st.committee.end()) throw ProtocolError("decryptor is not in the committee");
  st.committee_index = static_cast<uint32_t>(pos - st.committee.begin());

  st.client_keys.reserve(st.clients.size());
  for (uint32_t i : st.clients) {
    st.client_keys.push_back(derive_pair_keys(key_a, key_b, i, round, pki, group, params));
    cost.add(Counter::kPrfEvals, 1);
    cost.add(Counter::kSymOps, 1);
  }
  return st;
}

ClientReportMsg client_report(ClientState& st, const RingVector& update,
                              const MaskScope& scope, const ProtocolParams& params,
                              DetRng& rng, CostScope cost) {
  const uint32_t d = static_cast<uint32_t>(st.committee.size());
  if (d != params.decryptors) throw ProtocolError("client committee size mismatch");
  if (d + kLabelPairBase > 255) throw ProtocolError("committee too large for nonce labels");
  if (update.size() != params.vector_len || update.width_bits() != params.ring_width)
    throw ProtocolError("update shape does not match parameters");

  ClientReportMsg msg;
  msg.flags = indicator(update, scope);

  // Per-element layer first: committee pairwise streams at flagged positions.
  msg.masked = update;
  std::vector<Seed> committee_seeds;
  committee_seeds.reserve(d);
  for (const auto& keys : st.committee_keys) committee_seeds.push_back(keys.seed);
  add_element_masks(msg.masked, msg.flags, committee_seeds, scope);
  cost.add(Counter::kPrgElements, static_cast<int64_t>(msg.flags.size()) * d);
  cost.add(Counter::kRingOps, static_cast<int64_t>(msg.flags.size()) * d);

  // Classic layer: fresh individual stream plus signed neighbor streams.
  st.individual_seed = Seed{Bytes(params.kappa_bits / 8)};
  rng.fill(st.individual_seed.bytes);
  std::vector<std::pair<Seed, int>> pairwise;
  pairwise.reserve(st.neighbors.size());
  for (uint32_t j : st.neighbors)
    pairwise.push_back({st.neighbor_seeds.at(j), st.id < j ? 1 : -1});
  msg.masked = classic_mask(msg.masked, st.individual_seed, pairwise);
  cost.add(Counter::kPrgElements,
           static_cast<int64_t>(update.size()) * (1 + st.neighbors.size()));
  cost.add(Counter::kRingOps,
           static_cast<int64_t>(update.size()) * (1 + st.neighbors.size()));

  // Share the individual seed, then every committee pairwise seed; the
  // cost model charges |D|^2 per shared secret.
  const Field& p = params.share_prime;
  auto individual_shares = ss_share(seed_to_field(st.individual_seed), params.ell, d, p, rng);
  cost.add(Counter::kShareOps, static_cast<int64_t>(d) * d);
  std::vector<std::vector<SecretShare>> pair_shares;  // [owner][holder]
  pair_shares.reserve(d);
  for (uint32_t v = 0; v < d; ++v) {
    pair_shares.push_back(
        ss_share(seed_to_field(st.committee_keys[v].seed), params.ell, d, p, rng));
    cost.add(Counter::kShareOps, static_cast<int64_t>(d) * d);
  }

  msg.individual_share_cts.reserve(d);
  msg.pair_share_cts.assign(d, {});
  for (uint32_t u = 0; u < d; ++u) {
    const Bytes& key = st.committee_keys[u].sym_key;
    msg.individual_share_cts.push_back(
        sym_encrypt(key, NonceParts{st.round, kLabelIndividual, st.id},
                    encode_share(individual_shares[u], p)));
    cost.add(Counter::kSymOps, 1);
    msg.pair_share_cts[u].reserve(d);
    for (uint32_t v = 0; v < d; ++v) {
      msg.pair_share_cts[u].push_back(
          sym_encrypt(key, NonceParts{st.round, static_cast<uint8_t>(kLabelPairBase + v), st.id},
                      encode_share(pair_shares[v][u], p)));
      cost.add(Counter::kSymOps, 1);
    }
  }
  return msg;
}

ServerState server_init(const ProtocolParams& params, const MaskScope& scope, uint32_t round,
                        std::vector<uint32_t> clients, std::vector<uint32_t> committee) {
  ServerState st;
  st.params = params;
  st.scope = scope;
  st.round = round;
  st.clients = std::move(clients);
  st.committee = std::move(committee);
  st.aggregate = RingVector(params.vector_len, params.ring_width);
  return st;
}

void server_collect(ServerState& st,
                    std::span<const std::pair<uint32_t, ClientReportMsg>> reports,
                    CostScope cost) {
  if (reports.size() != st.clients.size())
    throw ProtocolError("expected exactly one report per selected client");
  std::map<uint32_t, const ClientReportMsg*> by_client;
  for (const auto& [id, msg] : reports)
    if (!by_client.emplace(id, &msg).second)
      throw ProtocolError("duplicate report from client " + std::to_string(id));

  st.reports.clear();
  st.indicators.clear();
  for (uint32_t id : st.clients) {
    auto it = by_client.find(id);
    if (it == by_client.end())
      throw ProtocolError("missing report from client " + std::to_string(id));
    st.reports.push_back(*it->second);
    st.indicators.push_back({id, it->second->flags});
    st.aggregate.add_assign(it->second->masked);
    cost.add(Counter::kRingOps, static_cast<int64_t>(st.aggregate.size()));
  }
}

DecryptorForwardMsg server_forward_for(const ServerState& st, uint32_t committee_index) {
  if (committee_index >= st.committee.size())
    throw ProtocolError("committee index out of range");
  DecryptorForwardMsg msg;
  msg.reports.reserve(st.clients.size());
  for (size_t c = 0; c < st.clients.size(); ++c) {
    ForwardedReport rep;
    rep.client = st.clients[c];
    rep.flags = st.indicators[c].second;
    rep.individual_ct = st.reports[c].individual_share_cts[committee_index];
    rep.pair_cts = st.reports[c].pair_share_cts[committee_index];
    msg.reports.push_back(std::move(rep));
  }
  return msg;
}

UnmaskResponseMsg decryptor_unmask(DecryptorState& st, const DecryptorForwardMsg& fwd,
                                   const MaskScope& scope, const ProtocolParams& params,
                                   CostScope cost) {
  if (fwd.reports.size() != st.clients.size())
    throw ProtocolError("forward does not cover the selected clients");
  for (size_t c = 0; c < fwd.reports.size(); ++c)
    if (fwd.reports[c].client != st.clients[c])
      throw ProtocolError("forward names a client outside the selected set");
  st.forward = fwd;  // retained for the recovery phase

  std::vector<std::pair<uint32_t, IndicatorSet>> indicators;
  indicators.reserve(fwd.reports.size());
  for (const auto& rep : fwd.reports) indicators.push_back({rep.client, rep.flags});
  auto table = build_contributors(indicators, scope);

  std::vector<std::pair<uint32_t, Seed>> seeds;
  seeds.reserve(st.clients.size());
  for (size_t c = 0; c < st.clients.size(); ++c)
    seeds.push_back({st.clients[c], st.client_keys[c].seed});

  UnmaskResponseMsg resp;
  resp.emk = element_masks(table, seeds, params.t_prime, scope, params.ring_width);
  int64_t stream_elems = 0;
  for (size_t pos = 0; pos < table.size(); ++pos)
    if (resp.emk.present[pos]) stream_elems += static_cast<int64_t>(table[pos].size());
  cost.add(Counter::kPrgElements, stream_elems);
  cost.add(Counter::kRingOps, stream_elems);

  const uint32_t expected_holder = st.committee_index + 1;
  for (size_t c = 0; c < fwd.reports.size(); ++c) {
    cost.add(Counter::kSymOps, 1);
    Bytes pt;
    try {
      pt = sym_decrypt(st.client_keys[c].sym_key, fwd.reports[c].individual_ct);
    } catch (const CryptoError&) {
      continue;  // tampered or misaddressed ciphertext: omit the share
    }
    SecretShare share = decode_share(pt, params.share_prime);
    if (share.holder != expected_holder) continue;
    resp.individual_shares.push_back({fwd.reports[c].client, std::move(share)});
  }
  return resp;
}

void server_receive_unmask(ServerState& st, uint32_t decryptor_id,
                           const UnmaskResponseMsg& resp, CostScope cost) {
  (void)cost;
  auto pos = std::find(st.committee.begin(), st.committee.end(), decryptor_id);
  if (pos == st.committee.end())
    throw ProtocolError("unmask response from outside the committee");
  if (std::find(st.unmask_responders.begin(), st.unmask_responders.end(), decryptor_id) !=
      st.unmask_responders.end())
    throw ProtocolError("duplicate unmask response");
  if (resp.emk.values.size() != st.scope.size())
    throw ProtocolError("element mask vector has wrong scope size");

  const uint32_t holder = static_cast<uint32_t>(pos - st.committee.begin()) + 1;
  st.unmask_responders.push_back(decryptor_id);
  st.emks.push_back(resp.emk);
  for (const auto& entry : resp.individual_shares) {
    if (entry.share.holder != holder)
      throw ProtocolError("share holder does not match the responding decryptor");
    st.individual_shares[entry.client].push_back(entry.share);
  }
}

namespace {

// Reconstruction of every client's individual seed from the collected
// shares; cost model charges |D|^2 per reconstructed secret.
std::vector<Seed> recon_individual_seeds(ServerState& st, CostScope cost) {
  std::vector<Seed> seeds;
  seeds.reserve(st.clients.size());
  for (uint32_t id : st.clients) {
    auto it = st.individual_shares.find(id);
    if (it == st.individual_shares.end() || it->second.size() < st.params.ell)
      throw ProtocolError("not enough shares of an individual seed");
    seeds.push_back(field_to_seed(ss_recon(it->second, st.params.ell, st.params.share_prime),
                                  st.params.kappa_bits));
    cost.add(Counter::kShareOps,
             static_cast<int64_t>(st.params.decryptors) * st.params.decryptors);
  }
  return seeds;
}

}  // namespace

UnmaskOutcome server_unmask(ServerState& st, CostScope cost) {
  UnmaskOutcome out;
  if (st.unmask_responders.size() < st.params.ell) {
    out.abort = AbortInfo{Phase::kUnmask, "insufficient unmask responses"};
    return out;
  }
  for (uint32_t u : st.committee)
    if (std::find(st.unmask_responders.begin(), st.unmask_responders.end(), u) ==
        st.unmask_responders.end())
      out.victims.push_back(u);

  std::vector<Seed> seeds;
  try {
    seeds = recon_individual_seeds(st, cost);
  } catch (const ProtocolError& e) {
    out.abort = AbortInfo{Phase::kUnmask, e.what()};
    return out;
  }
  st.recon_individual_seeds = seeds;

  if (!out.victims.empty()) return out;  // recovery phase takes it from here

  out.revealed = unmask(st.aggregate, seeds, st.emks, st.scope, nullptr);
  cost.add(Counter::kPrgElements,
           static_cast<int64_t>(st.clients.size()) * st.aggregate.size());
  cost.add(Counter::kRingOps, static_cast<int64_t>(st.clients.size()) * st.aggregate.size() +
                                  static_cast<int64_t>(st.emks.size()) * st.scope.size());
  return out;
}

std::variant<RecoveryResponseMsg, RecoveryRefusalMsg> decryptor_recover(
    DecryptorState& st, const RecoveryRequestMsg& req, const ProtocolParams& params,
    CostScope cost) {
  // The dropout claim is mostly unverifiable over a star topology; the
  // defenses are the hard cap, committee membership, and the one fact every
  // decryptor can check locally — that it is not itself on the list.
  if (req.victims.size() > params.delta_max)
    return RecoveryRefusalMsg{RefusalCause::kOversizedDropoutList};
  for (uint32_t v : req.victims) {
    if (v == st.id) return RecoveryRefusalMsg{RefusalCause::kSelfVictim};
    if (std::find(st.committee.begin(), st.committee.end(), v) == st.committee.end())
      return RecoveryRefusalMsg{RefusalCause::kUnknownVictim};
  }

  const uint32_t expected_holder = st.committee_index + 1;
  RecoveryResponseMsg resp;
  for (uint32_t v : req.victims) {
    const uint32_t owner_index = static_cast<uint32_t>(
        std::find(st.committee.begin(), st.committee.end(), v) - st.committee.begin());
    VictimShares vs;
    vs.victim = v;
    for (size_t c = 0; c < st.forward.reports.size(); ++c) {
      cost.add(Counter::kSymOps, 1);
      Bytes pt;
      try {
        pt = sym_decrypt(st.client_keys[c].sym_key, st.forward.reports[c].pair_cts[owner_index]);
      } catch (const CryptoError&) {
        continue;
      }
      SecretShare share = decode_share(pt, params.share_prime);
      if (share.holder != expected_holder) continue;
      vs.shares.push_back({st.forward.reports[c].client, std::move(share)});
    }
    resp.victims.push_back(std::move(vs));
  }
  return resp;
}

RecoveryOutcome server_recover(
    ServerState& st, std::span<const uint32_t> victims,
    std::span<const std::pair<uint32_t, RecoveryResponseMsg>> responses,
    std::span<const std::pair<uint32_t, RecoveryRefusalMsg>> refusals, CostScope cost) {
  RecoveryOutcome out;
  if (!refusals.empty()) {
    out.abort = AbortInfo{Phase::kDropRecovery,
                          std::string("recovery refused: ") +
                              refusal_cause_name(refusals.front().second.cause)};
    return out;
  }
  if (responses.size() < st.params.ell) {
    out.abort = AbortInfo{Phase::kDropRecovery, "insufficient recovery responses"};
    return out;
  }

  // shares[(victim, client)] collected across responders.
  std::map<std::pair<uint32_t, uint32_t>, std::vector<SecretShare>> shares;
  for (const auto& [responder, resp] : responses) {
    (void)responder;
    for (const auto& vs : resp.victims)
      for (const auto& entry : vs.shares)
        shares[{vs.victim, entry.client}].push_back(entry.share);
  }

  // Rebuild the element masks the victims never got to apply: for every
  // (client, victim) pairwise seed, the victim's stream at each position the
  // client flagged.
  std::vector<uint64_t> recovered(st.scope.size(), 0);
  const uint64_t mask = st.aggregate.mask();
  for (uint32_t v : victims) {
    std::vector<Seed>& seeds = st.recovered_pair_seeds[v];
    seeds.clear();
    for (size_t c = 0; c < st.clients.size(); ++c) {
      const uint32_t client = st.clients[c];
      auto it = shares.find({v, client});
      if (it == shares.end() || it->second.size() < st.params.ell) {
        out.abort = AbortInfo{Phase::kDropRecovery, "not enough shares of a pairwise seed"};
        return out;
      }
      Seed seed = field_to_seed(ss_recon(it->second, st.params.ell, st.params.share_prime),
                                st.params.kappa_bits);
      cost.add(Counter::kShareOps,
               static_cast<int64_t>(st.params.decryptors) * st.params.decryptors);
      PrgStream stream(seed, st.params.ring_width);
      for (uint32_t pos : st.indicators[c].second.positions) {
        const uint32_t k = st.scope.index_at(pos);
        recovered[pos] = (recovered[pos] + stream.element(k)) & mask;
        cost.add(Counter::kPrgElements, 1);
        cost.add(Counter::kRingOps, 1);
      }
      seeds.push_back(std::move(seed));
    }
  }

  out.revealed = unmask(st.aggregate, st.recon_individual_seeds, st.emks, st.scope, &recovered);
  cost.add(Counter::kPrgElements,
           static_cast<int64_t>(st.clients.size()) * st.aggregate.size());
  cost.add(Counter::kRingOps, static_cast<int64_t>(st.clients.size()) * st.aggregate.size() +
                                  static_cast<int64_t>(st.emks.size()) * st.scope.size());
  return out;
}

}  // namespace pesagg
