// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/harness.hpp"

#include <algorithm>
#include <set>

namespace pesagg {

namespace {

// Transcript + byte accounting for the star network.  Envelopes buffer per
// phase and land in the transcript in canonical order, so arrival shuffles
// can never leave a mark.
class Net {
 public:
  Net(Transcript* t, CostLedger* ledger, const std::vector<uint32_t>* committee,
      uint32_t round)
      : transcript_(t), ledger_(ledger), committee_(committee), round_(round) {}

  void send(MsgType type, Phase phase, uint32_t sender, uint32_t receiver, Bytes body) {
    Envelope e{type, round_, sender, receiver, std::move(body)};
    const int64_t sz = static_cast<int64_t>(e.wire_size());
    ledger_->add(role_of(sender), phase, Counter::kBytesSent, sz);
    ledger_->add(role_of(receiver), phase, Counter::kBytesReceived, sz);
    pending_.push_back(std::move(e));
  }

  void flush_phase() {
    std::stable_sort(pending_.begin(), pending_.end(),
                     [](const Envelope& a, const Envelope& b) {
                       return std::tie(a.type, a.sender, a.receiver) <
                              std::tie(b.type, b.sender, b.receiver);
                     });
    for (auto& e : pending_) transcript_->messages.push_back(std::move(e));
    pending_.clear();
  }

 private:
  Role role_of(uint32_t id) const {
    if (id == kServerId) return Role::kServer;
    if (std::binary_search(committee_->begin(), committee_->end(), id))
      return Role::kDecryptor;
    return Role::kClient;
  }

  Transcript* transcript_;
  CostLedger* ledger_;
  const std::vector<uint32_t>* committee_;
  uint32_t round_;
  std::vector<Envelope> pending_;
};

void require_subset(std::span<const uint32_t> ids, const std::vector<uint32_t>& pool,
                    const char* field) {
  for (uint32_t id : ids)
    if (!std::binary_search(pool.begin(), pool.end(), id))
      throw ValidationError(std::string(field) + ": id " + std::to_string(id) +
                            " is not in the selected set");
}

}  // namespace

RoundResult run_round(const RoundConfig& cfg) {
  ProtocolParams params = cfg.params;
  params.derive();
  MaskScope scope = MaskScope::prefix(params.scope_len, params.vector_len);

  const uint32_t population =
      cfg.population ? cfg.population : params.clients + params.decryptors;
  if (population < params.clients + params.decryptors)
    throw ValidationError("population: smaller than clients + decryptors");

  RoundResult res;
  Net net(&res.transcript, &res.ledger, &res.committee, cfg.round);

  // Everyone's long-term keys plus the out-of-band key directory.
  auto group = make_group("x25519");
  PkiDirectory pki;
  std::map<uint32_t, KeyPair> keys_a, keys_b;
  for (uint32_t id = 0; id < population; ++id) {
    DetRng krng(cfg.master_seed, "user-keys", id);
    KeyPair a = group->generate(krng);
    KeyPair b = group->generate(krng);
    pki.register_user(id, a.public_key, b.public_key);
    keys_a[id] = std::move(a);
    keys_b[id] = std::move(b);
  }

  Bytes public_r(32);
  {
    DetRng rrng(cfg.master_seed, "round-randomness", cfg.round);
    rrng.fill(public_r);
  }
  res.committee = select_committee(public_r, population, params.decryptors);
  res.clients = select_clients(public_r, population, params.clients, res.committee);
  auto nbrs = neighbor_sets(public_r, cfg.round, res.clients, params.neighbors);

  require_subset(cfg.adversary.colluding_clients, res.clients, "adversary.colluding_clients");
  require_subset(cfg.adversary.colluding_decryptors, res.committee,
                 "adversary.colluding_decryptors");
  if (cfg.adversary.colluding_clients.size() > params.max_corrupt_clients())
    throw ValidationError("adversary.colluding_clients: exceeds the eta_c budget");
  if (cfg.adversary.colluding_decryptors.size() > params.max_corrupt_decryptors())
    throw ValidationError("adversary.colluding_decryptors: exceeds the eta_d budget");
  if (cfg.dropouts.size() > params.max_dropped_decryptors())
    throw ValidationError("dropouts: exceeds the delta_d budget");
  std::map<uint32_t, Phase> drops;
  const std::set<uint32_t> colluding_dec(cfg.adversary.colluding_decryptors.begin(),
                                         cfg.adversary.colluding_decryptors.end());
  for (const auto& ev : cfg.dropouts) {
    if (ev.at != Phase::kUnmask && ev.at != Phase::kDropRecovery)
      throw ValidationError("dropouts.at: decryptors only act in the unmask and recovery phases");
    if (!std::binary_search(res.committee.begin(), res.committee.end(), ev.decryptor))
      throw ValidationError("dropouts.decryptor: not a committee member");
    if (colluding_dec.count(ev.decryptor))
      throw ValidationError("dropouts.decryptor: colluding and dropped are disjoint sets");
    if (!drops.emplace(ev.decryptor, ev.at).second)
      throw ValidationError("dropouts.decryptor: duplicate entry");
  }
  auto silent_at = [&](uint32_t id, Phase p) {
    auto it = drops.find(id);
    return it != drops.end() && it->second <= p;
  };

  // Plaintext updates and the ground-truth referee.
  std::vector<RingVector> updates;
  updates.reserve(res.clients.size());
  for (uint32_t id : res.clients)
    updates.push_back(make_update(cfg.workload, params, cfg.master_seed, id, cfg.round));
  res.oracle = reveal_oracle(updates, scope, params.t_prime);

  // Setup: key agreement only, no protocol messages.
  std::vector<ClientState> cst;
  cst.reserve(res.clients.size());
  for (size_t c = 0; c < res.clients.size(); ++c) {
    const uint32_t id = res.clients[c];
    cst.push_back(client_setup(id, keys_a[id], keys_b[id], cfg.round, nbrs[c], res.committee,
                               pki, *group, params,
                               CostScope(&res.ledger, Role::kClient, Phase::kSetup)));
  }
  std::vector<DecryptorState> dst;
  dst.reserve(res.committee.size());
  for (uint32_t id : res.committee)
    dst.push_back(decryptor_setup(id, keys_a[id], keys_b[id], cfg.round, res.committee,
                                  res.clients, pki, *group, params,
                                  CostScope(&res.ledger, Role::kDecryptor, Phase::kSetup)));

  ServerState server = server_init(params, scope, cfg.round, res.clients, res.committee);

  // ---- Report phase ----
  std::vector<std::pair<uint32_t, ClientReportMsg>> reports;
  reports.reserve(res.clients.size());
  for (size_t c = 0; c < res.clients.size(); ++c) {
    const uint32_t id = res.clients[c];
    DetRng rng(cfg.master_seed, "client", id, cfg.round);
    ClientReportMsg msg = client_report(cst[c], updates[c], scope, params, rng,
                                        CostScope(&res.ledger, Role::kClient, Phase::kReport));
    net.send(MsgType::kClientReport, Phase::kReport, id, kServerId, msg.encode());
    reports.push_back({id, std::move(msg)});
  }
  if (cfg.randomize_delivery) {
    DetRng sched(cfg.delivery_seed, "delivery", cfg.round, 1);
    sched.shuffle(reports);
  }
  server_collect(server, reports, CostScope(&res.ledger, Role::kServer, Phase::kReport));

  if (cfg.adversary.forge_indicators)
    res.forge = forge_indicators(server, cfg.adversary.colluding_clients,
                                 cfg.adversary.forge_max_positions);

  std::vector<DecryptorForwardMsg> fwds;
  fwds.reserve(res.committee.size());
  for (size_t ui = 0; ui < res.committee.size(); ++ui) {
    fwds.push_back(server_forward_for(server, static_cast<uint32_t>(ui)));
    net.send(MsgType::kDecryptorForward, Phase::kReport, kServerId, res.committee[ui],
             fwds.back().encode(static_cast<uint32_t>(scope.size())));
  }
  net.flush_phase();

  // ---- Unmask phase ----
  std::vector<std::pair<uint32_t, UnmaskResponseMsg>> unmask_msgs;
  for (size_t ui = 0; ui < res.committee.size(); ++ui) {
    const uint32_t id = res.committee[ui];
    if (silent_at(id, Phase::kUnmask)) continue;  // got the forward, then went dark
    UnmaskResponseMsg resp = decryptor_unmask(
        dst[ui], fwds[ui], scope, params,
        CostScope(&res.ledger, Role::kDecryptor, Phase::kUnmask));
    if (cfg.adversary.withhold_element_masks && colluding_dec.count(id)) {
      std::fill(resp.emk.present.begin(), resp.emk.present.end(), 0);
      std::fill(resp.emk.values.begin(), resp.emk.values.end(), 0);
    }
    net.send(MsgType::kUnmaskResponse, Phase::kUnmask, id, kServerId,
             resp.encode(params.ring_width, params.share_prime));
    unmask_msgs.push_back({id, std::move(resp)});
  }
  if (cfg.randomize_delivery) {
    DetRng sched(cfg.delivery_seed, "delivery", cfg.round, 2);
    sched.shuffle(unmask_msgs);
  }
  for (const auto& [id, resp] : unmask_msgs)
    server_receive_unmask(server, id, resp,
                          CostScope(&res.ledger, Role::kServer, Phase::kUnmask));
  UnmaskOutcome out = server_unmask(server, CostScope(&res.ledger, Role::kServer, Phase::kUnmask));
  net.flush_phase();

  res.victims = out.victims;
  bool settled = false;
  if (out.abort) {
    res.abort = out.abort;
    settled = true;
  } else if (out.revealed) {
    res.revealed = std::move(out.revealed);
  }

  // ---- Recovery phase: real dropouts ----
  if (!settled && !res.victims.empty()) {
    RecoveryRequestMsg req{res.victims};
    const Bytes req_wire = req.encode();
    std::vector<std::pair<uint32_t, RecoveryResponseMsg>> responses;
    std::vector<std::pair<uint32_t, RecoveryRefusalMsg>> refusals;
    for (size_t ui = 0; ui < res.committee.size(); ++ui) {
      const uint32_t id = res.committee[ui];
      if (silent_at(id, Phase::kUnmask)) continue;  // the victims themselves
      net.send(MsgType::kRecoveryRequest, Phase::kDropRecovery, kServerId, id, req_wire);
      if (silent_at(id, Phase::kDropRecovery)) continue;
      auto r = decryptor_recover(dst[ui], req, params,
                                 CostScope(&res.ledger, Role::kDecryptor, Phase::kDropRecovery));
      if (auto* resp = std::get_if<RecoveryResponseMsg>(&r)) {
        net.send(MsgType::kRecoveryResponse, Phase::kDropRecovery, id, kServerId,
                 resp->encode(params.share_prime));
        responses.push_back({id, std::move(*resp)});
      } else {
        auto& refusal = std::get<RecoveryRefusalMsg>(r);
        net.send(MsgType::kRecoveryRefusal, Phase::kDropRecovery, id, kServerId,
                 refusal.encode());
        refusals.push_back({id, refusal});
      }
    }
    if (cfg.randomize_delivery) {
      DetRng sched(cfg.delivery_seed, "delivery", cfg.round, 3);
      sched.shuffle(responses);
    }
    RecoveryOutcome rec =
        server_recover(server, res.victims, responses, refusals,
                       CostScope(&res.ledger, Role::kServer, Phase::kDropRecovery));
    net.flush_phase();
    if (rec.abort) {
      res.abort = rec.abort;
      settled = true;
    } else {
      res.revealed = std::move(rec.revealed);
    }
  }

  // ---- Recovery phase: disguised-dropout harvesting ----
  // Runs when nothing actually dropped: the lying server claims otherwise,
  // one tailored request per honest responder.
  if (!settled && cfg.adversary.disguise_dropouts && res.victims.empty()) {
    res.disguise =
        plan_disguised_dropouts(server, cfg.adversary.colluding_decryptors, params);
    std::vector<std::pair<uint32_t, RecoveryResponseMsg>> responses;
    std::vector<std::pair<uint32_t, RecoveryRefusalMsg>> refusals;
    for (const auto& dr : res.disguise.requests) {
      const size_t ui =
          std::lower_bound(res.committee.begin(), res.committee.end(), dr.responder) -
          res.committee.begin();
      net.send(MsgType::kRecoveryRequest, Phase::kDropRecovery, kServerId, dr.responder,
               dr.request.encode());
      if (silent_at(dr.responder, Phase::kDropRecovery)) continue;
      auto r = decryptor_recover(dst[ui], dr.request, params,
                                 CostScope(&res.ledger, Role::kDecryptor, Phase::kDropRecovery));
      if (auto* resp = std::get_if<RecoveryResponseMsg>(&r)) {
        net.send(MsgType::kRecoveryResponse, Phase::kDropRecovery, dr.responder, kServerId,
                 resp->encode(params.share_prime));
        responses.push_back({dr.responder, std::move(*resp)});
      } else {
        auto& refusal = std::get<RecoveryRefusalMsg>(r);
        net.send(MsgType::kRecoveryRefusal, Phase::kDropRecovery, dr.responder, kServerId,
                 refusal.encode());
        refusals.push_back({dr.responder, refusal});
      }
    }
    res.harvest = harvest_disguised(server, res.disguise, responses, refusals, dst,
                                    cfg.adversary.colluding_decryptors, params);
    net.flush_phase();
  }

  // ---- Post-round knowledge audit ----
  AdversaryView view;
  view.server = &server;
  view.client_states = cst;
  view.decryptor_states = dst;
  view.updates = updates;
  view.colluding_clients = cfg.adversary.colluding_clients;
  view.colluding_decryptors = cfg.adversary.colluding_decryptors;
  view.harvested_seeds = &res.harvest.recovered;
  res.leakage = measure_leakage(view, scope, params);

  return res;
}

}  // namespace pesagg
