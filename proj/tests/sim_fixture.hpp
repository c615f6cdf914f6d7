// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_TESTS_SIM_FIXTURE_HPP_
#define PESAGG_TESTS_SIM_FIXTURE_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "pesagg/roles.hpp"

namespace pesagg::testing {

// A complete in-memory world: keys, selection, per-party states, and plain
// function-call message passing.  Dropouts are modeled by simply not calling
// the dropped party.
struct RoleWorld {
  ProtocolParams params;
  MaskScope scope;
  std::unique_ptr<DhGroup> group = make_group("x25519");
  PkiDirectory pki;
  std::map<uint32_t, KeyPair> keys_a, keys_b;
  Bytes public_r;
  std::vector<uint32_t> committee, clients;
  std::vector<std::vector<uint32_t>> nbrs;
  std::vector<ClientState> cst;
  std::vector<DecryptorState> dst;
  std::vector<RingVector> updates;
  std::vector<ClientReportMsg> reports;
  CostLedger ledger;
  ServerState server;
  uint32_t round = 7;
  uint64_t master;

  RoleWorld(uint32_t n_clients, uint32_t n_dec, uint32_t t, uint64_t master_seed,
            uint32_t eta_c = 10, uint32_t eta_d = 10, uint32_t delta_d = 10)
      : master(master_seed) {
    params.clients = n_clients;
    params.decryptors = n_dec;
    params.neighbors = std::min<uint32_t>(3, n_clients - 1);
    params.vector_len = 32;
    params.scope_len = 8;
    params.t = t;
    params.eta_c_hundredths = eta_c;
    params.eta_d_hundredths = eta_d;
    params.delta_d_hundredths = delta_d;
    params.ring_width = 32;
    params.frac_bits = 16;
    params.kappa_bits = 128;
    params.derive();
    scope = MaskScope::prefix(params.scope_len, params.vector_len);

    const uint32_t n_users = n_clients + n_dec + 4;
    for (uint32_t id = 0; id < n_users; ++id) {
      DetRng krng(master, "user-keys", id);
      KeyPair a = group->generate(krng);
      KeyPair b = group->generate(krng);
      pki.register_user(id, a.public_key, b.public_key);
      keys_a[id] = std::move(a);
      keys_b[id] = std::move(b);
    }
    public_r.resize(32);
    DetRng rrng(master, "round-randomness", round);
    rrng.fill(public_r);
    committee = select_committee(public_r, n_users, n_dec);
    clients = select_clients(public_r, n_users, n_clients, committee);
    nbrs = neighbor_sets(public_r, round, clients, params.neighbors);

    for (size_t c = 0; c < clients.size(); ++c)
      cst.push_back(client_setup(clients[c], keys_a[clients[c]], keys_b[clients[c]], round,
                                 nbrs[c], committee, pki, *group, params,
                                 cost(Role::kClient, Phase::kSetup)));
    for (uint32_t u : committee)
      dst.push_back(decryptor_setup(u, keys_a[u], keys_b[u], round, committee, clients, pki,
                                    *group, params, cost(Role::kDecryptor, Phase::kSetup)));

    for (size_t c = 0; c < clients.size(); ++c) {
      DetRng urng(master, "updates", clients[c]);
      RingVector x(params.vector_len, params.ring_width);
      for (size_t k = 0; k < x.size(); ++k)
        if (urng.uniform_below(100) < 55) x.set(k, urng.uniform_below(1000));
      updates.push_back(std::move(x));
    }
    server = server_init(params, scope, round, clients, committee);
  }

  CostScope cost(Role r, Phase p) { return CostScope(&ledger, r, p); }

  void run_report() {
    std::vector<std::pair<uint32_t, ClientReportMsg>> pairs;
    for (size_t c = 0; c < clients.size(); ++c) {
      DetRng rng(master, "client", clients[c], round);
      reports.push_back(client_report(cst[c], updates[c], scope, params, rng,
                                      cost(Role::kClient, Phase::kReport)));
      pairs.push_back({clients[c], reports.back()});
    }
    server_collect(server, pairs, cost(Role::kServer, Phase::kReport));
  }

  UnmaskOutcome run_unmask(const std::set<uint32_t>& dropped = {}) {
    for (size_t u = 0; u < committee.size(); ++u) {
      if (dropped.count(committee[u])) continue;
      auto fwd = server_forward_for(server, static_cast<uint32_t>(u));
      auto resp =
          decryptor_unmask(dst[u], fwd, scope, params, cost(Role::kDecryptor, Phase::kUnmask));
      server_receive_unmask(server, committee[u], resp, cost(Role::kServer, Phase::kUnmask));
    }
    return server_unmask(server, cost(Role::kServer, Phase::kUnmask));
  }

  RecoveryOutcome run_recovery(const std::vector<uint32_t>& victims,
                               const std::set<uint32_t>& dropped) {
    RecoveryRequestMsg req{victims};
    std::vector<std::pair<uint32_t, RecoveryResponseMsg>> responses;
    std::vector<std::pair<uint32_t, RecoveryRefusalMsg>> refusals;
    for (size_t u = 0; u < committee.size(); ++u) {
      if (dropped.count(committee[u])) continue;
      auto r = decryptor_recover(dst[u], req, params, cost(Role::kDecryptor, Phase::kDropRecovery));
      if (auto* resp = std::get_if<RecoveryResponseMsg>(&r))
        responses.push_back({committee[u], std::move(*resp)});
      else
        refusals.push_back({committee[u], std::get<RecoveryRefusalMsg>(r)});
    }
    return server_recover(server, victims, responses, refusals,
                          cost(Role::kServer, Phase::kDropRecovery));
  }

  OracleResult oracle() const { return reveal_oracle(updates, scope, params.t_prime); }
};

inline void check_against_oracle([[maybe_unused]] const RevealedAggregate& got,
                                 [[maybe_unused]] const OracleResult& want) {
  REQUIRE(got.values.size() == want.plaintext_sum.size());
  REQUIRE(got.disclosed == want.expected_disclosed);
  for (size_t k = 0; k < got.values.size(); ++k)
    if (got.disclosed[k]) CHECK(got.values.at(k) == want.plaintext_sum.at(k));
}

}  // namespace pesagg::testing

#endif  // PESAGG_TESTS_SIM_FIXTURE_HPP_
