// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/adversary.hpp"

#include <algorithm>
#include <set>

namespace pesagg {

namespace {

size_t index_in(const std::vector<uint32_t>& v, uint32_t id) {
  auto it = std::lower_bound(v.begin(), v.end(), id);
  if (it == v.end() || *it != id) throw ProtocolError("id not in canonical list");
  return static_cast<size_t>(it - v.begin());
}

void insert_position(IndicatorSet& flags, uint32_t pos) {
  auto it = std::lower_bound(flags.positions.begin(), flags.positions.end(), pos);
  if (it == flags.positions.end() || *it != pos) flags.positions.insert(it, pos);
}

}  // namespace

ForgeReport forge_indicators(ServerState& st, std::span<const uint32_t> colluding_clients,
                             uint32_t max_positions) {
  ForgeReport report;
  const std::set<uint32_t> colluders(colluding_clients.begin(), colluding_clients.end());
  auto table = build_contributors(st.indicators, st.scope);
  for (uint32_t pos = 0; pos < table.size(); ++pos) {
    if (report.positions.size() >= max_positions) break;
    const auto& present = table[pos];
    const uint32_t count = static_cast<uint32_t>(present.size());
    if (count == 0 || count >= st.params.t_prime) continue;
    if (st.params.t_prime > st.clients.size()) continue;  // not enough ids to fake

    ForgedPosition fp;
    fp.pos = pos;
    fp.true_count = count;
    uint32_t need = st.params.t_prime - count;
    // Two passes: colluding absentees first (their streams can be corrected
    // away), honest absentees after (their streams cannot).
    for (int pass = 0; pass < 2 && need > 0; ++pass) {
      for (size_t c = 0; c < st.clients.size() && need > 0; ++c) {
        const uint32_t id = st.clients[c];
        if (std::binary_search(present.begin(), present.end(), id)) continue;
        const bool is_colluder = colluders.count(id) != 0;
        if ((pass == 0) != is_colluder) continue;
        insert_position(st.indicators[c].second, pos);
        (is_colluder ? fp.forged_colluding : fp.forged_honest).push_back(id);
        --need;
      }
    }
    report.positions.push_back(std::move(fp));
  }
  return report;
}

DisguisePlan plan_disguised_dropouts(const ServerState& st,
                                     std::span<const uint32_t> colluding_decryptors,
                                     const ProtocolParams& params) {
  DisguisePlan plan;
  const std::set<uint32_t> colluders(colluding_decryptors.begin(), colluding_decryptors.end());
  std::vector<uint32_t> honest;
  for (uint32_t u : st.unmask_responders)
    if (!colluders.count(u)) honest.push_back(u);
  std::sort(honest.begin(), honest.end());

  const uint32_t have_free = static_cast<uint32_t>(colluders.size());
  const uint32_t need = params.ell > have_free ? params.ell - have_free : 0;

  std::map<uint32_t, std::vector<uint32_t>> victims_of;  // responder -> victims
  std::map<uint32_t, uint32_t> load;
  for (uint32_t r : honest) load[r] = 0;

  for (uint32_t target : honest) {
    if (need == 0) {
      plan.targets.push_back(target);  // colluders alone reconstruct everything
      continue;
    }
    // The `need` least-loaded honest responders other than the target, each
    // still under the per-request cap.
    std::vector<uint32_t> avail;
    for (uint32_t r : honest)
      if (r != target && load[r] < params.delta_max) avail.push_back(r);
    if (avail.size() < need) continue;  // capacity exhausted for this target
    std::stable_sort(avail.begin(), avail.end(),
                     [&](uint32_t a, uint32_t b) { return load[a] < load[b]; });
    for (uint32_t i = 0; i < need; ++i) {
      victims_of[avail[i]].push_back(target);
      ++load[avail[i]];
    }
    plan.targets.push_back(target);
  }

  for (auto& [responder, victims] : victims_of) {
    std::sort(victims.begin(), victims.end());
    plan.requests.push_back({responder, RecoveryRequestMsg{std::move(victims)}});
  }
  return plan;
}

HarvestResult harvest_disguised(const ServerState& st, const DisguisePlan& plan,
                                std::span<const std::pair<uint32_t, RecoveryResponseMsg>> responses,
                                std::span<const std::pair<uint32_t, RecoveryRefusalMsg>> refusals,
                                std::span<const DecryptorState> committee_states,
                                std::span<const uint32_t> colluding_decryptors,
                                const ProtocolParams& params) {
  HarvestResult out;
  out.refusals = static_cast<uint32_t>(refusals.size());
  const std::set<uint32_t> targets(plan.targets.begin(), plan.targets.end());

  // pool[(victim, client index)]: shares keyed by holder so duplicates
  // collapse instead of padding the count.
  std::map<std::pair<uint32_t, size_t>, std::map<uint32_t, SecretShare>> pool;

  // Colluding committee members decrypt their retained columns outright.
  for (uint32_t w : colluding_decryptors) {
    const auto& ds = committee_states[index_in(st.committee, w)];
    if (ds.forward.reports.empty()) continue;  // colluder never got a forward
    for (uint32_t target : plan.targets) {
      const size_t oi = index_in(st.committee, target);
      for (size_t c = 0; c < st.clients.size(); ++c) {
        Bytes pt;
        try {
          pt = sym_decrypt(ds.client_keys[c].sym_key, ds.forward.reports[c].pair_cts[oi]);
        } catch (const CryptoError&) {
          continue;
        }
        SecretShare share = decode_share(pt, params.share_prime);
        pool[{target, c}].emplace(share.holder, std::move(share));
      }
    }
  }

  for (const auto& [responder, resp] : responses) {
    (void)responder;
    for (const auto& vs : resp.victims) {
      if (!targets.count(vs.victim)) continue;
      for (const auto& entry : vs.shares) {
        const size_t c = index_in(st.clients, entry.client);
        pool[{vs.victim, c}].emplace(entry.share.holder, entry.share);
        ++out.honest_share_units;
      }
    }
  }

  for (uint32_t target : plan.targets) {
    std::vector<Seed> seeds;
    bool complete = true;
    for (size_t c = 0; c < st.clients.size(); ++c) {
      auto it = pool.find({target, c});
      if (it == pool.end() || it->second.size() < params.ell) {
        complete = false;
        break;
      }
      std::vector<SecretShare> shares;
      shares.reserve(it->second.size());
      for (auto& [holder, share] : it->second) shares.push_back(share);
      seeds.push_back(
          field_to_seed(ss_recon(shares, params.ell, params.share_prime), params.kappa_bits));
    }
    if (complete) out.recovered[target] = std::move(seeds);
  }
  return out;
}

namespace {

// Lazily built PRG streams per (client index, committee index) pair.
class SeedOracle {
 public:
  SeedOracle(const AdversaryView& v, const ProtocolParams& params)
      : v_(v), params_(params),
        colluding_clients_(v.colluding_clients.begin(), v.colluding_clients.end()),
        colluding_decryptors_(v.colluding_decryptors.begin(), v.colluding_decryptors.end()) {}

  // The coalition's copy of the pairwise seed between client c and
  // committee member ui, if it holds one.
  const PrgStream* stream(size_t c, size_t ui) {
    const uint64_t key = (static_cast<uint64_t>(c) << 32) | ui;
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second ? &*it->second : nullptr;

    const ServerState& sv = *v_.server;
    const uint32_t client_id = sv.clients[c];
    const uint32_t dec_id = sv.committee[ui];
    const Seed* seed = nullptr;
    if (colluding_decryptors_.count(dec_id)) {
      seed = &v_.decryptor_states[ui].client_keys[c].seed;
    } else if (colluding_clients_.count(client_id)) {
      seed = &v_.client_states[c].committee_keys[ui].seed;
    } else if (auto rit = sv.recovered_pair_seeds.find(dec_id);
               rit != sv.recovered_pair_seeds.end() && c < rit->second.size()) {
      // An aborted recovery can leave a prefix of the seed list; whatever
      // was reconstructed before the abort still counts as known.
      seed = &rit->second[c];
    } else if (v_.harvested_seeds) {
      if (auto hit = v_.harvested_seeds->find(dec_id); hit != v_.harvested_seeds->end())
        seed = &hit->second[c];
    }
    auto [pos, inserted] = cache_.emplace(
        key, seed ? std::optional<PrgStream>(PrgStream(*seed, params_.ring_width))
                  : std::nullopt);
    (void)inserted;
    return pos->second ? &*pos->second : nullptr;
  }

 private:
  const AdversaryView& v_;
  const ProtocolParams& params_;
  std::set<uint32_t> colluding_clients_, colluding_decryptors_;
  std::map<uint64_t, std::optional<PrgStream>> cache_;
};

}  // namespace

LeakageReport measure_leakage(const AdversaryView& v, const MaskScope& scope,
                              const ProtocolParams& params) {
  const ServerState& sv = *v.server;
  const size_t n_scope = scope.size();
  const size_t n_clients = sv.clients.size();
  const uint64_t mask = sv.aggregate.mask();

  LeakageReport rep;
  rep.view_defined.assign(n_scope, 0);
  rep.view.assign(n_scope, 0);
  rep.leaked.assign(n_scope, 0);

  // Referee side: true contribution structure from the plaintext updates.
  const std::set<uint32_t> colluding_clients(v.colluding_clients.begin(),
                                             v.colluding_clients.end());
  std::vector<std::vector<uint8_t>> truly(n_clients, std::vector<uint8_t>(n_scope, 0));
  std::vector<uint64_t> honest_sum(n_scope, 0);
  std::vector<uint32_t> honest_count(n_scope, 0), true_count(n_scope, 0);
  for (size_t c = 0; c < n_clients; ++c) {
    const bool colludes = colluding_clients.count(sv.clients[c]) != 0;
    for (uint32_t pos : indicator(v.updates[c], scope).positions) {
      truly[c][pos] = 1;
      ++true_count[pos];
      if (!colludes) {
        ++honest_count[pos];
        honest_sum[pos] = (honest_sum[pos] + v.updates[c].at(scope.index_at(pos))) & mask;
      }
    }
  }
  // Privacy is owed to positions with at least one but fewer than t honest
  // contributors.  (Positions with t <= honest < t_prime may legitimately
  // open once colluders pad the count: t_prime budgets exactly for that.)
  for (size_t pos = 0; pos < n_scope; ++pos)
    if (honest_count[pos] >= 1 && honest_count[pos] < params.t)
      ++rep.below_threshold_total;

  // Without every individual seed the dense layer never comes off; the
  // server only has them once the unmask phase reconstructed them all.
  if (sv.recon_individual_seeds.size() != n_clients) return rep;

  auto claimed = build_contributors(sv.indicators, scope);
  std::map<uint32_t, const ElementMaskVector*> emk_of;
  for (size_t r = 0; r < sv.unmask_responders.size(); ++r)
    emk_of[sv.unmask_responders[r]] = &sv.emks[r];

  std::vector<PrgStream> individual;
  individual.reserve(n_clients);
  for (const Seed& s : sv.recon_individual_seeds) individual.emplace_back(s, params.ring_width);

  SeedOracle seeds(v, params);

  for (size_t pos = 0; pos < n_scope; ++pos) {
    // A position nobody flagged holds no contribution sum to estimate.
    if (claimed[pos].empty() && true_count[pos] == 0) continue;
    const uint32_t idx = scope.index_at(pos);
    uint64_t est = sv.aggregate.at(idx);
    for (auto& stream : individual) est = (est - stream.element(idx)) & mask;

    bool defined = true;
    for (size_t ui = 0; ui < sv.committee.size() && defined; ++ui) {
      const uint32_t dec_id = sv.committee[ui];
      const auto eit = emk_of.find(dec_id);
      const ElementMaskVector* emk = eit == emk_of.end() ? nullptr : eit->second;
      if (emk && emk->present[pos]) {
        est = (est - emk->values[pos]) & mask;
        // The released sum ran over the claimed set; forged entries with a
        // known seed get corrected back, unknown ones stay as residue.
        for (uint32_t id : claimed[pos]) {
          const size_t c = std::lower_bound(sv.clients.begin(), sv.clients.end(), id) -
                           sv.clients.begin();
          if (truly[c][pos]) continue;
          if (const PrgStream* s = seeds.stream(c, ui))
            est = (est + s->element(idx)) & mask;
        }
      } else {
        // No released value: rebuild this member's mask over the true
        // contributors, which takes a known seed for every one of them.
        for (uint32_t id : claimed[pos]) {
          const size_t c = std::lower_bound(sv.clients.begin(), sv.clients.end(), id) -
                           sv.clients.begin();
          if (!truly[c][pos]) continue;
          const PrgStream* s = seeds.stream(c, ui);
          if (!s) {
            defined = false;
            break;
          }
          est = (est - s->element(idx)) & mask;
        }
      }
    }
    if (!defined) continue;

    for (size_t c = 0; c < n_clients; ++c)
      if (truly[c][pos] && colluding_clients.count(sv.clients[c]))
        est = (est - v.updates[c].at(idx)) & mask;

    rep.view_defined[pos] = 1;
    rep.view[pos] = est;
    if (honest_count[pos] >= 1 && est == honest_sum[pos]) {
      rep.leaked[pos] = 1;
      if (honest_count[pos] < params.t) ++rep.below_threshold_leaked;
    }
  }
  return rep;
}

}  // namespace pesagg
