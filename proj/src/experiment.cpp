// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/experiment.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "pesagg/indicator.hpp"

namespace pesagg {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ValidationError(path + ": " + msg);
}

void require_known_keys(const json& obj, const std::string& path,
                        std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end())
      fail(path + "." + key, "unknown field");
  }
}

const json* maybe(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

uint64_t get_u64(const json& obj, const std::string& path, const char* key, uint64_t def) {
  const json* v = maybe(obj, key);
  if (!v) return def;
  if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() &&
                                  v->get<int64_t>() < 0))
    fail(path + "." + key, "expected a non-negative integer");
  return v->get<uint64_t>();
}

uint32_t get_u32(const json& obj, const std::string& path, const char* key, uint32_t def) {
  const uint64_t v = get_u64(obj, path, key, def);
  if (v > UINT32_MAX) fail(path + "." + key, "value too large");
  return static_cast<uint32_t>(v);
}

double get_num(const json& obj, const std::string& path, const char* key, double def) {
  const json* v = maybe(obj, key);
  if (!v) return def;
  if (!v->is_number()) fail(path + "." + key, "expected a number");
  return v->get<double>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool def) {
  const json* v = maybe(obj, key);
  if (!v) return def;
  if (!v->is_boolean()) fail(path + "." + key, "expected a boolean");
  return v->get<bool>();
}

std::string get_str(const json& obj, const std::string& path, const char* key,
                    const std::string& def) {
  const json* v = maybe(obj, key);
  if (!v) return def;
  if (!v->is_string()) fail(path + "." + key, "expected a string");
  return v->get<std::string>();
}

// Rates live in the config as decimals and in the params as exact
// hundredths; the round-trip is exact for two-digit inputs.
uint32_t rate_hundredths(const json& obj, const std::string& path, const char* key,
                         uint32_t def_hundredths) {
  const json* v = maybe(obj, key);
  if (!v) return def_hundredths;
  if (!v->is_number()) fail(path + "." + key, "expected a number");
  const double r = v->get<double>();
  if (r < 0.0 || r >= 1.0) fail(path + "." + key, "must be in [0, 1)");
  return static_cast<uint32_t>(std::llround(r * 100.0));
}

std::vector<uint32_t> get_id_list(const json& obj, const std::string& path, const char* key) {
  const json* v = maybe(obj, key);
  if (!v) return {};
  if (!v->is_array()) fail(path + "." + key, "expected an array of ids");
  std::vector<uint32_t> ids;
  for (const auto& e : *v) {
    if (!e.is_number_integer() || e.get<int64_t>() < 0 || e.get<int64_t>() > UINT32_MAX)
      fail(path + "." + key, "expected an array of ids");
    ids.push_back(e.get<uint32_t>());
  }
  return ids;
}

ProtocolParams parse_params(const json& root) {
  ProtocolParams p;
  const json* blk = maybe(root, "params");
  json empty = json::object();
  const json& j = blk ? *blk : empty;
  if (blk && !blk->is_object()) fail("params", "expected an object");
  require_known_keys(j, "params",
                     {"clients", "decryptors", "neighbors", "vector_len", "scope_len",
                      "mask_rate", "t", "eta_c", "eta_d", "delta_d", "ring_width", "frac_bits",
                      "kappa_bits"});

  p.clients = get_u32(j, "params", "clients", 64);
  p.decryptors = get_u32(j, "params", "decryptors", 12);
  const uint32_t default_neighbors =
      std::max<uint32_t>(1, static_cast<uint32_t>(std::llround(std::log2(
                                std::max<uint32_t>(2, p.clients)))));
  p.neighbors = get_u32(j, "params", "neighbors",
                        std::min(default_neighbors, p.clients > 1 ? p.clients - 1 : 1));
  p.vector_len = get_u32(j, "params", "vector_len", 65536);

  const json* scope = maybe(j, "scope_len");
  const json* rate = maybe(j, "mask_rate");
  if (scope && rate) fail("params.scope_len", "give either scope_len or mask_rate, not both");
  if (scope) {
    p.scope_len = get_u32(j, "params", "scope_len", 0);
  } else {
    const double mr = get_num(j, "params", "mask_rate", 0.10);
    if (mr <= 0.0 || mr > 1.0) fail("params.mask_rate", "must be in (0, 1]");
    p.scope_len = std::clamp<uint32_t>(
        static_cast<uint32_t>(std::llround(mr * p.vector_len)), 1, p.vector_len);
  }

  p.t = get_u32(j, "params", "t", 3);
  p.eta_c_hundredths = rate_hundredths(j, "params", "eta_c", 10);
  p.eta_d_hundredths = rate_hundredths(j, "params", "eta_d", 3);
  p.delta_d_hundredths = rate_hundredths(j, "params", "delta_d", 10);
  p.ring_width = get_u32(j, "params", "ring_width", 32);
  p.frac_bits = get_u32(j, "params", "frac_bits", 16);
  p.kappa_bits = get_u32(j, "params", "kappa_bits", 128);

  // Surface derivation problems at load time, with the block path attached.
  try {
    ProtocolParams probe = p;
    probe.derive();
  } catch (const ValidationError& e) {
    fail("params", e.what());
  }
  return p;
}

WorkloadConfig parse_workload(const json& root, const ProtocolParams& params) {
  WorkloadConfig w;
  w.kind = WorkloadKind::kSparsify;
  w.keep_fraction = 0.05;
  const json* blk = maybe(root, "workload");
  if (!blk) return w;
  if (!blk->is_object()) fail("workload", "expected an object");
  const json& j = *blk;
  require_known_keys(j, "workload",
                     {"kind", "density", "keep_fraction", "sparsity", "zipf_s", "weight_shape",
                      "nnz", "value_scale"});

  const std::string kind = get_str(j, "workload", "kind", "sparsify");
  try {
    w.kind = workload_kind_from_name(kind);
  } catch (const std::invalid_argument&) {
    fail("workload.kind", "one of sparsify, fill, shared-popularity, client-popularity");
  }

  w.density = get_num(j, "workload", "density", w.density);
  if (w.density < 0.0 || w.density > 1.0) fail("workload.density", "must be in [0, 1]");

  const json* keep = maybe(j, "keep_fraction");
  const json* sparsity = maybe(j, "sparsity");
  if (keep && sparsity)
    fail("workload.keep_fraction", "give either keep_fraction or sparsity, not both");
  if (sparsity) {
    const double s = get_num(j, "workload", "sparsity", 0.95);
    if (s < 0.0 || s >= 1.0) fail("workload.sparsity", "must be in [0, 1)");
    w.keep_fraction = 1.0 - s;
  } else {
    w.keep_fraction = get_num(j, "workload", "keep_fraction", w.keep_fraction);
    if (w.keep_fraction <= 0.0 || w.keep_fraction > 1.0)
      fail("workload.keep_fraction", "must be in (0, 1]");
  }

  w.zipf_s = get_num(j, "workload", "zipf_s", w.zipf_s);
  if (w.zipf_s < 0.0) fail("workload.zipf_s", "must be non-negative");
  w.weight_shape = get_num(j, "workload", "weight_shape", w.weight_shape);
  if (w.weight_shape <= 0.0) fail("workload.weight_shape", "must be positive");
  w.nnz = get_u32(j, "workload", "nnz", w.nnz);
  if (w.nnz == 0) fail("workload.nnz", "must be at least 1");
  if ((w.kind == WorkloadKind::kSharedPopularity || w.kind == WorkloadKind::kClientPopularity) &&
      w.nnz > params.scope_len)
    fail("workload.nnz", "exceeds the masked scope");
  w.value_scale = get_num(j, "workload", "value_scale", w.value_scale);
  if (w.value_scale <= 0.0) fail("workload.value_scale", "must be positive");
  return w;
}

AdversaryConfig parse_adversary(const json& root) {
  AdversaryConfig a;
  const json* blk = maybe(root, "adversary");
  if (!blk) return a;
  if (!blk->is_object()) fail("adversary", "expected an object");
  const json& j = *blk;
  require_known_keys(j, "adversary",
                     {"colluding_clients", "colluding_decryptors", "forge_indicators",
                      "forge_max_positions", "disguise_dropouts", "withhold_element_masks"});
  a.colluding_clients = get_id_list(j, "adversary", "colluding_clients");
  a.colluding_decryptors = get_id_list(j, "adversary", "colluding_decryptors");
  a.forge_indicators = get_bool(j, "adversary", "forge_indicators", false);
  a.forge_max_positions = get_u32(j, "adversary", "forge_max_positions", 1);
  if (a.forge_max_positions == 0) fail("adversary.forge_max_positions", "must be at least 1");
  a.disguise_dropouts = get_bool(j, "adversary", "disguise_dropouts", false);
  a.withhold_element_masks = get_bool(j, "adversary", "withhold_element_masks", false);
  return a;
}

std::vector<DropoutEvent> parse_dropouts(const json& root) {
  std::vector<DropoutEvent> out;
  const json* blk = maybe(root, "dropouts");
  if (!blk) return out;
  if (!blk->is_array()) fail("dropouts", "expected an array");
  for (size_t i = 0; i < blk->size(); ++i) {
    const json& e = (*blk)[i];
    const std::string path = "dropouts[" + std::to_string(i) + "]";
    if (!e.is_object()) fail(path, "expected an object");
    require_known_keys(e, path, {"decryptor", "at"});
    DropoutEvent ev;
    if (!maybe(e, "decryptor")) fail(path + ".decryptor", "required");
    ev.decryptor = get_u32(e, path, "decryptor", 0);
    const std::string at = get_str(e, path, "at", "unmask");
    if (at == "unmask")
      ev.at = Phase::kUnmask;
    else if (at == "recovery")
      ev.at = Phase::kDropRecovery;
    else
      fail(path + ".at", "one of unmask, recovery");
    out.push_back(ev);
  }
  return out;
}

std::optional<SweepSpec> parse_sweep(const json& root) {
  const json* blk = maybe(root, "sweep");
  if (!blk) return std::nullopt;
  if (!blk->is_object()) fail("sweep", "expected an object");
  require_known_keys(*blk, "sweep", {"axis", "values"});
  SweepSpec s;
  s.axis = get_str(*blk, "sweep", "axis", "");
  if (s.axis != "clients" && s.axis != "mask_rate" && s.axis != "dropout_rate" && s.axis != "t")
    fail("sweep.axis", "one of clients, mask_rate, dropout_rate, t");
  const json* vals = maybe(*blk, "values");
  if (!vals || !vals->is_array() || vals->empty())
    fail("sweep.values", "expected a non-empty array of numbers");
  for (const auto& v : *vals) {
    if (!v.is_number()) fail("sweep.values", "expected a non-empty array of numbers");
    s.values.push_back(v.get<double>());
  }
  return s;
}

std::optional<TheoremSweepSpec> parse_theorem_sweep(const json& root) {
  const json* blk = maybe(root, "theorem_sweep");
  if (!blk) return std::nullopt;
  if (!blk->is_object()) fail("theorem_sweep", "expected an object");
  require_known_keys(*blk, "theorem_sweep", {"d_min", "d_max", "grid_step"});
  TheoremSweepSpec t;
  t.d_min = get_u32(*blk, "theorem_sweep", "d_min", t.d_min);
  t.d_max = get_u32(*blk, "theorem_sweep", "d_max", t.d_max);
  t.grid_step = get_u32(*blk, "theorem_sweep", "grid_step", t.grid_step);
  if (t.d_min == 0) fail("theorem_sweep.d_min", "must be at least 1");
  if (t.grid_step == 0) fail("theorem_sweep.grid_step", "must be at least 1");
  return t;
}

uint64_t fnv1a(std::span<const uint8_t> bytes, uint64_t h = 1469598103934665603ull) {
  for (uint8_t b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

double rate_of(uint32_t hundredths) { return hundredths / 100.0; }

json config_json(const RoundConfig& cfg) {
  const ProtocolParams& p = cfg.params;
  json dropouts = json::array();
  for (const auto& ev : cfg.dropouts)
    dropouts.push_back({{"decryptor", ev.decryptor},
                        {"at", ev.at == Phase::kUnmask ? "unmask" : "recovery"}});
  return json{
      {"params",
       {{"clients", p.clients},
        {"decryptors", p.decryptors},
        {"neighbors", p.neighbors},
        {"vector_len", p.vector_len},
        {"scope_len", p.scope_len},
        {"t", p.t},
        {"eta_c", rate_of(p.eta_c_hundredths)},
        {"eta_d", rate_of(p.eta_d_hundredths)},
        {"delta_d", rate_of(p.delta_d_hundredths)},
        {"ring_width", p.ring_width},
        {"frac_bits", p.frac_bits},
        {"kappa_bits", p.kappa_bits}}},
      {"workload",
       {{"kind", workload_kind_name(cfg.workload.kind)},
        {"density", cfg.workload.density},
        {"keep_fraction", cfg.workload.keep_fraction},
        {"zipf_s", cfg.workload.zipf_s},
        {"weight_shape", cfg.workload.weight_shape},
        {"nnz", cfg.workload.nnz},
        {"value_scale", cfg.workload.value_scale}}},
      {"adversary",
       {{"colluding_clients", cfg.adversary.colluding_clients},
        {"colluding_decryptors", cfg.adversary.colluding_decryptors},
        {"forge_indicators", cfg.adversary.forge_indicators},
        {"forge_max_positions", cfg.adversary.forge_max_positions},
        {"disguise_dropouts", cfg.adversary.disguise_dropouts},
        {"withhold_element_masks", cfg.adversary.withhold_element_masks}}},
      {"dropouts", dropouts},
      {"master_seed", cfg.master_seed},
      {"round", cfg.round},
      {"population", cfg.population},
      {"randomize_delivery", cfg.randomize_delivery},
      {"delivery_seed", cfg.delivery_seed}};
}

}  // namespace

ExperimentConfig parse_experiment_json(const std::string& text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded()) fail("config", "not valid JSON");
  if (!root.is_object()) fail("config", "expected a JSON object");
  require_known_keys(root, "config",
                     {"params", "workload", "adversary", "dropouts", "master_seed", "round",
                      "population", "randomize_delivery", "delivery_seed", "out_dir",
                      "write_transcript", "sweep", "theorem_sweep"});

  ExperimentConfig cfg;
  cfg.round.params = parse_params(root);
  cfg.round.workload = parse_workload(root, cfg.round.params);
  cfg.round.adversary = parse_adversary(root);
  cfg.round.dropouts = parse_dropouts(root);
  cfg.round.master_seed = get_u64(root, "config", "master_seed", 1);
  cfg.round.round = get_u32(root, "config", "round", 1);
  cfg.round.population = get_u32(root, "config", "population", 0);
  cfg.round.randomize_delivery = get_bool(root, "config", "randomize_delivery", false);
  cfg.round.delivery_seed = get_u64(root, "config", "delivery_seed", 0);
  cfg.out_dir = get_str(root, "config", "out_dir", "");
  cfg.write_transcript = get_bool(root, "config", "write_transcript", false);
  cfg.sweep = parse_sweep(root);
  cfg.theorem_sweep = parse_theorem_sweep(root);
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("config", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_json(buf.str());
}

std::string result_json(const RoundConfig& cfg, const RoundResult& res) {
  ProtocolParams derived = cfg.params;
  derived.derive();
  const auto scope = MaskScope::prefix(derived.scope_len, derived.vector_len);

  json out;
  out["schema"] = "pesagg.run.v1";
  out["config"] = config_json(cfg);

  json outcome;
  outcome["completed"] = res.completed();
  if (res.abort.has_value())
    outcome["abort"] = {{"phase", phase_name(res.abort->phase)}, {"cause", res.abort->cause}};
  else
    outcome["abort"] = nullptr;
  outcome["committee"] = res.committee;
  outcome["clients"] = res.clients;
  outcome["victims"] = res.victims;
  if (res.revealed.has_value()) {
    size_t disclosed = 0;
    for (size_t pos = 0; pos < scope.size(); ++pos)
      if (res.revealed->disclosed[scope.index_at(pos)]) ++disclosed;
    const Bytes values = res.revealed->values.serialize();
    uint64_t digest = fnv1a(values);
    digest = fnv1a(res.revealed->disclosed, digest);
    outcome["revealed"] = {{"disclosed_scope_positions", disclosed},
                           {"revealed_fraction",
                            scope.size() ? static_cast<double>(disclosed) / scope.size() : 0.0},
                           {"digest", hex64(digest)}};
  } else {
    outcome["revealed"] = nullptr;
  }
  out["outcome"] = outcome;

  size_t leaked = 0;
  for (uint8_t f : res.leakage.leaked) leaked += f;
  out["leakage"] = {{"leaked_positions", leaked},
                    {"below_threshold_total", res.leakage.below_threshold_total},
                    {"below_threshold_leaked", res.leakage.below_threshold_leaked}};
  if (cfg.adversary.forge_indicators)
    out["forge"] = {{"positions", res.forge.positions.size()}};
  if (cfg.adversary.disguise_dropouts)
    out["harvest"] = {{"recovered_seed_sets", res.harvest.recovered.size()},
                      {"honest_share_units", res.harvest.honest_share_units},
                      {"refusals", res.harvest.refusals}};
  return out.dump(2) + "\n";
}

std::string ledger_csv(const CostLedger& ledger, uint32_t round) {
  return CostLedger::csv_header() + "\n" + ledger.to_csv(round);
}

SweepPoint run_sweep_point(const RoundConfig& base, const std::string& axis, double value) {
  SweepPoint point;
  point.value = value;
  try {
    RoundConfig cfg = base;
    if (axis == "clients") {
      if (value < 1) fail("sweep.values", "clients must be at least 1");
      cfg.params.clients = static_cast<uint32_t>(std::llround(value));
    } else if (axis == "mask_rate") {
      if (value <= 0.0 || value > 1.0) fail("sweep.values", "mask_rate must be in (0, 1]");
      cfg.params.scope_len = std::clamp<uint32_t>(
          static_cast<uint32_t>(std::llround(value * cfg.params.vector_len)), 1,
          cfg.params.vector_len);
    } else if (axis == "dropout_rate") {
      if (value < 0.0 || value >= 1.0) fail("sweep.values", "dropout_rate must be in [0, 1)");
      cfg.params.delta_d_hundredths = static_cast<uint32_t>(std::llround(value * 100.0));
      // The schedule itself scales with the rate: the first floor(rate * D)
      // committee members go silent before unmasking.
      cfg.dropouts.clear();
      const uint32_t n_drop = floor_rate(cfg.params.delta_d_hundredths, cfg.params.decryptors);
      if (n_drop > 0) {
        const uint32_t population =
            cfg.population ? cfg.population : cfg.params.clients + cfg.params.decryptors;
        Bytes public_r(32);
        DetRng rrng(cfg.master_seed, "round-randomness", cfg.round);
        rrng.fill(public_r);
        auto committee = select_committee(public_r, population, cfg.params.decryptors);
        for (uint32_t i = 0; i < n_drop; ++i)
          cfg.dropouts.push_back({committee[i], Phase::kUnmask});
      }
    } else if (axis == "t") {
      if (value < 2) fail("sweep.values", "t must be at least 2");
      cfg.params.t = static_cast<uint32_t>(std::llround(value));
    } else {
      fail("sweep.axis", "one of clients, mask_rate, dropout_rate, t");
    }

    auto res = run_round(cfg);
    point.completed = res.completed();
    point.ledger = res.ledger;
    if (res.abort.has_value())
      point.abort_cause = std::string(phase_name(res.abort->phase)) + ": " + res.abort->cause;
    if (res.revealed.has_value()) {
      ProtocolParams derived = cfg.params;
      derived.derive();
      const auto scope = MaskScope::prefix(derived.scope_len, derived.vector_len);
      size_t disclosed = 0;
      for (size_t pos = 0; pos < scope.size(); ++pos)
        if (res.revealed->disclosed[scope.index_at(pos)]) ++disclosed;
      point.revealed_fraction =
          scope.size() ? static_cast<double>(disclosed) / scope.size() : 0.0;
    }
  } catch (const ValidationError& e) {
    point.abort_cause = e.what();
  }
  return point;
}

std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg) {
  if (!cfg.sweep.has_value()) throw ValidationError("sweep: block required");
  std::vector<SweepPoint> points;
  points.reserve(cfg.sweep->values.size());
  for (double v : cfg.sweep->values) points.push_back(run_sweep_point(cfg.round, cfg.sweep->axis, v));
  return points;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string sweep_csv(const std::string& axis, std::span<const SweepPoint> points) {
  std::string out = "axis,value,completed,abort_cause,revealed_fraction";
  for (size_t r = 0; r < kRoleCount; ++r)
    for (size_t p = 0; p < kPhaseCount; ++p)
      for (size_t c = 0; c < kCounterCount; ++c) {
        out += ',';
        out += role_name(static_cast<Role>(r));
        out += '_';
        out += phase_name(static_cast<Phase>(p));
        out += '_';
        out += counter_name(static_cast<Counter>(c));
      }
  out += '\n';
  for (const auto& point : points) {
    out += csv_escape(axis);
    out += ',';
    out += format_double(point.value);
    out += ',';
    out += point.completed ? "true" : "false";
    out += ',';
    out += csv_escape(point.abort_cause);
    out += ',';
    out += format_double(point.revealed_fraction);
    for (size_t r = 0; r < kRoleCount; ++r)
      for (size_t p = 0; p < kPhaseCount; ++p)
        for (size_t c = 0; c < kCounterCount; ++c) {
          out += ',';
          out += std::to_string(point.ledger.get(static_cast<Role>(r), static_cast<Phase>(p),
                                                 static_cast<Counter>(c)));
        }
    out += '\n';
  }
  return out;
}

std::string theorem_sweep_csv(const TheoremSweepSpec& spec) {
  std::string out = "decryptors,delta_d,eta_d,ell,delta_max,recovery_feasible,security_holds\n";
  if (spec.d_min > spec.d_max) return out;
  for (const SweepRow& row : sweep_parameter_space(spec.d_min, spec.d_max, spec.grid_step)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%u,%.2f,%.2f,%u,%u,%s,%s\n", row.decryptors,
                  row.delta_d_hundredths / 100.0, row.eta_d_hundredths / 100.0, row.primary.ell,
                  row.primary.delta_max, row.primary.recovery_feasible ? "true" : "false",
                  row.primary.security_holds ? "true" : "false");
    out += buf;
  }
  return out;
}

std::vector<double> revealed_fraction_curve(WorkloadKind model, std::span<const uint32_t> t_grid,
                                            const ProtocolParams& base_params,
                                            const WorkloadConfig& base_workload, uint32_t runs,
                                            uint64_t master_seed) {
  if (runs == 0) throw ValidationError("runs: must be at least 1");
  WorkloadConfig workload = base_workload;
  workload.kind = model;

  // Release thresholds per grid entry, derived exactly as a round would.
  std::vector<uint32_t> thresholds;
  thresholds.reserve(t_grid.size());
  for (uint32_t t : t_grid) {
    ProtocolParams p = base_params;
    p.t = t;
    p.derive();
    thresholds.push_back(p.t_prime);
  }

  const auto scope = MaskScope::prefix(base_params.scope_len, base_params.vector_len);
  std::vector<double> acc(t_grid.size(), 0.0);
  for (uint32_t run = 0; run < runs; ++run) {
    std::vector<uint32_t> count(scope.size(), 0);
    for (uint32_t client = 0; client < base_params.clients; ++client) {
      RingVector x = make_update(workload, base_params, master_seed, client, run + 1);
      for (uint32_t pos : indicator(x, scope).positions) ++count[pos];
    }
    for (size_t ti = 0; ti < thresholds.size(); ++ti) {
      size_t hits = 0;
      for (uint32_t c : count)
        if (c >= thresholds[ti]) ++hits;
      acc[ti] += static_cast<double>(hits) / scope.size();
    }
  }
  for (double& a : acc) a /= runs;
  return acc;
}

ReplayReport replay_round(const RoundConfig& cfg, std::span<const uint8_t> transcript_bytes) {
  auto res = run_round(cfg);
  const Bytes produced = res.transcript.encode();
  ReplayReport rep;
  rep.produced_bytes = produced.size();
  rep.expected_bytes = transcript_bytes.size();
  const size_t n = std::min(produced.size(), transcript_bytes.size());
  size_t i = 0;
  while (i < n && produced[i] == transcript_bytes[i]) ++i;
  if (i == n && produced.size() == transcript_bytes.size()) {
    rep.match = true;
  } else {
    rep.match = false;
    rep.first_divergence = i;
  }
  return rep;
}

}  // namespace pesagg
