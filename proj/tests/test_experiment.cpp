// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <sstream>

#include "json.hpp"

#include "pesagg/experiment.hpp"

using namespace pesagg;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_experiment_json(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string f;
  while (std::getline(in, f, ',')) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("an empty config resolves to the documented defaults") {
  ExperimentConfig cfg = parse_experiment_json("{}");
  const ProtocolParams& p = cfg.round.params;
  CHECK(p.clients == 64);
  CHECK(p.decryptors == 12);
  CHECK(p.vector_len == 65536);
  CHECK(p.scope_len == 6554);  // one tenth of the vector, rounded
  CHECK(p.t == 3);
  CHECK(p.eta_c_hundredths == 10);
  CHECK(p.eta_d_hundredths == 3);
  CHECK(p.delta_d_hundredths == 10);
  CHECK(p.neighbors == 6);  // log2 of the client count
  CHECK(p.ring_width == 32);
  CHECK(p.frac_bits == 16);
  CHECK(p.kappa_bits == 128);
  CHECK(cfg.round.workload.kind == WorkloadKind::kSparsify);
  CHECK(cfg.round.workload.keep_fraction == doctest::Approx(0.05));
  CHECK(cfg.round.master_seed == 1);
  CHECK(cfg.round.round == 1);
  CHECK(cfg.round.population == 0);
  CHECK_FALSE(cfg.round.randomize_delivery);
  CHECK_FALSE(cfg.round.adversary.enabled());
  CHECK(cfg.round.dropouts.empty());
  CHECK_FALSE(cfg.sweep.has_value());
  CHECK_FALSE(cfg.theorem_sweep.has_value());
  CHECK_FALSE(cfg.write_transcript);
}

TEST_CASE("config fields parse into the round description") {
  ExperimentConfig cfg = parse_experiment_json(R"({
    "params": {"clients": 6, "decryptors": 9, "t": 2, "vector_len": 32,
               "scope_len": 8, "neighbors": 3},
    "workload": {"kind": "fill", "density": 0.5},
    "adversary": {"colluding_decryptors": [1, 2], "withhold_element_masks": true},
    "dropouts": [{"decryptor": 4, "at": "recovery"}],
    "master_seed": 77, "round": 3, "randomize_delivery": true, "delivery_seed": 5,
    "write_transcript": true, "out_dir": "/tmp/x"
  })");
  CHECK(cfg.round.params.clients == 6);
  CHECK(cfg.round.params.scope_len == 8);
  CHECK(cfg.round.workload.kind == WorkloadKind::kFill);
  CHECK(cfg.round.adversary.colluding_decryptors == std::vector<uint32_t>{1, 2});
  CHECK(cfg.round.adversary.withhold_element_masks);
  REQUIRE(cfg.round.dropouts.size() == 1);
  CHECK(cfg.round.dropouts[0].decryptor == 4);
  CHECK(cfg.round.dropouts[0].at == Phase::kDropRecovery);
  CHECK(cfg.round.master_seed == 77);
  CHECK(cfg.round.round == 3);
  CHECK(cfg.round.randomize_delivery);
  CHECK(cfg.round.delivery_seed == 5);
  CHECK(cfg.write_transcript);
  CHECK(cfg.out_dir == "/tmp/x");
}

TEST_CASE("validation failures name the offending field") {
  CHECK(error_of("not json") == "config: not valid JSON");
  CHECK(error_of("[1]") == "config: expected a JSON object");
  CHECK(error_of(R"({"bogus": 1})") == "config.bogus: unknown field");
  CHECK(error_of(R"({"params": {"mask_rate": 0.0}})") ==
        "params.mask_rate: must be in (0, 1]");
  CHECK(error_of(R"({"params": {"mask_rate": 1.5}})") ==
        "params.mask_rate: must be in (0, 1]");
  CHECK(error_of(R"({"params": {"scope_len": 8, "mask_rate": 0.1}})") ==
        "params.scope_len: give either scope_len or mask_rate, not both");
  CHECK(error_of(R"({"params": {"eta_c": 1.0}})") == "params.eta_c: must be in [0, 1)");
  CHECK(error_of(R"({"params": {"clients": -3}})") ==
        "params.clients: expected a non-negative integer");
  CHECK(error_of(R"({"workload": {"sparsity": 1.0}})") ==
        "workload.sparsity: must be in [0, 1)");
  CHECK(error_of(R"({"workload": {"sparsity": 0.5, "keep_fraction": 0.5}})") ==
        "workload.keep_fraction: give either keep_fraction or sparsity, not both");
  CHECK(error_of(R"({"workload": {"kind": "dense"}})") ==
        "workload.kind: one of sparsify, fill, shared-popularity, client-popularity");
  CHECK(error_of(R"({"dropouts": [{"decryptor": 1, "at": "setup"}]})") ==
        "dropouts[0].at: one of unmask, recovery");
  CHECK(error_of(R"({"dropouts": [{"at": "unmask"}]})") == "dropouts[0].decryptor: required");
  CHECK(error_of(R"({"sweep": {"axis": "neighbors", "values": [1]}})") ==
        "sweep.axis: one of clients, mask_rate, dropout_rate, t");
  CHECK(error_of(R"({"sweep": {"axis": "t", "values": []}})") ==
        "sweep.values: expected a non-empty array of numbers");
  CHECK(error_of(R"({"theorem_sweep": {"grid_step": 0}})") ==
        "theorem_sweep.grid_step: must be at least 1");
  // Parameter derivation errors surface under the params block.
  CHECK(error_of(R"({"params": {"t": 1}})").substr(0, 8) == "params: ");
  // A sparsity request maps onto the kept fraction.
  ExperimentConfig cfg = parse_experiment_json(R"({"workload": {"sparsity": 0.95}})");
  CHECK(cfg.round.workload.keep_fraction == doctest::Approx(0.05));
}

TEST_CASE("a completed round serializes into a result document") {
  ExperimentConfig cfg = parse_experiment_json(R"({
    "params": {"clients": 5, "decryptors": 6, "t": 2, "vector_len": 32,
               "scope_len": 8, "neighbors": 3},
    "workload": {"kind": "fill", "density": 0.5},
    "master_seed": 7
  })");
  RoundResult res = run_round(cfg.round);
  REQUIRE(res.completed());

  const std::string text = result_json(cfg.round, res);
  nlohmann::json doc = nlohmann::json::parse(text);
  CHECK(doc["schema"] == "pesagg.run.v1");
  CHECK(doc["config"]["params"]["clients"] == 5);
  CHECK(doc["config"]["master_seed"] == 7);
  CHECK(doc["outcome"]["completed"] == true);
  CHECK(doc["outcome"]["abort"].is_null());
  CHECK(doc["outcome"]["committee"].size() == 6);
  CHECK(doc["outcome"]["clients"].size() == 5);
  const double frac = doc["outcome"]["revealed"]["revealed_fraction"];
  CHECK(frac >= 0.0);
  CHECK(frac <= 1.0);
  CHECK(doc["outcome"]["revealed"]["digest"].get<std::string>().size() == 16);
  CHECK(doc["leakage"]["below_threshold_leaked"] == 0);

  // Identical rounds produce identical documents; the digest pins the
  // revealed values, so any change there must show.
  RoundResult again = run_round(cfg.round);
  CHECK(result_json(cfg.round, again) == text);

  const std::string csv = ledger_csv(res.ledger, cfg.round.round);
  auto rows = lines_of(csv);
  REQUIRE(rows.size() == 1 + kRoleCount * kPhaseCount * kCounterCount);
  CHECK(rows[0] == CostLedger::csv_header());
  CHECK(fields_of(rows[1]).size() == 5);
}

TEST_CASE("replay verification flags the first diverging byte") {
  ExperimentConfig cfg = parse_experiment_json(R"({
    "params": {"clients": 5, "decryptors": 6, "t": 2, "vector_len": 32,
               "scope_len": 8, "neighbors": 3},
    "workload": {"kind": "fill", "density": 0.5},
    "master_seed": 11
  })");
  RoundResult res = run_round(cfg.round);
  REQUIRE(res.completed());
  Bytes wire = res.transcript.encode();
  REQUIRE(wire.size() > 16);

  ReplayReport ok = replay_round(cfg.round, wire);
  CHECK(ok.match);
  CHECK(ok.produced_bytes == wire.size());
  CHECK(ok.expected_bytes == wire.size());

  Bytes tampered = wire;
  tampered[10] ^= 0x01;
  ReplayReport bad = replay_round(cfg.round, tampered);
  CHECK_FALSE(bad.match);
  CHECK(bad.first_divergence == 10);

  Bytes truncated(wire.begin(), wire.end() - 4);
  ReplayReport cut = replay_round(cfg.round, truncated);
  CHECK_FALSE(cut.match);
  CHECK(cut.first_divergence == truncated.size());
}

TEST_CASE("a client sweep runs each point and reports its ledger") {
  ExperimentConfig cfg = parse_experiment_json(R"({
    "params": {"clients": 4, "decryptors": 9, "t": 2, "vector_len": 32,
               "scope_len": 8, "neighbors": 3},
    "workload": {"kind": "fill", "density": 0.5},
    "master_seed": 21,
    "sweep": {"axis": "clients", "values": [4, 8]}
  })");
  auto points = run_sweep(cfg);
  REQUIRE(points.size() == 2);
  for (const auto& pt : points) {
    CHECK(pt.completed);
    CHECK(pt.abort_cause.empty());
    CHECK(pt.revealed_fraction >= 0.0);
    CHECK(pt.revealed_fraction <= 1.0);
  }
  // More clients, more server-side aggregation work.
  CHECK(points[1].ledger.get(Role::kServer, Phase::kReport, Counter::kRingOps) >
        points[0].ledger.get(Role::kServer, Phase::kReport, Counter::kRingOps));

  const std::string csv = sweep_csv("clients", points);
  auto rows = lines_of(csv);
  REQUIRE(rows.size() == 3);
  auto header = fields_of(rows[0]);
  REQUIRE(header.size() == 5 + kRoleCount * kPhaseCount * kCounterCount);
  CHECK(header[0] == "axis");
  CHECK(header[1] == "value");
  CHECK(header[2] == "completed");
  CHECK(header[3] == "abort_cause");
  CHECK(header[4] == "revealed_fraction");
  CHECK(header[5] == "client_setup_prf_evals");
  CHECK(header.back() == "decryptor_droprcv_bytes_received");
  auto row = fields_of(rows[1]);
  CHECK(row[0] == "clients");
  CHECK(row[1] == "4");
  CHECK(row[2] == "true");
}

TEST_CASE("a dropout-rate sweep schedules the committee prefix itself") {
  ExperimentConfig cfg = parse_experiment_json(R"({
    "params": {"clients": 4, "decryptors": 12, "t": 2, "vector_len": 32,
               "scope_len": 8, "neighbors": 3},
    "workload": {"kind": "fill", "density": 0.5},
    "master_seed": 31,
    "sweep": {"axis": "dropout_rate", "values": [0.0, 0.25]}
  })");
  auto points = run_sweep(cfg);
  REQUIRE(points.size() == 2);
  CHECK(points[0].completed);
  CHECK(points[1].completed);
  // No dropouts: the recovery phase never runs.
  for (size_t r = 0; r < kRoleCount; ++r)
    for (size_t c = 0; c < kCounterCount; ++c)
      CHECK(points[0].ledger.get(static_cast<Role>(r), Phase::kDropRecovery,
                                 static_cast<Counter>(c)) == 0);
  // A quarter of twelve drop; shares flow from the survivors and the
  // collector pays for the reconstruction.
  CHECK(points[1].ledger.get(Role::kDecryptor, Phase::kDropRecovery, Counter::kBytesSent) > 0);
  CHECK(points[1].ledger.get(Role::kServer, Phase::kDropRecovery, Counter::kShareOps) > 0);
}

TEST_CASE("an out-of-budget sweep point aborts without stopping the sweep") {
  ExperimentConfig cfg = parse_experiment_json(R"({
    "params": {"clients": 4, "decryptors": 12, "t": 2, "vector_len": 32,
               "scope_len": 8, "neighbors": 3},
    "workload": {"kind": "fill", "density": 0.5},
    "master_seed": 41,
    "sweep": {"axis": "dropout_rate", "values": [0.45, 0.1]}
  })");
  auto points = run_sweep(cfg);
  REQUIRE(points.size() == 2);
  CHECK_FALSE(points[0].completed);
  CHECK_FALSE(points[0].abort_cause.empty());
  CHECK(points[1].completed);

  const std::string csv = sweep_csv("dropout_rate", points);
  auto rows = lines_of(csv);
  REQUIRE(rows.size() == 3);
  CHECK(fields_of(rows[1])[2] == "false");
  CHECK(fields_of(rows[2])[2] == "true");
}

TEST_CASE("threshold and mask-rate axes adjust the derived scope") {
  ExperimentConfig cfg = parse_experiment_json(R"({
    "params": {"clients": 6, "decryptors": 9, "t": 2, "vector_len": 32,
               "scope_len": 8, "neighbors": 3},
    "workload": {"kind": "fill", "density": 0.5},
    "master_seed": 51
  })");
  SweepPoint low_t = run_sweep_point(cfg.round, "t", 2);
  SweepPoint high_t = run_sweep_point(cfg.round, "t", 4);
  CHECK(low_t.completed);
  CHECK(high_t.completed);
  // Raising the release threshold can only hide positions.
  CHECK(high_t.revealed_fraction <= low_t.revealed_fraction);

  SweepPoint narrow = run_sweep_point(cfg.round, "mask_rate", 0.25);
  SweepPoint wide = run_sweep_point(cfg.round, "mask_rate", 0.5);
  CHECK(narrow.completed);
  CHECK(wide.completed);
  // A wider scope means more per-element mask material.
  CHECK(wide.ledger.get(Role::kDecryptor, Phase::kUnmask, Counter::kPrgElements) >
        narrow.ledger.get(Role::kDecryptor, Phase::kUnmask, Counter::kPrgElements));
}

TEST_CASE("the committee grid table matches hand-derived rows") {
  // Single committee size: every row inherits the same share geometry.
  TheoremSweepSpec one{40, 40, 10};
  auto rows = lines_of(theorem_sweep_csv(one));
  REQUIRE(rows.size() > 1);
  CHECK(rows[0] == "decryptors,delta_d,eta_d,ell,delta_max,recovery_feasible,security_holds");
  for (size_t i = 1; i < rows.size(); ++i) {
    auto f = fields_of(rows[i]);
    REQUIRE(f.size() == 7);
    CHECK(f[0] == "40");
    CHECK(f[3] == "27");  // two thirds of forty, floored, plus one
    CHECK(f[4] == "14");  // half of that, rounded up
  }

  // An inverted range yields just the header.
  auto empty = lines_of(theorem_sweep_csv(TheoremSweepSpec{10, 5, 2}));
  REQUIRE(empty.size() == 1);
}

TEST_CASE("the full grid exposes the known failure pocket") {
  // Committee sizes three through two hundred on a 0.02 rate grid: the
  // floor-based share-count rule admits exactly twenty grid points where
  // recovery capacity reaches the security bound, all at sizes one above
  // a multiple of three.
  auto rows = lines_of(theorem_sweep_csv(TheoremSweepSpec{3, 200, 2}));
  REQUIRE(rows.size() > 1);
  std::map<uint32_t, int> failures_by_d;
  int total = 0;
  for (size_t i = 1; i < rows.size(); ++i) {
    auto f = fields_of(rows[i]);
    REQUIRE(f.size() == 7);
    CHECK(f[5] == "true");  // recovery stays feasible across the budget box
    if (f[6] == "false") {
      ++total;
      ++failures_by_d[static_cast<uint32_t>(std::stoul(f[0]))];
    }
  }
  CHECK(total == 20);
  const std::map<uint32_t, int> expected{{4, 10}, {7, 3},  {10, 2}, {13, 1},
                                         {16, 1}, {19, 1}, {22, 1}, {25, 1}};
  CHECK(failures_by_d == expected);
}

TEST_CASE("revealed-fraction curves are deterministic and monotone in t") {
  ProtocolParams p;
  p.clients = 12;
  p.decryptors = 9;
  p.neighbors = 3;
  p.vector_len = 64;
  p.scope_len = 16;
  p.t = 2;
  p.eta_c_hundredths = 10;
  p.eta_d_hundredths = 3;
  p.delta_d_hundredths = 10;
  WorkloadConfig w;
  w.kind = WorkloadKind::kSharedPopularity;
  w.nnz = 8;

  const std::vector<uint32_t> grid{2, 3, 4, 5};
  auto curve = revealed_fraction_curve(WorkloadKind::kSharedPopularity, grid, p, w, 3, 99);
  REQUIRE(curve.size() == grid.size());
  for (size_t i = 0; i < curve.size(); ++i) {
    CHECK(curve[i] >= 0.0);
    CHECK(curve[i] <= 1.0);
    if (i) CHECK(curve[i] <= curve[i - 1]);
  }
  auto again = revealed_fraction_curve(WorkloadKind::kSharedPopularity, grid, p, w, 3, 99);
  CHECK(again == curve);

  auto skewed = revealed_fraction_curve(WorkloadKind::kClientPopularity, grid, p, w, 3, 99);
  REQUIRE(skewed.size() == grid.size());
  for (double v : skewed) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}
