// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_EXPERIMENT_HPP_
#define PESAGG_EXPERIMENT_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pesagg/harness.hpp"

namespace pesagg {

// One axis swept across a value list; everything else held at the base
// configuration.
struct SweepSpec {
  std::string axis;  // clients | mask_rate | dropout_rate | t
  std::vector<double> values;

  bool operator==(const SweepSpec&) const = default;
};

struct TheoremSweepSpec {
  uint32_t d_min = 3, d_max = 200;
  uint32_t grid_step = 2;  // hundredths, for the (delta_d, eta_d) grid

  bool operator==(const TheoremSweepSpec&) const = default;
};

// A full experiment description as read from a config file: the resolved
// round plus optional sweep blocks and output preferences.
struct ExperimentConfig {
  RoundConfig round;
  std::string out_dir;  // empty: decided by the caller (flag or environment)
  bool write_transcript = false;
  std::optional<SweepSpec> sweep;
  std::optional<TheoremSweepSpec> theorem_sweep;
};

// Parses a JSON experiment description, filling desk-scale defaults for
// absent fields and validating everything it resolves.  Errors are
// ValidationErrors whose message starts with the offending field path,
// e.g. "params.mask_rate: must be in (0, 1]".
ExperimentConfig parse_experiment_json(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

// Run summary for artifacts: embeds the resolved configuration and master
// seed (a run is reproducible from its own summary), the outcome, leakage
// grades, and a digest of the revealed aggregate.
std::string result_json(const RoundConfig& cfg, const RoundResult& res);

// Ledger rows in the stable CSV schema, header included.
std::string ledger_csv(const CostLedger& ledger, uint32_t round);

// ---------------------------------------------------------------------------
// Parameter sweeps.

struct SweepPoint {
  double value = 0;
  bool completed = false;
  std::string abort_cause;       // empty when completed
  double revealed_fraction = 0;  // disclosed scope positions / scope size
  CostLedger ledger;
};

// Applies one axis value to a copy of the base round and runs it.  A
// failing point carries its abort or validation cause; the sweep caller
// keeps going either way.
SweepPoint run_sweep_point(const RoundConfig& base, const std::string& axis, double value);
std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg);

// One row per axis value: lead columns, then every ledger cell in
// role/phase/counter order.
std::string sweep_csv(const std::string& axis, std::span<const SweepPoint> points);

// Feasibility table of the committee-parameter derivation rule across
// committee sizes and rate grids.
std::string theorem_sweep_csv(const TheoremSweepSpec& spec);

// ---------------------------------------------------------------------------
// Index-overlap study.

// Mean fraction of scope positions whose contributor count reaches the
// release threshold derived for each t in the grid, over seeded rounds of
// the given index-overlap model.  Pure counting on the workload model; no
// protocol messages are exchanged.
std::vector<double> revealed_fraction_curve(WorkloadKind model, std::span<const uint32_t> t_grid,
                                            const ProtocolParams& base_params,
                                            const WorkloadConfig& base_workload, uint32_t runs,
                                            uint64_t master_seed);

// ---------------------------------------------------------------------------
// Replay.

struct ReplayReport {
  bool match = false;
  size_t produced_bytes = 0, expected_bytes = 0;
  size_t first_divergence = 0;  // byte offset; meaningful when !match
};

// Re-executes the round and diffs the produced transcript bytes against a
// stored encoding.
ReplayReport replay_round(const RoundConfig& cfg, std::span<const uint8_t> transcript_bytes);

}  // namespace pesagg

#endif  // PESAGG_EXPERIMENT_HPP_
