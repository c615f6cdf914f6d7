// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: run one simulated round, sweep a parameter axis,
// tabulate the committee share-count grid, or verify a recorded transcript.
// Exit codes: 0 success, 1 the protocol aborted (or a replay diverged),
// 2 the configuration failed validation.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "pesagg/experiment.hpp"

namespace {

using namespace pesagg;

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitAbort = 1;
constexpr int kExitInvalid = 2;

std::string resolve_out_dir(const std::string& flag, const std::string& from_config) {
  if (!flag.empty()) return flag;
  if (!from_config.empty()) return from_config;
  if (const char* env = std::getenv("PESAGG_OUT_DIR"); env && *env) return env;
  return ".";
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

void write_file(const fs::path& path, const Bytes& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

int cmd_run(const std::string& config_path, const std::string& out_flag, bool force_transcript) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  const fs::path out_dir = resolve_out_dir(out_flag, cfg.out_dir);
  fs::create_directories(out_dir);

  Timer timer;
  RoundResult res = run_round(cfg.round);
  std::cerr << "round finished in " << timer.seconds() << "s\n";

  write_file(out_dir / "result.json", result_json(cfg.round, res));
  write_file(out_dir / "ledger.csv", ledger_csv(res.ledger, cfg.round.round));
  if (cfg.write_transcript || force_transcript)
    write_file(out_dir / "transcript.bin", res.transcript.encode());
  std::cout << "artifacts in " << out_dir.string() << "\n";

  if (!res.completed()) {
    std::cerr << "abort at " << phase_name(res.abort->phase) << ": " << res.abort->cause << "\n";
    return kExitAbort;
  }
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_flag) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  if (!cfg.sweep.has_value()) throw ValidationError("sweep: block required");
  const fs::path out_dir = resolve_out_dir(out_flag, cfg.out_dir);
  fs::create_directories(out_dir);

  Timer timer;
  auto points = run_sweep(cfg);
  std::cerr << points.size() << " points in " << timer.seconds() << "s\n";

  write_file(out_dir / "sweep.csv", sweep_csv(cfg.sweep->axis, points));
  std::cout << "artifacts in " << out_dir.string() << "\n";

  for (const auto& pt : points)
    if (!pt.completed) {
      std::cerr << cfg.sweep->axis << "=" << pt.value << " did not complete: " << pt.abort_cause
                << "\n";
      return kExitAbort;
    }
  return kExitOk;
}

int cmd_theorem_sweep(const std::string& config_path, const std::string& out_flag,
                      TheoremSweepSpec spec, bool spec_from_flags) {
  std::string config_out;
  if (!config_path.empty()) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    config_out = cfg.out_dir;
    if (cfg.theorem_sweep.has_value() && !spec_from_flags) spec = *cfg.theorem_sweep;
  }
  const fs::path out_dir = resolve_out_dir(out_flag, config_out);
  fs::create_directories(out_dir);
  write_file(out_dir / "theorem_sweep.csv", theorem_sweep_csv(spec));
  std::cout << "artifacts in " << out_dir.string() << "\n";
  return kExitOk;
}

int cmd_replay(const std::string& config_path, const std::string& transcript_path) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  Bytes expected = read_file(transcript_path);
  ReplayReport rep = replay_round(cfg.round, expected);
  if (rep.match) {
    std::cout << "transcript matches (" << rep.produced_bytes << " bytes)\n";
    return kExitOk;
  }
  std::cerr << "transcript mismatch: produced " << rep.produced_bytes << " bytes, expected "
            << rep.expected_bytes << ", first divergence at byte " << rep.first_divergence
            << "\n";
  return kExitAbort;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"per-element secure aggregation simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir, transcript_path;
  bool force_transcript = false;
  TheoremSweepSpec spec;

  CLI::App* run = app.add_subcommand("run", "simulate one round");
  run->add_option("--config", config_path, "experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "artifact directory");
  run->add_flag("--transcript", force_transcript, "also write transcript.bin");

  CLI::App* sweep = app.add_subcommand("sweep", "run every point on the configured axis");
  sweep->add_option("--config", config_path, "experiment config with a sweep block")->required();
  sweep->add_option("--out", out_dir, "artifact directory");

  CLI::App* theorem = app.add_subcommand("theorem-sweep", "tabulate the committee grid");
  theorem->add_option("--config", config_path, "experiment config (optional)");
  theorem->add_option("--out", out_dir, "artifact directory");
  CLI::Option* dmin = theorem->add_option("--d-min", spec.d_min, "smallest committee");
  theorem->add_option("--d-max", spec.d_max, "largest committee");
  theorem->add_option("--grid-step", spec.grid_step, "rate grid step, hundredths");

  CLI::App* replay = app.add_subcommand("replay", "re-run and compare against a transcript");
  replay->add_option("--config", config_path, "experiment config (JSON)")->required();
  replay->add_option("--transcript", transcript_path, "recorded transcript.bin")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, force_transcript);
    if (sweep->parsed()) return cmd_sweep(config_path, out_dir);
    if (theorem->parsed())
      return cmd_theorem_sweep(config_path, out_dir, spec,
                               dmin->count() > 0 || spec.d_max != TheoremSweepSpec{}.d_max ||
                                   spec.grid_step != TheoremSweepSpec{}.grid_step);
    if (replay->parsed()) return cmd_replay(config_path, transcript_path);
  } catch (const pesagg::ValidationError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAbort;
  }
  return kExitOk;
}
