// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_WORKLOAD_HPP_
#define PESAGG_WORKLOAD_HPP_

#include <cstdint>
#include <string>

#include "pesagg/params.hpp"
#include "pesagg/ring.hpp"
#include "pesagg/rng.hpp"

namespace pesagg {

// Synthetic update generators.  All of them are deterministic in
// (master, client, round), so a round can be replayed bit-for-bit.
enum class WorkloadKind : uint8_t {
  // Dense gaussian vector, magnitude-thresholded at a quantile: the usual
  // top-k style sparsification, nonzeros land wherever the draw says.
  kSparsify = 0,
  // Every position nonzero independently with probability `density`; the
  // knob cost-scaling experiments turn.
  kFill = 1,
  // All clients share one popularity law over the masked prefix and draw
  // `nnz` positions from it: contributors pile up on the same indices.
  kSharedPopularity = 2,
  // Same popularity law but reweighted per client by heavy-tailed noise, so
  // each client effectively has its own favorites and contributor mass
  // disperses.
  kClientPopularity = 3,
};

const char* workload_kind_name(WorkloadKind k);
WorkloadKind workload_kind_from_name(const std::string& name);

struct WorkloadConfig {
  WorkloadKind kind = WorkloadKind::kFill;
  double density = 0.5;        // kFill: per-position Bernoulli rate
  double keep_fraction = 0.1;  // kSparsify: fraction of positions kept
  double zipf_s = 1.0;         // popularity exponent
  double weight_shape = 0.2;   // kClientPopularity: gamma shape of the reweighting
  uint32_t nnz = 16;           // popularity models: positions drawn per client
  double value_scale = 1.0;    // gaussian scale before fixed-point encoding

  bool operator==(const WorkloadConfig&) const = default;
};

RingVector make_update(const WorkloadConfig& cfg, const ProtocolParams& params,
                       uint64_t master, uint32_t client_id, uint32_t round);

}  // namespace pesagg

#endif  // PESAGG_WORKLOAD_HPP_
