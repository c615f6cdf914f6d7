// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/workload.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pesagg {

const char* workload_kind_name(WorkloadKind k) {
  switch (k) {
    case WorkloadKind::kSparsify: return "sparsify";
    case WorkloadKind::kFill: return "fill";
    case WorkloadKind::kSharedPopularity: return "shared-popularity";
    case WorkloadKind::kClientPopularity: return "client-popularity";
  }
  return "?";
}

WorkloadKind workload_kind_from_name(const std::string& name) {
  if (name == "sparsify") return WorkloadKind::kSparsify;
  if (name == "fill") return WorkloadKind::kFill;
  if (name == "shared-popularity") return WorkloadKind::kSharedPopularity;
  if (name == "client-popularity") return WorkloadKind::kClientPopularity;
  throw std::invalid_argument("unknown workload kind: " + name);
}

namespace {

// A value whose fixed-point encoding is guaranteed nonzero, so a chosen
// position really does set its indicator flag.
double solid_value(DetRng& rng, double scale) {
  const double mag = (1.0 + std::abs(rng.gaussian())) * scale;
  return rng.uniform_below(2) == 0 ? mag : -mag;
}

// Weighted sampling of `nnz` distinct positions: exponent keys, largest
// first (Efraimidis-Spirakis).  Weights need not be normalized.
std::vector<uint32_t> weighted_sample(const std::vector<double>& weights, uint32_t nnz,
                                      DetRng& rng) {
  std::vector<std::pair<double, uint32_t>> keyed;
  keyed.reserve(weights.size());
  for (uint32_t j = 0; j < weights.size(); ++j) {
    if (weights[j] <= 0) continue;
    // u^(1/w) ordering, done in log space for stability.
    double u = 0;
    while (u == 0) u = static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53;
    keyed.push_back({std::log(u) / weights[j], j});
  }
  if (keyed.size() < nnz) throw std::invalid_argument("nnz exceeds candidate positions");
  std::partial_sort(keyed.begin(), keyed.begin() + nnz, keyed.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<uint32_t> out;
  out.reserve(nnz);
  for (uint32_t i = 0; i < nnz; ++i) out.push_back(keyed[i].second);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> zipf_weights(uint32_t n, double s) {
  std::vector<double> w(n);
  for (uint32_t j = 0; j < n; ++j) w[j] = 1.0 / std::pow(static_cast<double>(j + 1), s);
  return w;
}

}  // namespace

RingVector make_update(const WorkloadConfig& cfg, const ProtocolParams& params,
                       uint64_t master, uint32_t client_id, uint32_t round) {
  DetRng rng(master, "workload", client_id, round);
  const uint32_t k = params.vector_len;
  std::vector<double> x(k, 0.0);

  switch (cfg.kind) {
    case WorkloadKind::kSparsify: {
      for (auto& v : x) v = rng.gaussian() * cfg.value_scale;
      // Magnitude threshold at the (1 - keep_fraction) quantile.
      std::vector<double> mags(k);
      for (uint32_t j = 0; j < k; ++j) mags[j] = std::abs(x[j]);
      const size_t kept = std::max<size_t>(1, static_cast<size_t>(cfg.keep_fraction * k));
      std::nth_element(mags.begin(), mags.end() - kept, mags.end());
      x = sparsify(x, mags[k - kept] * (1.0 - 1e-12));
      break;
    }
    case WorkloadKind::kFill: {
      const uint64_t num = static_cast<uint64_t>(cfg.density * (1ull << 32));
      for (auto& v : x)
        if (rng.uniform_below(1ull << 32) < num) v = solid_value(rng, cfg.value_scale);
      break;
    }
    case WorkloadKind::kSharedPopularity:
    case WorkloadKind::kClientPopularity: {
      // Popularity lives on the masked prefix; the rest of the vector stays
      // zero so disclosure behavior is driven entirely by the law.
      auto weights = zipf_weights(params.scope_len, cfg.zipf_s);
      if (cfg.kind == WorkloadKind::kClientPopularity) {
        // Heavy-tailed per-client reweighting: most positions effectively
        // drop out of this client's menu, its survivors look arbitrary.
        for (auto& w : weights) {
          double g = 0;
          // Gamma(shape<1) via Ahrens-Dieter would be overkill here; a
          // power of a uniform has the same qualitative tail-concentration
          // and stays strictly positive.
          double u = 0;
          while (u == 0) u = static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53;
          g = std::pow(u, 1.0 / cfg.weight_shape);
          w *= g;
        }
      }
      for (uint32_t pos : weighted_sample(weights, cfg.nnz, rng))
        x[pos] = solid_value(rng, cfg.value_scale);
      break;
    }
  }
  return quantize(x, params.frac_bits, params.ring_width, params.clients);
}

}  // namespace pesagg
