// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_PARAMS_HPP_
#define PESAGG_PARAMS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pesagg/shamir.hpp"

namespace pesagg {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact floor(rate * n) for rates given in hundredths; all threshold
// arithmetic runs on integers so grid sweeps never inherit float rounding.
uint32_t floor_rate(uint32_t rate_hundredths, uint32_t n);

struct ProtocolParams {
  // Population and committee sizes.
  uint32_t clients = 0;       // |C|
  uint32_t decryptors = 0;    // |D|
  uint32_t neighbors = 0;     // pairwise-mask degree lower bound per client

  // Vector geometry.
  uint32_t vector_len = 0;    // dense length
  uint32_t scope_len = 0;     // per-element masked prefix

  // Disclosure and adversary rates, in hundredths (e.g. 10 = 0.10).
  uint32_t t = 0;                    // honest-contributor disclosure threshold
  uint32_t eta_c_hundredths = 0;     // corrupted client fraction bound
  uint32_t eta_d_hundredths = 0;     // corrupted decryptor fraction bound
  uint32_t delta_d_hundredths = 0;   // decryptor dropout fraction bound

  // Encoding choices.
  uint32_t ring_width = 32;   // w
  uint32_t frac_bits = 16;    // fixed-point scale
  uint32_t kappa_bits = 128;  // seed width

  // Derived (filled by derive()).
  uint32_t t_prime = 0;    // effective count threshold the decryptors enforce
  uint32_t ell = 0;        // share reconstruction threshold
  uint32_t delta_max = 0;  // per-request dropout claim cap
  Field share_prime;       // field for seed sharing

  // Validates every field and fills the derived ones.  Throws
  // ValidationError naming the offending field.
  void derive();

  uint32_t max_corrupt_clients() const { return floor_rate(eta_c_hundredths, clients); }
  uint32_t max_corrupt_decryptors() const { return floor_rate(eta_d_hundredths, decryptors); }
  uint32_t max_dropped_decryptors() const { return floor_rate(delta_d_hundredths, decryptors); }
};

// Share-counting feasibility/safety at one operating point.  Rates arrive
// in hundredths and every floor is taken in integer arithmetic:
//   capacity        = delta_max * floor((1 - delta_d - eta_d) * D)
//   recovery demand = floor(delta_d * D) * (ell - floor(eta_d * D))
//   security bound  = floor((1 - eta_d) * D) * (ell - floor(eta_d * D))
// Recovery needs capacity >= demand; security needs capacity strictly below
// the bound, otherwise a lying server can harvest enough shares to rebuild
// every honest decryptor's seed vector.
struct ShareCountReport {
  uint32_t decryptors = 0, ell = 0, delta_max = 0;
  uint32_t dropped = 0, colluding = 0;  // floor counts at this point
  uint64_t capacity = 0;
  uint64_t recovery_demand = 0;
  bool recovery_feasible = false;
  uint64_t security_bound = 0;
  bool security_holds = false;
};

ShareCountReport check_recovery_security(uint32_t decryptors, uint32_t ell,
                                         uint32_t delta_max, uint32_t delta_d_hundredths,
                                         uint32_t eta_d_hundredths);

// Committee-parameter derivations, kept as free functions so the sweep can
// evaluate the primary rule and the alternate rounding side by side.
uint32_t derive_ell(uint32_t decryptors);            // floor(2|D|/3) + 1
uint32_t derive_delta_max(uint32_t ell);             // ceil(ell/2)
uint32_t derive_ell_alt(uint32_t decryptors);        // ceil(2|D|/3) + 1
uint32_t derive_delta_max_alt(uint32_t ell);         // floor(ell/2)

struct SweepRow {
  uint32_t decryptors = 0;
  uint32_t delta_d_hundredths = 0, eta_d_hundredths = 0;
  ShareCountReport primary;   // ell = floor(2D/3)+1, delta_max = ceil(ell/2)
  ShareCountReport alternate; // ell = ceil(2D/3)+1, delta_max = floor(ell/2)
};

// Evaluates both share-counting inequalities for every committee size in
// [d_min, d_max] and every (delta_d, eta_d) hundredths pair on the given
// grid step with delta_d + eta_d < 1/3.
std::vector<SweepRow> sweep_parameter_space(uint32_t d_min, uint32_t d_max,
                                            uint32_t grid_step_hundredths);

// Rows where a derivation rule failed one of the inequalities.
struct SweepSummary {
  size_t rows = 0;
  size_t primary_violations = 0;
  size_t alternate_violations = 0;
  std::vector<SweepRow> primary_failures;
};

SweepSummary summarize_sweep(const std::vector<SweepRow>& rows);

}  // namespace pesagg

#endif  // PESAGG_PARAMS_HPP_
