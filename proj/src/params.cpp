// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/params.hpp"

namespace pesagg {

uint32_t floor_rate(uint32_t rate_hundredths, uint32_t n) {
  return static_cast<uint32_t>(static_cast<uint64_t>(rate_hundredths) * n / 100);
}

uint32_t derive_ell(uint32_t decryptors) { return 2 * decryptors / 3 + 1; }

uint32_t derive_delta_max(uint32_t ell) { return (ell + 1) / 2; }

uint32_t derive_ell_alt(uint32_t decryptors) { return (2 * decryptors + 2) / 3 + 1; }

uint32_t derive_delta_max_alt(uint32_t ell) { return ell / 2; }

void ProtocolParams::derive() {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ValidationError(field + ": " + why);
  };

  if (clients == 0) fail("clients", "at least one client is required");
  if (decryptors < 3) fail("decryptors", "the committee needs at least 3 members");
  if (vector_len == 0) fail("vector_len", "vector length must be positive");
  if (scope_len > vector_len) fail("scope_len", "masked scope cannot exceed the vector");
  if (neighbors >= clients) fail("neighbors", "pairwise degree must be below the client count");
  if (t < 2) fail("t", "disclosure threshold must be at least 2");
  if (ring_width != 8 && ring_width != 16 && ring_width != 32 && ring_width != 64)
    fail("ring_width", "width must be 8, 16, 32, or 64");
  if (frac_bits >= ring_width) fail("frac_bits", "fixed-point scale must fit the ring width");
  if (kappa_bits == 0 || kappa_bits % 8 != 0 || kappa_bits > 128)
    fail("kappa_bits", "seed width must be a multiple of 8, at most 128");
  if (eta_c_hundredths >= 100) fail("eta_c", "corrupted client fraction must be below 1");
  // Recovery only stays both live and safe when dropouts plus corrupted
  // decryptors stay under a third of the committee.
  if (3 * (delta_d_hundredths + eta_d_hundredths) >= 100)
    fail("delta_d", "delta_d + eta_d must be below 1/3");

  t_prime = floor_rate(eta_c_hundredths, clients) + t;
  if (t_prime > clients) fail("t", "effective threshold exceeds the client count");
  ell = derive_ell(decryptors);
  delta_max = derive_delta_max(ell);
  if (ell > decryptors) fail("decryptors", "share threshold exceeds the committee");
  share_prime = share_field_prime(kappa_bits);
}

ShareCountReport check_recovery_security(uint32_t decryptors, uint32_t ell,
                                         uint32_t delta_max, uint32_t delta_d_hundredths,
                                         uint32_t eta_d_hundredths) {
  if (delta_d_hundredths + eta_d_hundredths > 100)
    throw ValidationError("delta_d + eta_d exceeds 1");
  ShareCountReport r;
  r.decryptors = decryptors;
  r.ell = ell;
  r.delta_max = delta_max;
  r.dropped = floor_rate(delta_d_hundredths, decryptors);
  r.colluding = floor_rate(eta_d_hundredths, decryptors);

  const uint64_t honest_survivors =
      floor_rate(100 - delta_d_hundredths - eta_d_hundredths, decryptors);
  const uint64_t non_colluding = floor_rate(100 - eta_d_hundredths, decryptors);
  const uint64_t per_victim = ell > r.colluding ? ell - r.colluding : 0;

  r.capacity = static_cast<uint64_t>(delta_max) * honest_survivors;
  r.recovery_demand = static_cast<uint64_t>(r.dropped) * per_victim;
  r.recovery_feasible = r.capacity >= r.recovery_demand;
  r.security_bound = non_colluding * per_victim;
  r.security_holds = r.capacity < r.security_bound;
  return r;
}

std::vector<SweepRow> sweep_parameter_space(uint32_t d_min, uint32_t d_max,
                                            uint32_t grid_step_hundredths) {
  if (d_min < 3 || d_min > d_max) throw ValidationError("sweep: bad committee range");
  if (grid_step_hundredths == 0) throw ValidationError("sweep: grid step must be positive");
  std::vector<SweepRow> rows;
  for (uint32_t d = d_min; d <= d_max; ++d) {
    const uint32_t ell_p = derive_ell(d), dmax_p = derive_delta_max(ell_p);
    const uint32_t ell_a = derive_ell_alt(d), dmax_a = derive_delta_max_alt(ell_a);
    for (uint32_t dd = 0; 3 * dd < 100; dd += grid_step_hundredths) {
      for (uint32_t ed = 0; 3 * (dd + ed) < 100; ed += grid_step_hundredths) {
        SweepRow row;
        row.decryptors = d;
        row.delta_d_hundredths = dd;
        row.eta_d_hundredths = ed;
        row.primary = check_recovery_security(d, ell_p, dmax_p, dd, ed);
        row.alternate = check_recovery_security(d, ell_a, dmax_a, dd, ed);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

SweepSummary summarize_sweep(const std::vector<SweepRow>& rows) {
  SweepSummary s;
  s.rows = rows.size();
  for (const SweepRow& row : rows) {
    if (!row.primary.recovery_feasible || !row.primary.security_holds) {
      ++s.primary_violations;
      s.primary_failures.push_back(row);
    }
    if (!row.alternate.recovery_feasible || !row.alternate.security_holds)
      ++s.alternate_violations;
  }
  return s;
}

}  // namespace pesagg
