#pragma once

#include <cstdint>

#include "tns/types.hpp"

namespace tns {

/// Per-sampled-edge state.
///
/// `tau` is the time at which `c_hat` is expressed. It is set to the
/// interaction time on every interaction and, in decay mode, also moves
/// forward when a motif enumeration brings the estimate current. The raw
/// last interaction time is kept separately in `last_seen`.
struct alignas(64) EdgeEntry {
  EdgeKey key;
  double w = 1.0;      // sampling weight
  double u = 1.0;      // uniform draw in (0,1], fixed while resident
  double r = 1.0;      // rank, always w / u
  double p = 1.0;      // cumulative conditional inclusion probability
  double c_hat = 0.0;  // strength estimate as of tau
  double v_hat = 0.0;  // variance estimate for c_hat
  Timestamp tau = 0.0;

  // Bookkeeping for sampled-network statistics; covers only interactions
  // observed since the most recent admission.
  Timestamp first_seen = 0.0;
  Timestamp last_seen = 0.0;
  std::uint64_t observed = 0;
  double gap_sum = 0.0;
  double gap_sumsq = 0.0;

  std::uint64_t draw_seq = 0;  // admission order, final eviction tie-break
  double log_q_sum = 0.0;      // shadow of log(p), accumulated independently
};

}  // namespace tns
