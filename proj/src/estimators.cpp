#include "tns/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tns/error.hpp"

namespace tns {

void DecayConfig::validate() const {
  if (enabled && !(delta > 0.0)) {
    throw ConfigError("decay delta must be positive, got " + std::to_string(delta));
  }
}

EstimatorHooks EstimatorHooks::with_decay(DecayConfig cfg) {
  cfg.validate();
  EstimatorHooks hooks;
  if (cfg.enabled) hooks.decay_ = cfg;
  return hooks;
}

namespace {

// Shared tail of both procedures: c_hat already holds the (possibly
// discounted) undivided estimate, `carried_var` the prior variance term.
CatchUp normalize(EdgeEntry& entry, double z_star, double carried_var) {
  CatchUp out;
  // p after this step is min{p, w / z*}; storing that ratio directly (rather
  // than p * q) keeps a repeated call an exact no-op
  const double target = z_star > 0.0 ? entry.w / z_star : 1.0;
  if (target < entry.p) out.q = target / entry.p;
  const double q = out.q;
  entry.c_hat /= q;
  entry.v_hat = carried_var / q + (1.0 - q) * entry.c_hat * entry.c_hat;
  if (q < 1.0) {
    entry.log_q_sum += std::log(q);
    entry.p = target;
    if (entry.p < kMinInclusionProbability) {
      entry.p = kMinInclusionProbability;
      out.clamped = true;
    }
  }
  return out;
}

}  // namespace

CatchUp update_edge_strength(EdgeEntry& entry, double z_star) {
  if (!(z_star > 0.0)) return {};
  return normalize(entry, z_star, entry.v_hat);
}

CatchUp update_edge_decay(EdgeEntry& entry, double z_star, Timestamp now,
                          const DecayConfig& cfg) {
  const double a = now > entry.tau ? cfg.factor(now - entry.tau) : 1.0;
  entry.tau = std::max(entry.tau, now);
  entry.c_hat *= a;
  return normalize(entry, z_star, entry.v_hat * a * a);
}

double exact_decayed_strength(std::span<const Timestamp> times, Timestamp t, double delta) {
  double sum = 0.0;
  for (Timestamp tau : times) {
    if (tau > t) break;
    sum += std::exp(-(t - tau) / delta);
  }
  return sum;
}

}  // namespace tns
