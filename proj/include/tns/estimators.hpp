#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <span>

#include "tns/edge_entry.hpp"

namespace tns {

/// Exponential link decay with mean lifetime `delta` (same unit as stream
/// timestamps). A link's contribution from time tau is exp(-(t - tau) / delta).
struct DecayConfig {
  double delta = 1.0;
  bool enabled = true;

  double half_life() const { return delta * std::numbers::ln2; }
  double factor(double elapsed) const { return std::exp(-elapsed / delta); }
  void validate() const;
};

/// Floor applied to p; below this the inverse weights are numerically useless.
inline constexpr double kMinInclusionProbability = 1e-300;

/// Result of one catch-up step.
struct CatchUp {
  double q = 1.0;
  bool clamped = false;  // p hit kMinInclusionProbability
};

/// Inverse-probability catch-up for the no-decay estimator. No-op when
/// z_star == 0. Otherwise q = min{1, w / (z_star * p)} and
///   c_hat <- c_hat / q
///   v_hat <- v_hat / q + (1 - q) * c_hat^2   (with the divided c_hat)
///   p     <- p * q
CatchUp update_edge_strength(EdgeEntry& entry, double z_star);

/// Decay variant: the same normalization, with c_hat first discounted from
/// entry.tau to `now`; tau is advanced to `now`. The variance carried over
/// from tau is discounted by the square of the decay factor, since it
/// estimates the variance of the undiscounted quantity.
CatchUp update_edge_decay(EdgeEntry& entry, double z_star, Timestamp now,
                          const DecayConfig& cfg);

/// Chooses between the two catch-up procedures for a run.
class EstimatorHooks {
 public:
  static EstimatorHooks no_decay() { return EstimatorHooks{}; }
  static EstimatorHooks with_decay(DecayConfig cfg);

  bool decays() const noexcept { return decay_.has_value(); }
  const std::optional<DecayConfig>& decay() const noexcept { return decay_; }

  /// Brings `entry` current to (z_star, now).
  CatchUp update(EdgeEntry& entry, double z_star, Timestamp now) const {
    return decay_ ? update_edge_decay(entry, z_star, now, *decay_)
                  : update_edge_strength(entry, z_star);
  }

 private:
  std::optional<DecayConfig> decay_;
};

/// Closed-form decayed strength over interaction times sorted ascending:
/// sum over tau <= t of exp(-(t - tau) / delta).
double exact_decayed_strength(std::span<const Timestamp> times, Timestamp t, double delta);

}  // namespace tns
