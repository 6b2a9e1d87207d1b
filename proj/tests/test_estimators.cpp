// Catch-up updates and the closed-form decayed strength. Expected values are
// evaluated directly from the update formulas in the test body.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "tns/error.hpp"
#include "tns/estimators.hpp"

using namespace tns;

namespace {

EdgeEntry unit_entry() {
  EdgeEntry e;
  e.w = 1.0;
  e.u = 0.5;
  e.r = 2.0;
  e.p = 1.0;
  e.c_hat = 1.0;
  e.v_hat = 0.0;
  e.tau = 0.0;
  return e;
}

}  // namespace

TEST(UpdateEdgeStrength, NoOpWithoutThreshold) {
  EdgeEntry e = unit_entry();
  e.c_hat = 7.0;
  e.v_hat = 2.0;
  const CatchUp c = update_edge_strength(e, 0.0);
  EXPECT_EQ(c.q, 1.0);
  EXPECT_EQ(e.c_hat, 7.0);
  EXPECT_EQ(e.v_hat, 2.0);
  EXPECT_EQ(e.p, 1.0);
}

TEST(UpdateEdgeStrength, HandEvaluatedStep) {
  EdgeEntry e = unit_entry();
  const CatchUp c = update_edge_strength(e, 1.25);
  const double q = std::min(1.0, 1.0 / (1.25 * 1.0));
  EXPECT_DOUBLE_EQ(c.q, 0.8);
  EXPECT_DOUBLE_EQ(q, 0.8);
  EXPECT_DOUBLE_EQ(e.c_hat, 1.25);
  EXPECT_DOUBLE_EQ(e.v_hat, 0.0 / q + (1 - q) * 1.25 * 1.25);
  EXPECT_DOUBLE_EQ(e.v_hat, 0.3125);
  EXPECT_DOUBLE_EQ(e.p, 0.8);
}

TEST(UpdateEdgeStrength, IdempotentUntilInputsChange) {
  EdgeEntry e = unit_entry();
  update_edge_strength(e, 1.25);
  const EdgeEntry once = e;
  const CatchUp again = update_edge_strength(e, 1.25);
  EXPECT_EQ(again.q, 1.0);
  EXPECT_EQ(e.c_hat, once.c_hat);
  EXPECT_EQ(e.v_hat, once.v_hat);
  EXPECT_EQ(e.p, once.p);
  // a larger threshold makes it bite again
  EXPECT_LT(update_edge_strength(e, 2.5).q, 1.0);
}

TEST(UpdateEdgeStrength, FoldedEpochsMatchStepwiseVariance) {
  // one catch-up at z=4 equals two catch-ups at z=2 then z=4 when w is fixed
  EdgeEntry a = unit_entry(), b = unit_entry();
  a.c_hat = b.c_hat = 3.0;
  a.v_hat = b.v_hat = 0.5;
  update_edge_strength(a, 2.0);
  update_edge_strength(a, 4.0);
  update_edge_strength(b, 4.0);
  EXPECT_DOUBLE_EQ(a.c_hat, b.c_hat);
  EXPECT_DOUBLE_EQ(a.v_hat, b.v_hat);
  EXPECT_DOUBLE_EQ(a.p, b.p);
}

TEST(UpdateEdgeStrength, ClampsTinyProbability) {
  EdgeEntry e = unit_entry();
  e.p = 1e-299;
  const CatchUp c = update_edge_strength(e, 1e301);  // q = 0.01, p would reach 1e-301
  EXPECT_TRUE(c.clamped);
  EXPECT_EQ(e.p, kMinInclusionProbability);
}

TEST(UpdateEdgeDecay, HalfLifeHalvesStrength) {
  EdgeEntry e = unit_entry();
  DecayConfig cfg{1.0, true};
  update_edge_decay(e, 0.0, std::numbers::ln2, cfg);
  EXPECT_NEAR(e.c_hat, 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(cfg.half_life(), std::numbers::ln2);
  EXPECT_DOUBLE_EQ(e.tau, std::numbers::ln2);
}

TEST(UpdateEdgeDecay, ZeroElapsedReducesToStrengthUpdate) {
  EdgeEntry a = unit_entry(), b = unit_entry();
  a.c_hat = b.c_hat = 2.5;
  a.v_hat = b.v_hat = 0.75;
  a.tau = b.tau = 4.0;
  update_edge_decay(a, 1.25, 4.0, DecayConfig{3.0, true});
  update_edge_strength(b, 1.25);
  EXPECT_EQ(a.c_hat, b.c_hat);
  EXPECT_EQ(a.v_hat, b.v_hat);
  EXPECT_EQ(a.p, b.p);
}

TEST(UpdateEdgeDecay, HandEvaluatedStep) {
  EdgeEntry e = unit_entry();
  update_edge_decay(e, 1.25, 1.0, DecayConfig{1.0, true});
  const double c = std::exp(-1.0) * 1.0 / 0.8;
  EXPECT_NEAR(e.c_hat, 0.45985, 5e-6);
  EXPECT_DOUBLE_EQ(e.c_hat, c);
  EXPECT_NEAR(e.v_hat, 0.042292, 5e-7);
  EXPECT_DOUBLE_EQ(e.v_hat, 0.2 * c * c);
  EXPECT_DOUBLE_EQ(e.p, 0.8);
}

TEST(UpdateEdgeDecay, CarriedVarianceIsDiscounted) {
  EdgeEntry e = unit_entry();
  e.v_hat = 4.0;
  update_edge_decay(e, 0.0, 2.0, DecayConfig{1.0, true});
  EXPECT_DOUBLE_EQ(e.v_hat, 4.0 * std::exp(-4.0));
}

TEST(DecayConfig, RejectsNonPositiveDelta) {
  EXPECT_THROW(EstimatorHooks::with_decay(DecayConfig{0.0, true}), ConfigError);
  EXPECT_THROW(EstimatorHooks::with_decay(DecayConfig{-2.0, true}), ConfigError);
  EXPECT_FALSE(EstimatorHooks::with_decay(DecayConfig{0.0, false}).decays());
}

TEST(ExactDecayedStrength, Basics) {
  const std::vector<Timestamp> none;
  EXPECT_EQ(exact_decayed_strength(none, 10.0, 1.0), 0.0);
  const std::vector<Timestamp> fig = {3.0, 5.0};
  EXPECT_NEAR(exact_decayed_strength(fig, 5.0, 1.0), 1.13534, 5e-6);
  EXPECT_DOUBLE_EQ(exact_decayed_strength(fig, 5.0, 1.0), std::exp(-2.0) + 1.0);
  const std::vector<Timestamp> one = {4.0};
  EXPECT_EQ(exact_decayed_strength(one, 3.0, 1.0), 0.0);
}

TEST(ExactDecayedStrength, StreamingRecurrenceMatchesClosedForm) {
  // lazy recurrence with z* = 0 against the closed form on irregular times
  const std::vector<Timestamp> times = {0.5, 0.7, 3.0, 3.0, 9.25, 11.0, 30.0};
  const DecayConfig cfg{2.5, true};
  EdgeEntry e = unit_entry();
  e.tau = times[0];
  for (std::size_t k = 1; k < times.size(); ++k) {
    update_edge_decay(e, 0.0, times[k], cfg);
    e.c_hat += 1.0;
    const std::span<const Timestamp> prefix(times.data(), k + 1);
    EXPECT_NEAR(e.c_hat, exact_decayed_strength(prefix, times[k], 2.5),
                1e-12 * exact_decayed_strength(prefix, times[k], 2.5));
  }
}
