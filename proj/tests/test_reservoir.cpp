#include <gtest/gtest.h>

#include <map>

#include "support.hpp"
#include "tns/error.hpp"
#include "tns/reservoir.hpp"
#include "tns/stream_io.hpp"

using namespace tns;
using tns::test::forced_draws;

namespace {

ReservoirConfig capacity(std::size_t m, WeightMode mode = WeightMode::Adaptive) {
  ReservoirConfig c;
  c.capacity = m;
  c.weight_mode = mode;
  return c;
}

const EdgeKey ka(1, 2), kb(3, 4), kc(5, 6), kd(7, 8);

}  // namespace

TEST(Reservoir, HandTraceOverflowEvictsNewcomer) {
  Reservoir r(capacity(2), forced_draws({0.5, 0.25, 0.8, 0.5}));
  EXPECT_EQ(r.process({1, 2, 1}).kind, AdmissionOutcome::Kind::Admitted);
  EXPECT_EQ(r.process({3, 4, 2}).kind, AdmissionOutcome::Kind::Admitted);
  EXPECT_DOUBLE_EQ(r.find(ka)->r, 2.0);
  EXPECT_DOUBLE_EQ(r.find(kb)->r, 4.0);

  const auto out = r.process({5, 6, 3});
  ASSERT_EQ(out.kind, AdmissionOutcome::Kind::Evicted);
  EXPECT_EQ(*out.evicted, kc);
  EXPECT_DOUBLE_EQ(r.z_star(), 1.25);
  EXPECT_EQ(r.size(), 2u);
  EXPECT_TRUE(r.contains(ka));
  EXPECT_TRUE(r.contains(kb));

  EXPECT_DOUBLE_EQ(r.inclusion_probability(ka), 0.8);

  // d ties with a at rank 2.0 and the same u; the later draw goes
  const auto out2 = r.process({7, 8, 4});
  ASSERT_EQ(out2.kind, AdmissionOutcome::Kind::Evicted);
  EXPECT_EQ(*out2.evicted, kd);
  EXPECT_DOUBLE_EQ(r.z_star(), 2.0);
  EXPECT_EQ(r.check_invariants(), "");
}

TEST(Reservoir, TieBreakPrefersLargerU) {
  // a: w=1,u=0.5 (r=2); b: after one repeat w=2,u=1.0 (r=2); c new with big rank
  Reservoir r(capacity(2), forced_draws({0.5, 1.0, 0.01}));
  r.process({1, 2, 1});
  r.process({3, 4, 2});
  r.process({3, 4, 3});
  ASSERT_DOUBLE_EQ(r.find(kb)->r, 2.0);
  const auto out = r.process({5, 6, 4});
  ASSERT_EQ(out.kind, AdmissionOutcome::Kind::Evicted);
  EXPECT_EQ(*out.evicted, kb);
}

TEST(Reservoir, InclusionProbability) {
  Reservoir r(capacity(2), forced_draws({0.5, 0.25, 0.8}));
  r.process({1, 2, 1});
  EXPECT_EQ(r.inclusion_probability(ka), 1.0);
  r.process({3, 4, 2});
  r.process({5, 6, 3});
  for (int k = 0; k < 4; ++k) r.process({1, 2, 4.0 + k});
  // w = 5 now, capped at 1
  EXPECT_EQ(r.inclusion_probability(ka), 1.0);
  EXPECT_THROW(r.inclusion_probability(kc), NotResident);
}

TEST(Reservoir, ResidentUpdateOrder) {
  Reservoir r(capacity(2), forced_draws({0.5, 0.25, 0.8}));
  r.process({1, 2, 1});
  r.process({3, 4, 2});
  r.process({5, 6, 3});  // z* = 1.25
  r.process({1, 2, 4});
  // catch-up first (c=1/0.8), then +1, then w += 1
  const EdgeEntry* a = r.find(ka);
  EXPECT_DOUBLE_EQ(a->c_hat, 1.25 + 1.0);
  EXPECT_DOUBLE_EQ(a->v_hat, 0.3125);
  EXPECT_DOUBLE_EQ(a->p, 0.8);
  EXPECT_DOUBLE_EQ(a->w, 2.0);
  EXPECT_DOUBLE_EQ(a->r, 4.0);
  EXPECT_DOUBLE_EQ(a->tau, 4.0);
}

TEST(Reservoir, UniformModeKeepsWeight) {
  Reservoir r(capacity(4, WeightMode::Uniform), 3);
  for (int k = 0; k < 5; ++k) r.process({1, 2, static_cast<double>(k)});
  EXPECT_EQ(r.find(ka)->w, 1.0);
  EXPECT_EQ(r.find(ka)->c_hat, 5.0);
}

TEST(Reservoir, NoEvictionGivesExactCounts) {
  auto s = synth_stream({.n_vertices = 12, .n_interactions = 2000, .multiplicity_skew = 0.6,
                         .rng_seed = 4});
  std::map<EdgeKey, int> exact;
  for (const auto& e : s) ++exact[EdgeKey::of(e)];
  Reservoir r(capacity(exact.size()), 17);
  for (const auto& e : s) r.process(e);
  EXPECT_EQ(r.z_star(), 0.0);
  EXPECT_EQ(r.evictions(), 0u);
  for (const auto& [k, c] : exact) EXPECT_EQ(r.find(k)->c_hat, static_cast<double>(c));
}

TEST(Reservoir, SnapshotIsSortedAndPure) {
  Reservoir r(capacity(8), 5);
  EXPECT_TRUE(r.snapshot().empty());
  r.process({9, 3, 1});
  r.process({1, 2, 2});
  r.process({4, 2, 3});
  auto a = r.snapshot();
  auto b = r.snapshot();
  ASSERT_EQ(a.size(), 3u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end(),
                             [](const EdgeEntry& x, const EdgeEntry& y) { return x.key < y.key; }));
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].key, b[k].key);
    EXPECT_EQ(a[k].c_hat, b[k].c_hat);
    EXPECT_EQ(a[k].r, b[k].r);
  }
}

TEST(Reservoir, ReadoutDoesNotMutate) {
  Reservoir r(capacity(2), forced_draws({0.5, 0.25, 0.8}));
  r.process({1, 2, 1});
  r.process({3, 4, 2});
  r.process({5, 6, 3});
  auto out = r.readout(3.0);
  EXPECT_DOUBLE_EQ(out[0].c_hat, 1.25);  // (1,2) normalized
  EXPECT_DOUBLE_EQ(r.find(ka)->c_hat, 1.0);
}

TEST(Reservoir, RejectsBadConfig) {
  EXPECT_THROW(Reservoir(capacity(0), 1), ConfigError);
  ReservoirConfig c = capacity(3);
  c.phi = 0.0;
  EXPECT_THROW(Reservoir(c, 1), ConfigError);
}

TEST(Reservoir, ReadmissionRedrawsU) {
  Reservoir r(capacity(1), forced_draws({0.9, 0.1, 0.3}));
  r.process({1, 2, 1});  // r = 1.11
  r.process({3, 4, 2});  // r = 10, evicts (1,2)
  EXPECT_FALSE(r.contains(ka));
  const auto out = r.process({1, 2, 3});  // fresh u = 0.3, r = 3.33, evicted again
  EXPECT_EQ(*out.evicted, ka);
  EXPECT_DOUBLE_EQ(r.z_star(), 1.0 / 0.3);
}
