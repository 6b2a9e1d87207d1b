#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "tns/indexed_heap.hpp"
#include "tns/random.hpp"

using tns::IndexedMinHeap;

TEST(IndexedHeap, PushTopErase) {
  IndexedMinHeap<double> h;
  h.push(0, 5.0);
  h.push(1, 2.0);
  h.push(2, 9.0);
  EXPECT_EQ(h.top(), 1u);
  h.erase(1);
  EXPECT_EQ(h.top(), 0u);
  EXPECT_FALSE(h.contains(1));
  EXPECT_TRUE(h.valid());
}

TEST(IndexedHeap, UpdateBothDirections) {
  IndexedMinHeap<double> h;
  for (std::size_t i = 0; i < 10; ++i) h.push(i, static_cast<double>(i));
  h.update(0, 100.0);  // sift down
  EXPECT_EQ(h.top(), 1u);
  h.update(9, -1.0);   // sift up
  EXPECT_EQ(h.top(), 9u);
  EXPECT_TRUE(h.valid());
}

TEST(IndexedHeap, Relabel) {
  IndexedMinHeap<double> h;
  h.push(0, 3.0);
  h.push(5, 1.0);
  h.relabel(5, 2);
  EXPECT_EQ(h.top(), 2u);
  EXPECT_FALSE(h.contains(5));
  EXPECT_EQ(h.key(2), 1.0);
  EXPECT_TRUE(h.valid());
}

TEST(IndexedHeapProperty, MatchesOrderedMapUnderRandomOps) {
  tns::Rng rng(11);
  IndexedMinHeap<std::pair<double, std::size_t>> h;
  std::map<std::size_t, double> model;
  for (int step = 0; step < 20000; ++step) {
    const std::size_t id = rng.below(64);
    const double key = static_cast<double>(rng.below(1000));
    const auto op = rng.below(3);
    if (!model.contains(id)) {
      h.push(id, {key, id});
      model[id] = key;
    } else if (op == 0) {
      h.erase(id);
      model.erase(id);
    } else {
      h.update(id, {key, id});
      model[id] = key;
    }
    ASSERT_EQ(h.size(), model.size());
    if (!model.empty()) {
      auto best = std::min_element(model.begin(), model.end(), [](auto& a, auto& b) {
        return std::pair(a.second, a.first) < std::pair(b.second, b.first);
      });
      ASSERT_EQ(h.top(), best->first);
    }
  }
  EXPECT_TRUE(h.valid());
}
