#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>

namespace tns {

using VertexId = std::uint64_t;
using Timestamp = double;

/// One timestamped contact (i, j, t) from the stream.
struct Interaction {
  VertexId i = 0;
  VertexId j = 0;
  Timestamp t = 0.0;

  friend bool operator==(const Interaction&, const Interaction&) = default;
};

/// Canonical unordered vertex pair, lo < hi.
struct EdgeKey {
  VertexId lo = 0;
  VertexId hi = 0;

  EdgeKey() = default;
  EdgeKey(VertexId a, VertexId b) : lo(a < b ? a : b), hi(a < b ? b : a) {}

  static EdgeKey of(const Interaction& e) { return {e.i, e.j}; }

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const EdgeKey& k) {
  return os << '(' << k.lo << ',' << k.hi << ')';
}

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& k) const noexcept {
    // splitmix64 finalizer over the packed pair
    std::uint64_t x = k.lo * 0x9E3779B97F4A7C15ULL ^ (k.hi + 0x632BE59BD9B4E019ULL);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return static_cast<std::size_t>(x);
  }
};

}  // namespace tns
