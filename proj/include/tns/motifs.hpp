#pragma once

#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tns/reservoir.hpp"
#include "tns/types.hpp"

namespace tns {

/// Motif shapes the estimator can enumerate. New shapes need an enumeration
/// routine in on_arrival and a matching oracle replay.
enum class MotifPattern { Triangle };

constexpr std::size_t vertex_count(MotifPattern p) { return p == MotifPattern::Triangle ? 3 : 0; }
constexpr std::size_t edge_count(MotifPattern p) { return p == MotifPattern::Triangle ? 3 : 0; }
std::string_view to_string(MotifPattern p);
MotifPattern parse_motif(std::string_view name);

struct MotifAccumulator {
  MotifPattern pattern = MotifPattern::Triangle;
  double c_hat_m = 0.0;
  std::uint64_t probes = 0;       // adjacency probes, for cost accounting
  std::uint64_t completions = 0;  // subgraphs found
};

/// Neighbor sets over the edges resident in a reservoir.
class AdjacencyIndex {
 public:
  void add(const EdgeKey& k);
  void remove(const EdgeKey& k);
  bool has_edge(VertexId a, VertexId b) const;
  std::size_t degree(VertexId v) const;
  std::size_t edge_count() const noexcept { return edges_; }
  const std::unordered_set<VertexId>* neighbors(VertexId v) const;

  /// All edges, sorted. O(E log E); for tests.
  std::vector<EdgeKey> edges() const;

 private:
  std::unordered_map<VertexId, std::unordered_set<VertexId>> adj_;
  std::size_t edges_ = 0;
};

/// Motif increment for the arrival `e`, computed from the estimates of the
/// other edges of each completed subgraph. Must run before the reservoir
/// processes `e`, so the participating estimates are the pre-arrival ones.
/// Each participating edge is first brought current (normalization, and
/// decay to e.t in decay mode).
void on_arrival(MotifAccumulator& acc, const AdjacencyIndex& adj, Reservoir& res,
                const Interaction& e);

}  // namespace tns
