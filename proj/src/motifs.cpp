#include "tns/motifs.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "tns/error.hpp"

namespace tns {

std::string_view to_string(MotifPattern p) {
  switch (p) {
    case MotifPattern::Triangle:
      return "triangle";
  }
  return "unknown";
}

MotifPattern parse_motif(std::string_view name) {
  if (name == "triangle") return MotifPattern::Triangle;
  throw ConfigError("unknown motif pattern: " + std::string(name));
}

void AdjacencyIndex::add(const EdgeKey& k) {
  if (adj_[k.lo].insert(k.hi).second) {
    adj_[k.hi].insert(k.lo);
    ++edges_;
  }
}

void AdjacencyIndex::remove(const EdgeKey& k) {
  auto drop = [this](VertexId a, VertexId b) {
    auto it = adj_.find(a);
    if (it == adj_.end()) return false;
    const bool erased = it->second.erase(b) > 0;
    if (it->second.empty()) adj_.erase(it);
    return erased;
  };
  if (drop(k.lo, k.hi)) {
    drop(k.hi, k.lo);
    --edges_;
  }
}

bool AdjacencyIndex::has_edge(VertexId a, VertexId b) const {
  auto it = adj_.find(a);
  return it != adj_.end() && it->second.contains(b);
}

std::size_t AdjacencyIndex::degree(VertexId v) const {
  auto it = adj_.find(v);
  return it == adj_.end() ? 0 : it->second.size();
}

const std::unordered_set<VertexId>* AdjacencyIndex::neighbors(VertexId v) const {
  auto it = adj_.find(v);
  return it == adj_.end() ? nullptr : &it->second;
}

std::vector<EdgeKey> AdjacencyIndex::edges() const {
  std::vector<EdgeKey> out;
  for (const auto& [v, nbrs] : adj_)
    for (VertexId w : nbrs)
      if (v < w) out.emplace_back(v, w);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void triangles_on_arrival(MotifAccumulator& acc, const AdjacencyIndex& adj, Reservoir& res,
                          const Interaction& e) {
  const auto* ni = adj.neighbors(e.i);
  const auto* nj = adj.neighbors(e.j);
  if (!ni || !nj) return;
  // scan the smaller neighborhood, probe the larger one
  const bool i_smaller = ni->size() <= nj->size();
  const auto& scan = i_smaller ? *ni : *nj;
  const auto& probe = i_smaller ? *nj : *ni;
  const VertexId other = i_smaller ? e.j : e.i;

  for (VertexId k : scan) {
    ++acc.probes;
    if (k == other || !probe.contains(k)) continue;
    const EdgeEntry* a = res.catch_up(EdgeKey(e.i, k), e.t);
    const EdgeEntry* b = res.catch_up(EdgeKey(k, e.j), e.t);
    assert(a && b);
    acc.c_hat_m += a->c_hat * b->c_hat;
    ++acc.completions;
  }
}

}  // namespace

void on_arrival(MotifAccumulator& acc, const AdjacencyIndex& adj, Reservoir& res,
                const Interaction& e) {
  switch (acc.pattern) {
    case MotifPattern::Triangle:
      triangles_on_arrival(acc, adj, res, e);
      return;
  }
}

}  // namespace tns
