#include "tns/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "tns/error.hpp"

namespace tns {

const ExactEdge* ExactState::find(const EdgeKey& k) const {
  auto it = lookup_.find(k);
  return it == lookup_.end() ? nullptr : &edges_[it->second];
}

std::uint64_t ExactState::multiplicity(const EdgeKey& k) const {
  const ExactEdge* e = find(k);
  return e ? e->multiplicity() : 0;
}

std::uint64_t ExactState::max_multiplicity() const noexcept {
  std::uint64_t best = 0;
  for (const auto& e : edges_) best = std::max(best, e.multiplicity());
  return best;
}

void ExactState::index() {
  std::sort(edges_.begin(), edges_.end(),
            [](const ExactEdge& a, const ExactEdge& b) { return a.key < b.key; });
  lookup_.clear();
  lookup_.reserve(edges_.size());
  std::unordered_set<VertexId> verts;
  for (std::size_t n = 0; n < edges_.size(); ++n) {
    lookup_.emplace(edges_[n].key, n);
    verts.insert(edges_[n].key.lo);
    verts.insert(edges_[n].key.hi);
  }
  vertices_ = verts.size();
}

ExactState replay(std::span<const Interaction> stream, const OracleLimits& limits) {
  if (stream.size() > limits.max_interactions) {
    throw InputTooLarge("oracle replay capped at " + std::to_string(limits.max_interactions) +
                        " interactions, got " + std::to_string(stream.size()));
  }
  ExactState state;
  std::unordered_map<EdgeKey, std::size_t, EdgeKeyHash> slot;
  for (const Interaction& e : stream) {
    const EdgeKey k = EdgeKey::of(e);
    auto [it, inserted] = slot.try_emplace(k, state.edges_.size());
    if (inserted) {
      if (state.edges_.size() >= limits.max_edges) {
        throw InputTooLarge("oracle replay capped at " + std::to_string(limits.max_edges) +
                            " edges");
      }
      state.edges_.push_back({k, {}});
    }
    state.edges_[it->second].times.push_back(e.t);
    if (!state.first_time_) state.first_time_ = e.t;
    state.last_time_ = e.t;
  }
  state.interactions_ = stream.size();
  state.index();
  return state;
}

SymmetricMatrix exact_strength_matrix(const ExactState& state, Timestamp t,
                                      const EstimatorHooks& mode) {
  SymmetricMatrix c;
  for (const ExactEdge& e : state.edges()) {
    double v;
    if (mode.decays()) {
      v = exact_decayed_strength(e.times, t, mode.decay()->delta);
    } else {
      v = static_cast<double>(std::upper_bound(e.times.begin(), e.times.end(), t) -
                              e.times.begin());
    }
    if (v != 0.0) c.set(e.key, v);
  }
  return c;
}

double exact_weighted_motif_count(std::span<const Interaction> stream, MotifPattern pattern,
                                  const EstimatorHooks& mode, const OracleLimits& limits) {
  if (stream.size() > limits.max_interactions) {
    throw InputTooLarge("motif oracle capped at " + std::to_string(limits.max_interactions) +
                        " interactions");
  }
  if (pattern != MotifPattern::Triangle) throw ConfigError("unsupported motif pattern");

  std::unordered_map<VertexId, std::unordered_set<VertexId>> adj;
  std::unordered_map<EdgeKey, std::vector<Timestamp>, EdgeKeyHash> history;

  auto strength = [&](const EdgeKey& k, Timestamp now) {
    const auto& times = history.at(k);
    if (!mode.decays()) return static_cast<double>(times.size());
    return exact_decayed_strength(times, now, mode.decay()->delta);
  };

  double total = 0.0;
  for (const Interaction& e : stream) {
    const EdgeKey k = EdgeKey::of(e);
    auto ai = adj.find(e.i);
    auto aj = adj.find(e.j);
    if (ai != adj.end() && aj != adj.end()) {
      const auto& small = ai->second.size() <= aj->second.size() ? ai->second : aj->second;
      const auto& large = ai->second.size() <= aj->second.size() ? aj->second : ai->second;
      for (VertexId c : small) {
        if (c == e.i || c == e.j || !large.contains(c)) continue;
        total += strength(EdgeKey(e.i, c), e.t) * strength(EdgeKey(c, e.j), e.t);
      }
    }
    if (history.size() >= limits.max_edges && !history.contains(k)) {
      throw InputTooLarge("motif oracle capped at " + std::to_string(limits.max_edges) + " edges");
    }
    history[k].push_back(e.t);
    adj[e.i].insert(e.j);
    adj[e.j].insert(e.i);
  }
  return total;
}

nlohmann::json ExactState::to_json() const {
  nlohmann::json edges = nlohmann::json::array();
  for (const ExactEdge& e : edges_) {
    edges.push_back({{"lo", e.key.lo}, {"hi", e.key.hi}, {"times", e.times}});
  }
  nlohmann::json j = {{"schema", 1},
                      {"interactions", interactions_},
                      {"vertices", vertices_},
                      {"edges", std::move(edges)}};
  return j;
}

ExactState ExactState::from_json(const nlohmann::json& j) {
  if (j.value("schema", 0) != 1) throw IoError("unsupported exact-state schema");
  ExactState state;
  for (const auto& je : j.at("edges")) {
    ExactEdge e{EdgeKey(je.at("lo").get<VertexId>(), je.at("hi").get<VertexId>()),
                je.at("times").get<std::vector<Timestamp>>()};
    if (e.times.empty() || !std::is_sorted(e.times.begin(), e.times.end())) {
      throw IoError("exact-state edge time lists must be non-empty and ascending");
    }
    state.interactions_ += e.times.size();
    const Timestamp lo = e.times.front();
    const Timestamp hi = e.times.back();
    state.first_time_ = state.first_time_ ? std::min(*state.first_time_, lo) : lo;
    state.last_time_ = state.last_time_ ? std::max(*state.last_time_, hi) : hi;
    state.edges_.push_back(std::move(e));
  }
  if (j.contains("interactions") && j.at("interactions").get<std::uint64_t>() != state.interactions_) {
    throw IoError("exact-state interaction count does not match its time lists");
  }
  state.index();
  return state;
}

void save_state(const ExactState& state, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << state.to_json().dump(1) << '\n';
}

ExactState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return ExactState::from_json(nlohmann::json::parse(in));
}

}  // namespace tns
