#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "tns/estimators.hpp"
#include "tns/motifs.hpp"
#include "tns/sparse_matrix.hpp"
#include "tns/types.hpp"

namespace tns {

struct OracleLimits {
  std::uint64_t max_interactions = 10'000'000;
  std::uint64_t max_edges = 10'000'000;
};

/// Full interaction history of one edge.
struct ExactEdge {
  EdgeKey key;
  std::vector<Timestamp> times;  // ascending

  std::uint64_t multiplicity() const noexcept { return times.size(); }
  Timestamp first() const { return times.front(); }
  Timestamp last() const { return times.back(); }
};

/// Ground truth of a replayed stream. Read-only after replay.
class ExactState {
 public:
  /// Edges sorted by key.
  std::span<const ExactEdge> edges() const noexcept { return edges_; }
  const ExactEdge* find(const EdgeKey& k) const;
  std::uint64_t multiplicity(const EdgeKey& k) const;

  std::uint64_t interactions() const noexcept { return interactions_; }
  std::size_t vertex_count() const noexcept { return vertices_; }
  std::uint64_t max_multiplicity() const noexcept;
  std::optional<Timestamp> first_time() const noexcept { return first_time_; }
  std::optional<Timestamp> last_time() const noexcept { return last_time_; }

  nlohmann::json to_json() const;
  static ExactState from_json(const nlohmann::json& j);

 private:
  friend ExactState replay(std::span<const Interaction>, const OracleLimits&);
  void index();

  std::vector<ExactEdge> edges_;
  std::unordered_map<EdgeKey, std::size_t, EdgeKeyHash> lookup_;
  std::uint64_t interactions_ = 0;
  std::size_t vertices_ = 0;
  std::optional<Timestamp> first_time_;
  std::optional<Timestamp> last_time_;
};

/// Exact replay without sampling. Throws InputTooLarge beyond the limits.
ExactState replay(std::span<const Interaction> stream, const OracleLimits& limits = {});

/// C_t: multiplicities up to t (no decay) or closed-form decayed strengths at t.
SymmetricMatrix exact_strength_matrix(const ExactState& state, Timestamp t,
                                      const EstimatorHooks& mode);

/// Exact temporally weighted motif count: over every arrival e_s and every
/// subgraph h containing e_s that e_s completes, accumulates the product of
/// the exact strengths of h \ {e_s} just before s.
double exact_weighted_motif_count(std::span<const Interaction> stream, MotifPattern pattern,
                                  const EstimatorHooks& mode, const OracleLimits& limits = {});

void save_state(const ExactState& state, const std::filesystem::path& path);
ExactState load_state(const std::filesystem::path& path);

}  // namespace tns
