#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <absl/container/flat_hash_map.h>
#include <vector>

#include "tns/edge_entry.hpp"
#include "tns/estimators.hpp"
#include "tns/indexed_heap.hpp"
#include "tns/random.hpp"
#include "tns/types.hpp"

namespace tns {

enum class WeightMode { Adaptive, Uniform };

struct ReservoirConfig {
  std::size_t capacity = 1;
  WeightMode weight_mode = WeightMode::Adaptive;
  double phi = 1.0;
  EstimatorHooks hooks = EstimatorHooks::no_decay();

  void validate() const;
};

struct AdmissionOutcome {
  enum class Kind { Resident, Admitted, Evicted };
  Kind kind = Kind::Resident;
  std::optional<EdgeKey> evicted;  // set iff kind == Evicted; may be the new edge

  static AdmissionOutcome resident() { return {Kind::Resident, std::nullopt}; }
  static AdmissionOutcome admitted() { return {Kind::Admitted, std::nullopt}; }
  static AdmissionOutcome evicted_edge(EdgeKey k) { return {Kind::Evicted, k}; }
};

/// Fixed-size rank-based edge reservoir with adaptive weights.
///
/// Each resident edge has rank r = w / u. On overflow the minimum-rank edge
/// is dropped (ties: larger u first, then the later admission), and z_star
/// tracks the largest rank ever dropped. Estimates are normalized lazily:
/// an entry is brought current only when it is touched or read out.
class Reservoir {
 public:
  /// Source of u draws; must return values in (0, 1].
  using UniformDraw = std::function<double()>;

  Reservoir(ReservoirConfig config, std::uint64_t seed);
  Reservoir(ReservoirConfig config, UniformDraw draw);

  Reservoir(const Reservoir&) = delete;
  Reservoir& operator=(const Reservoir&) = delete;
  Reservoir(Reservoir&&) = default;
  Reservoir& operator=(Reservoir&&) = default;

  /// Processes one interaction; see AdmissionOutcome. The interaction must
  /// satisfy the stream contract (no self-loop, nondecreasing time).
  AdmissionOutcome process(const Interaction& e);

  /// Applies the configured catch-up to a resident edge, bringing its
  /// estimate current to z_star and `now`. Returns nullptr if not resident.
  const EdgeEntry* catch_up(const EdgeKey& key, Timestamp now);

  const EdgeEntry* find(const EdgeKey& key) const;
  bool contains(const EdgeKey& key) const { return index_.contains(key); }

  /// min{1, w / z_star}, or 1 while z_star == 0. Throws NotResident.
  double inclusion_probability(const EdgeKey& key) const;

  /// Copies of the resident entries sorted by key, without side effects.
  std::vector<EdgeEntry> snapshot() const;

  /// Like snapshot(), but each copy has had the terminal catch-up applied
  /// (normalization to the final z_star, decay to `eval_time`). Sampler
  /// state is not touched.
  std::vector<EdgeEntry> readout(Timestamp eval_time) const;

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t capacity() const noexcept { return config_.capacity; }
  double z_star() const noexcept { return z_star_; }
  const ReservoirConfig& config() const noexcept { return config_; }
  std::uint64_t processed() const noexcept { return processed_; }
  std::uint64_t evictions() const noexcept { return evictions_; }
  std::uint64_t clamp_events() const noexcept { return clamp_events_; }
  std::optional<Timestamp> last_time() const noexcept { return last_time_; }

  /// Verifies capacity, rank coherence, heap/map consistency and the
  /// z_star bound. Returns an empty string when all hold. O(m).
  std::string check_invariants() const;

 private:
  struct RankKey {
    double r;
    double u;
    std::uint64_t seq;
    // Min element is the eviction victim.
    bool operator<(const RankKey& o) const {
      if (r != o.r) return r < o.r;
      if (u != o.u) return u > o.u;
      return seq > o.seq;
    }
  };

  static RankKey rank_key(const EdgeEntry& e) { return {e.r, e.u, e.draw_seq}; }
  void note(const CatchUp& c) { clamp_events_ += c.clamped; }

  ReservoirConfig config_;
  UniformDraw draw_;
  std::vector<EdgeEntry> entries_;
  absl::flat_hash_map<EdgeKey, std::size_t, EdgeKeyHash> index_;
  IndexedMinHeap<RankKey> heap_;
  double z_star_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t processed_ = 0;
  std::uint64_t evictions_ = 0;
  std::uint64_t clamp_events_ = 0;
  std::optional<Timestamp> last_time_;
};

}  // namespace tns
