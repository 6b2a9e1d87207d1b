#pragma once

#include <optional>
#include <vector>

#include "tns/motifs.hpp"
#include "tns/reservoir.hpp"

namespace tns {

struct SamplerConfig {
  ReservoirConfig reservoir;
  std::optional<MotifPattern> motif;
};

/// End-to-end single-pass sampler: motif estimation on arrival, then the
/// reservoir update. The adjacency index mirrors the resident edges and is
/// only maintained when a motif is configured (it stays empty otherwise).
class OnlineTns {
 public:
  OnlineTns(SamplerConfig config, std::uint64_t seed);
  OnlineTns(SamplerConfig config, Reservoir::UniformDraw draw);

  AdmissionOutcome process(const Interaction& e);

  template <class Range>
  void process_all(const Range& stream) {
    for (const Interaction& e : stream) process(e);
  }

  const Reservoir& reservoir() const noexcept { return reservoir_; }
  const AdjacencyIndex& adjacency() const noexcept { return adjacency_; }
  const std::optional<MotifAccumulator>& motif() const noexcept { return motif_; }
  double motif_estimate() const noexcept { return motif_ ? motif_->c_hat_m : 0.0; }
  std::size_t peak_size() const noexcept { return peak_size_; }

  /// Resident entries with the terminal catch-up applied at `eval_time`.
  std::vector<EdgeEntry> readout(Timestamp eval_time) const { return reservoir_.readout(eval_time); }
  /// Same, evaluated at the last processed timestamp (or 0 for no input).
  std::vector<EdgeEntry> readout() const {
    return reservoir_.readout(reservoir_.last_time().value_or(0.0));
  }

 private:
  Reservoir reservoir_;
  AdjacencyIndex adjacency_;
  std::optional<MotifAccumulator> motif_;
  std::size_t peak_size_ = 0;
};

}  // namespace tns
