#include "tns/online_tns.hpp"

#include <algorithm>

namespace tns {

OnlineTns::OnlineTns(SamplerConfig config, std::uint64_t seed)
    : reservoir_(config.reservoir, seed) {
  if (config.motif) motif_ = MotifAccumulator{*config.motif};
}

OnlineTns::OnlineTns(SamplerConfig config, Reservoir::UniformDraw draw)
    : reservoir_(config.reservoir, std::move(draw)) {
  if (config.motif) motif_ = MotifAccumulator{*config.motif};
}

AdmissionOutcome OnlineTns::process(const Interaction& e) {
  if (motif_) on_arrival(*motif_, adjacency_, reservoir_, e);

  const EdgeKey key = EdgeKey::of(e);
  const AdmissionOutcome out = reservoir_.process(e);
  switch (out.kind) {
    case AdmissionOutcome::Kind::Resident:
      break;
    case AdmissionOutcome::Kind::Admitted:
      if (motif_) adjacency_.add(key);
      break;
    case AdmissionOutcome::Kind::Evicted:
      if (motif_ && *out.evicted != key) {
        adjacency_.remove(*out.evicted);
        adjacency_.add(key);
      }
      break;
  }
  // the provisional m+1-th entry never survives past process()
  peak_size_ = std::max(peak_size_, reservoir_.size());
  return out;
}

}  // namespace tns
