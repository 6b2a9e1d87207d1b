#include "tns/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "tns/error.hpp"

namespace tns {

void ReservoirConfig::validate() const {
  if (capacity < 1) throw ConfigError("reservoir capacity must be >= 1");
  if (!(phi > 0.0) || !std::isfinite(phi)) throw ConfigError("phi must be positive and finite");
}

Reservoir::Reservoir(ReservoirConfig config, std::uint64_t seed)
    : Reservoir(config, [rng = std::make_shared<Rng>(seed)] { return rng->uniform_open_closed(); }) {}

Reservoir::Reservoir(ReservoirConfig config, UniformDraw draw)
    : config_(std::move(config)), draw_(std::move(draw)) {
  config_.validate();
  const std::size_t hint = std::min<std::size_t>(config_.capacity + 1, 1u << 20);
  entries_.reserve(hint);
  index_.reserve(hint);
  heap_.reserve(hint);
}

AdmissionOutcome Reservoir::process(const Interaction& e) {
  const EdgeKey key = EdgeKey::of(e);
  ++processed_;
  last_time_ = e.t;

  // one probe serves both the resident lookup and the insertion
  auto [it, inserted] = index_.try_emplace(key, 0);
  if (!inserted) {
    const std::size_t slot = it->second;
    EdgeEntry& entry = entries_[slot];
    note(config_.hooks.update(entry, z_star_, e.t));
    entry.c_hat += 1.0;
    entry.tau = e.t;
    const double gap = e.t - entry.last_seen;
    entry.gap_sum += gap;
    entry.gap_sumsq += gap * gap;
    entry.last_seen = e.t;
    ++entry.observed;
    if (config_.weight_mode == WeightMode::Adaptive) {
      entry.w += 1.0;
      entry.r = entry.w / entry.u;
      heap_.update(slot, rank_key(entry));
    }
    return AdmissionOutcome::resident();
  }

  EdgeEntry fresh;
  fresh.key = key;
  fresh.p = 1.0;
  fresh.c_hat = 1.0;
  fresh.v_hat = 0.0;
  fresh.u = draw_();
  fresh.w = config_.phi;
  fresh.r = fresh.w / fresh.u;
  fresh.tau = e.t;
  fresh.first_seen = e.t;
  fresh.last_seen = e.t;
  fresh.observed = 1;
  fresh.draw_seq = next_seq_++;

  const RankKey fresh_rank = rank_key(fresh);
  if (entries_.size() < config_.capacity) {
    const std::size_t slot = entries_.size();
    entries_.push_back(fresh);
    it->second = slot;
    heap_.push(slot, fresh_rank);
    return AdmissionOutcome::admitted();
  }

  // Full: the victim is the minimum over the m residents plus the newcomer.
  ++evictions_;
  const std::size_t victim = heap_.top();
  if (fresh_rank < heap_.key(victim)) {
    z_star_ = std::max(z_star_, fresh.r);
    index_.erase(it);
    return AdmissionOutcome::evicted_edge(key);
  }
  const EdgeKey victim_key = entries_[victim].key;
  z_star_ = std::max(z_star_, entries_[victim].r);
  it->second = victim;
  index_.erase(victim_key);  // leaves `it` valid
  entries_[victim] = fresh;
  heap_.update(victim, fresh_rank);
  return AdmissionOutcome::evicted_edge(victim_key);
}

const EdgeEntry* Reservoir::catch_up(const EdgeKey& key, Timestamp now) {
  auto it = index_.find(key);
  if (it == index_.end()) return nullptr;
  EdgeEntry& entry = entries_[it->second];
  note(config_.hooks.update(entry, z_star_, now));
  return &entry;
}

const EdgeEntry* Reservoir::find(const EdgeKey& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

double Reservoir::inclusion_probability(const EdgeKey& key) const {
  const EdgeEntry* entry = find(key);
  if (!entry) {
    std::ostringstream os;
    os << "edge " << key << " is not resident";
    throw NotResident(os.str());
  }
  if (!(z_star_ > 0.0)) return 1.0;
  return std::min(1.0, entry->w / z_star_);
}

std::vector<EdgeEntry> Reservoir::snapshot() const {
  std::vector<EdgeEntry> out(entries_);
  std::sort(out.begin(), out.end(),
            [](const EdgeEntry& a, const EdgeEntry& b) { return a.key < b.key; });
  return out;
}

std::vector<EdgeEntry> Reservoir::readout(Timestamp eval_time) const {
  std::vector<EdgeEntry> out = snapshot();
  for (EdgeEntry& entry : out) config_.hooks.update(entry, z_star_, eval_time);
  return out;
}

std::string Reservoir::check_invariants() const {
  std::ostringstream why;
  if (entries_.size() > config_.capacity) why << "size " << entries_.size() << " > capacity; ";
  if (index_.size() != entries_.size()) why << "index/entries size mismatch; ";
  if (heap_.size() != entries_.size()) why << "heap/entries size mismatch; ";
  if (!heap_.valid()) why << "heap order or position map broken; ";
  double min_rank = INFINITY;
  for (std::size_t s = 0; s < entries_.size(); ++s) {
    const EdgeEntry& e = entries_[s];
    auto it = index_.find(e.key);
    if (it == index_.end() || it->second != s) why << "index does not map " << e.key << "; ";
    if (!heap_.contains(s)) {
      why << "slot " << s << " missing from heap; ";
      continue;
    }
    if (heap_.key(s).r != e.r) why << "stale heap key for " << e.key << "; ";
    if (e.r != e.w / e.u) why << "rank incoherent for " << e.key << "; ";
    if (!(e.p > 0.0 && e.p <= 1.0)) why << "p out of range for " << e.key << "; ";
    if (e.r < z_star_) why << "rank below z_star for " << e.key << "; ";
    const double expect_w = config_.weight_mode == WeightMode::Adaptive
                                ? config_.phi + static_cast<double>(e.observed - 1)
                                : config_.phi;
    // repeated += 1 on a fractional phi can drift from phi + n by a few ulps
    if (std::abs(e.w - expect_w) > 1e-12 * expect_w) {
      why << "weight does not match observations for " << e.key << "; ";
    }
    min_rank = std::min(min_rank, e.r);
  }
  if (!heap_.empty() && entries_[heap_.top()].r != min_rank) why << "heap top is not the min rank; ";
  return why.str();
}

}  // namespace tns
