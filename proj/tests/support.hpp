// Shared test helpers: forced u-draws, brute-force oracles, and Monte-Carlo
// accumulators. Nothing here calls into the sampler's estimator code.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <vector>

#include "tns/random.hpp"
#include "tns/reservoir.hpp"
#include "tns/types.hpp"

namespace tns::test {

/// u-draws replayed from a fixed list (then falling back to a seeded RNG).
inline Reservoir::UniformDraw forced_draws(std::vector<double> draws, std::uint64_t seed = 99) {
  auto state = std::make_shared<std::pair<std::size_t, std::vector<double>>>(0, std::move(draws));
  auto rng = std::make_shared<Rng>(seed);
  return [state, rng] {
    if (state->first < state->second.size()) return state->second[state->first++];
    return rng->uniform_open_closed();
  };
}

inline std::vector<Interaction> make_stream(std::initializer_list<std::pair<VertexId, VertexId>> pairs) {
  std::vector<Interaction> out;
  Timestamp t = 1.0;
  for (auto [a, b] : pairs) out.push_back({a, b, t++});
  return out;
}

/// Brute-force temporally weighted triangle count: for every arrival, scan
/// every vertex as a possible third corner and sum the products of the two
/// other edges' strengths computed directly from their prior times.
inline double brute_force_triangles(const std::vector<Interaction>& stream, double delta = 0.0) {
  std::map<EdgeKey, std::vector<Timestamp>> seen;
  std::set<VertexId> vertices;
  double total = 0.0;
  auto strength = [&](const EdgeKey& k, Timestamp now) {
    auto it = seen.find(k);
    if (it == seen.end()) return 0.0;
    if (delta <= 0.0) return static_cast<double>(it->second.size());
    double s = 0.0;
    for (Timestamp tau : it->second) s += std::exp(-(now - tau) / delta);
    return s;
  };
  for (const Interaction& e : stream) {
    for (VertexId k : vertices) {
      if (k == e.i || k == e.j) continue;
      const EdgeKey a(e.i, k), b(k, e.j);
      if (seen.count(a) && seen.count(b)) total += strength(a, e.t) * strength(b, e.t);
    }
    seen[EdgeKey::of(e)].push_back(e.t);
    vertices.insert(e.i);
    vertices.insert(e.j);
  }
  return total;
}

/// Running mean / variance (Welford) plus raw samples for bootstrap.
class Moments {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  std::size_t n() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double stddev() const { return std::sqrt(variance()); }
  double standard_error() const { return n_ ? stddev() / std::sqrt(static_cast<double>(n_)) : 0.0; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Bootstrap standard error of the sample variance.
inline double bootstrap_se_of_variance(const std::vector<double>& xs, std::size_t resamples,
                                       std::uint64_t seed) {
  Rng rng(seed);
  Moments of_var;
  for (std::size_t b = 0; b < resamples; ++b) {
    Moments m;
    for (std::size_t k = 0; k < xs.size(); ++k) m.add(xs[rng.below(xs.size())]);
    of_var.add(m.variance());
  }
  return of_var.stddev();
}

/// Mean of a sample plus its mean-of-estimator comparator, for "within k SE".
inline bool within_se(double mean, double target, double se, double k = 4.0) {
  return std::abs(mean - target) <= k * se + 1e-12 * std::max(1.0, std::abs(target));
}

}  // namespace tns::test
