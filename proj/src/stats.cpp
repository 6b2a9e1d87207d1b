#include "tns/stats.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "tns/error.hpp"
#include "tns/random.hpp"

namespace tns {

Histogram histogram(std::span<const double> values, std::vector<double> edges) {
  if (edges.size() < 2) throw ConfigError("histogram needs at least two bin edges");
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (!(edges[k] > edges[k - 1])) throw ConfigError("histogram edges must be strictly increasing");
  }
  Histogram h;
  h.counts.assign(edges.size() - 1, 0);
  for (double v : values) {
    if (v < edges.front() || v > edges.back()) continue;
    auto it = std::upper_bound(edges.begin(), edges.end(), v);
    std::size_t bin = static_cast<std::size_t>(it - edges.begin()) - 1;
    if (bin == h.counts.size()) --bin;  // v == last edge
    ++h.counts[bin];
    ++h.total;
  }
  h.edges = std::move(edges);
  return h;
}

std::vector<double> log_bin_edges(double lo, double hi, std::size_t bins) {
  if (!(lo > 0.0) || !(hi > lo) || bins == 0) throw ConfigError("invalid log-bin range");
  std::vector<double> edges(bins + 1);
  const double step = std::log(hi / lo) / static_cast<double>(bins);
  for (std::size_t k = 0; k <= bins; ++k) edges[k] = lo * std::exp(step * static_cast<double>(k));
  edges.back() = hi;
  return edges;
}

double burstiness(const GapMoments& m) {
  if (!(m.weight > 0.0)) throw EmptyInput("burstiness needs at least one inter-contact gap");
  const double mu = m.sum / m.weight;
  const double var = std::max(0.0, m.sumsq / m.weight - mu * mu);
  const double sigma = std::sqrt(var);
  if (!(sigma + mu > 0.0)) throw EmptyInput("burstiness undefined: all gaps are zero");
  return (sigma - mu) / (sigma + mu);
}

double burstiness(std::span<const double> gaps) {
  if (gaps.empty()) throw EmptyInput("burstiness needs at least one inter-contact gap");
  // two-pass for accuracy on the exact side
  double mu = 0.0;
  for (double g : gaps) {
    if (g < 0.0) throw ConfigError("inter-contact gaps must be non-negative");
    mu += g;
  }
  mu /= static_cast<double>(gaps.size());
  double var = 0.0;
  for (double g : gaps) var += (g - mu) * (g - mu);
  const double sigma = std::sqrt(var / static_cast<double>(gaps.size()));
  if (!(sigma + mu > 0.0)) throw EmptyInput("burstiness undefined: all gaps are zero");
  return (sigma - mu) / (sigma + mu);
}

std::vector<double> collect_inter_contact(std::span<const ExactEdge> edges) {
  std::vector<double> gaps;
  for (const ExactEdge& e : edges) {
    for (std::size_t k = 1; k < e.times.size(); ++k) gaps.push_back(e.times[k] - e.times[k - 1]);
  }
  return gaps;
}

double persistence(std::span<const ExactEdge> edges) {
  if (edges.empty()) throw EmptyInput("persistence needs at least one edge");
  double sum = 0.0;
  for (const ExactEdge& e : edges) sum += e.last() - e.first();
  return sum / static_cast<double>(edges.size());
}

SampleTemporalStats sample_temporal_stats(std::span<const EdgeEntry> readout, bool weighted) {
  if (readout.empty()) throw EmptyInput("sampled network is empty");
  GapMoments gaps;
  double life = 0.0;
  double edges = 0.0;
  for (const EdgeEntry& e : readout) {
    const double w = weighted ? 1.0 / e.p : 1.0;
    edges += w;
    life += w * (e.last_seen - e.first_seen);
    // pooled moments of this edge's gaps, reweighted as a block
    gaps.weight += w * static_cast<double>(e.observed - 1);
    gaps.sum += w * e.gap_sum;
    gaps.sumsq += w * e.gap_sumsq;
  }
  SampleTemporalStats out;
  out.persistence = life / edges;
  out.edge_weight = edges;
  out.gap_weight = gaps.weight;
  out.burstiness = gaps.weight > 0.0 ? burstiness(gaps) : 0.0;
  return out;
}

namespace {

struct Csr {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  std::size_t n = 0;
};

Csr to_csr(const SymmetricMatrix& a) {
  std::unordered_map<VertexId, std::size_t> id;
  for (const auto& [k, v] : a.entries()) {
    id.try_emplace(k.lo, id.size());
    id.try_emplace(k.hi, id.size());
  }
  Csr m;
  m.n = id.size();
  std::vector<std::size_t> deg(m.n, 0);
  for (const auto& [k, v] : a.entries()) {
    ++deg[id[k.lo]];
    ++deg[id[k.hi]];
  }
  m.offsets.assign(m.n + 1, 0);
  for (std::size_t r = 0; r < m.n; ++r) m.offsets[r + 1] = m.offsets[r] + deg[r];
  m.cols.resize(m.offsets.back());
  m.vals.resize(m.offsets.back());
  std::vector<std::size_t> fill(m.offsets.begin(), m.offsets.end() - 1);
  for (const auto& [k, v] : a.entries()) {
    const std::size_t r = id[k.lo];
    const std::size_t c = id[k.hi];
    m.cols[fill[r]] = c;
    m.vals[fill[r]++] = v;
    m.cols[fill[c]] = r;
    m.vals[fill[c]++] = v;
  }
  return m;
}

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

SpectralEstimate spectral_norm(const SymmetricMatrix& a, const PowerIterationOptions& opt) {
  SpectralEstimate out;
  const Csr m = to_csr(a);
  if (m.n == 0) {
    out.converged = true;
    return out;
  }
  Rng rng(opt.seed);
  std::vector<double> x(m.n), y(m.n);
  for (double& v : x) v = 0.5 + rng.uniform01();  // strictly positive start
  double nx = norm2(x);
  for (double& v : x) v /= nx;

  double prev = -1.0;
  for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
    for (std::size_t r = 0; r < m.n; ++r) {
      double s = 0.0;
      for (std::size_t k = m.offsets[r]; k < m.offsets[r + 1]; ++k) s += m.vals[k] * x[m.cols[k]];
      y[r] = s;
    }
    const double ny = norm2(y);
    out.value = ny;
    out.iterations = it;
    if (ny == 0.0) {
      out.converged = true;
      break;
    }
    for (std::size_t r = 0; r < m.n; ++r) x[r] = y[r] / ny;
    if (prev >= 0.0 && std::abs(ny - prev) <= opt.tolerance * ny) {
      out.converged = true;
      break;
    }
    prev = ny;
  }
  return out;
}

ErrorReport error_norms(const SymmetricMatrix& exact, const SymmetricMatrix& estimated,
                        const PowerIterationOptions& opt) {
  SymmetricMatrix diff = exact;
  for (const auto& [k, v] : estimated.entries()) diff.add(k, -v);

  const double exact_f = exact.frobenius();
  if (!(exact_f > 0.0)) throw ZeroExactNorm("exact strength matrix is zero");

  const SpectralEstimate d = spectral_norm(diff, opt);
  const SpectralEstimate c = spectral_norm(exact, opt);
  ErrorReport rep;
  rep.rel_frobenius = diff.frobenius() / exact_f;
  rep.rel_spectral = d.value / c.value;
  rep.power_iters = d.iterations + c.iterations;
  rep.converged = d.converged && c.converged;
  return rep;
}

std::vector<std::pair<EdgeKey, double>> top_k_strengths(
    std::vector<std::pair<EdgeKey, double>> items, std::size_t k) {
  if (k == 0) throw ConfigError("top-k needs k >= 1");
  auto order = [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  };
  if (k < items.size()) {
    std::partial_sort(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(k), items.end(),
                      order);
    items.resize(k);
  } else {
    std::sort(items.begin(), items.end(), order);
  }
  return items;
}

std::vector<std::pair<EdgeKey, double>> top_k_strengths(const SymmetricMatrix& m, std::size_t k) {
  return top_k_strengths({m.entries().begin(), m.entries().end()}, k);
}

SymmetricMatrix estimated_strength_matrix(std::span<const EdgeEntry> readout) {
  SymmetricMatrix m;
  for (const EdgeEntry& e : readout) m.set(e.key, e.c_hat);
  return m;
}

}  // namespace tns
