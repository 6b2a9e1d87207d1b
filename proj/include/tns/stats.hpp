#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tns/edge_entry.hpp"
#include "tns/oracle.hpp"
#include "tns/sparse_matrix.hpp"

namespace tns {

struct Histogram {
  std::vector<double> edges;           // ascending, size = counts.size() + 1
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
};

/// Bins over [edges[k], edges[k+1]); the last bin is closed on the right.
/// Values outside the range are not counted. Edges must be strictly increasing.
Histogram histogram(std::span<const double> values, std::vector<double> edges);

/// `bins` log-spaced edges covering [lo, hi]; lo must be positive.
std::vector<double> log_bin_edges(double lo, double hi, std::size_t bins);

/// B = (sigma - mu) / (sigma + mu) over pooled inter-contact gaps, using the
/// population standard deviation. Throws EmptyInput for no gaps or an
/// all-zero gap set.
double burstiness(std::span<const double> gaps);

/// Weighted first and second moments of a gap population.
struct GapMoments {
  double weight = 0.0;
  double sum = 0.0;
  double sumsq = 0.0;

  void add(double gap, double w = 1.0) {
    weight += w;
    sum += w * gap;
    sumsq += w * gap * gap;
  }
};

double burstiness(const GapMoments& m);

/// Consecutive same-edge differences, concatenated over edges in key order.
std::vector<double> collect_inter_contact(std::span<const ExactEdge> edges);

/// Mean over edges of last - first. Throws EmptyInput for no edges.
double persistence(std::span<const ExactEdge> edges);

/// Burstiness and persistence computed from the sampled network, i.e. from
/// the interactions observed for each resident edge since its admission.
/// With `weighted`, each edge counts 1/p (its inclusion probability after
/// terminal catch-up); otherwise every resident edge counts once.
struct SampleTemporalStats {
  double burstiness = 0.0;
  double persistence = 0.0;
  double gap_weight = 0.0;  // effective number of gaps
  double edge_weight = 0.0; // effective number of edges
};
SampleTemporalStats sample_temporal_stats(std::span<const EdgeEntry> readout, bool weighted = true);

struct PowerIterationOptions {
  double tolerance = 1e-7;
  std::size_t max_iterations = 10'000;
  std::uint64_t seed = 0x5eed;
};

struct SpectralEstimate {
  double value = 0.0;  // dominant |eigenvalue|
  std::size_t iterations = 0;
  bool converged = false;
};

/// Spectral norm of a symmetric matrix by power iteration, tracking
/// ||A x|| for unit x (the square root of the Rayleigh quotient of A^2),
/// which is insensitive to +/- eigenvalue pairs.
SpectralEstimate spectral_norm(const SymmetricMatrix& a, const PowerIterationOptions& opt = {});

struct ErrorReport {
  double rel_spectral = 0.0;
  double rel_frobenius = 0.0;
  std::size_t power_iters = 0;
  bool converged = false;
};

/// ||C - C_hat|| / ||C|| in spectral and Frobenius norms. Throws ZeroExactNorm.
ErrorReport error_norms(const SymmetricMatrix& exact, const SymmetricMatrix& estimated,
                        const PowerIterationOptions& opt = {});

/// Descending by strength, ties by ascending key; at most k entries.
std::vector<std::pair<EdgeKey, double>> top_k_strengths(const SymmetricMatrix& m, std::size_t k);
std::vector<std::pair<EdgeKey, double>> top_k_strengths(
    std::vector<std::pair<EdgeKey, double>> items, std::size_t k);

/// Strength matrix of a sampler readout (resident edges only).
SymmetricMatrix estimated_strength_matrix(std::span<const EdgeEntry> readout);

}  // namespace tns
