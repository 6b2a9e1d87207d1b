#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tns/motifs.hpp"
#include "tns/reservoir.hpp"
#include "tns/stream_io.hpp"

namespace tns {

enum class OutputFormat { Json, Csv };
enum class StatsSource { Exact, Sample };

/// Fully resolved options for one CLI run.
struct RunConfig {
  std::filesystem::path input;
  std::optional<std::size_t> sample_size;
  std::optional<double> fraction;
  WeightMode weight_mode = WeightMode::Adaptive;
  double phi = 1.0;
  std::optional<double> decay_delta;
  std::optional<MotifPattern> motif;
  std::uint64_t seed = 1;
  std::size_t trials = 1;
  std::optional<Timestamp> eval_time;
  std::size_t topk = 1000;
  std::optional<std::filesystem::path> out;
  OutputFormat format = OutputFormat::Json;
  bool ablation = false;   // compare: run both weight modes
  StatsSource stats_source = StatsSource::Exact;
  bool drop_self_loops = false;
  bool timing = false;     // include wall-clock fields (breaks byte-identity)

  /// Throws ConfigError on conflicts. `needs_size` is false for exact stats.
  void validate(bool needs_size = true) const;
  nlohmann::json to_json() const;
};

/// Sample size actually used: the configured m, or ceil(fraction * |K|)
/// from a counting pass over `stream`.
std::size_t resolve_sample_size(const RunConfig& cfg, std::span<const Interaction> stream);

/// Evaluation time: configured, else the last timestamp of the stream.
Timestamp resolve_eval_time(const RunConfig& cfg, std::span<const Interaction> stream);

struct TrialResult {
  std::uint64_t seed = 0;
  std::vector<EdgeEntry> readout;
  double z_star = 0.0;
  double motif_estimate = 0.0;
  std::size_t peak_size = 0;
  std::uint64_t evictions = 0;
  std::uint64_t clamp_events = 0;
  double seconds = 0.0;
};

/// One full sampler pass with the given weight mode; seed = cfg.seed + trial.
TrialResult run_trial(const RunConfig& cfg, std::span<const Interaction> stream, std::size_t m,
                      WeightMode mode, std::size_t trial);

nlohmann::json cmd_sample(const RunConfig& cfg, std::span<const Interaction> stream);
nlohmann::json cmd_compare(const RunConfig& cfg, std::span<const Interaction> stream);
nlohmann::json cmd_stats(const RunConfig& cfg, std::span<const Interaction> stream);

/// Renders a report in the configured format (CSV is command-specific).
std::string render(const nlohmann::json& report, OutputFormat format);

std::vector<Interaction> load_input(const RunConfig& cfg);

}  // namespace tns
