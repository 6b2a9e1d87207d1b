#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tns/types.hpp"

namespace tns {

/// Parameters for the synthetic stream generator.
///
/// Each step emits one interaction with timestamp step+1. The edge is chosen,
/// in order of precedence, as
///   - a repeat of one of the `burst_window` most recent edges (burst_prob),
///   - the closure of a wedge around a random earlier edge (closure_prob),
///   - a member of a fixed pool of `hot_edges` edges (multiplicity_skew),
///   - otherwise a uniformly random vertex pair.
struct GeneratorSpec {
  std::uint64_t n_vertices = 0;
  std::uint64_t n_interactions = 0;
  double multiplicity_skew = 0.5;
  std::uint64_t rng_seed = 0;
  /// Size of the hot pool; 0 picks max(1, n_vertices / 2), capped by the
  /// number of possible pairs.
  std::uint64_t hot_edges = 0;
  double closure_prob = 0.0;
  double burst_prob = 0.0;
  std::uint64_t burst_window = 8;
};

struct ParseOptions {
  /// Silently skip i == j lines instead of raising SelfLoop.
  bool drop_self_loops = false;
};

/// Where a stream comes from.
using StreamSource =
    std::variant<std::filesystem::path, std::vector<Interaction>, GeneratorSpec>;

/// Sequential, validating reader over a StreamSource. Yields interactions in
/// source order; enforces the self-loop and nondecreasing-time contracts.
class InteractionStream {
 public:
  explicit InteractionStream(StreamSource source, ParseOptions options = {});
  /// Reads text from a caller-owned stream.
  explicit InteractionStream(std::istream& in, ParseOptions options = {});

  InteractionStream(InteractionStream&&) noexcept;
  InteractionStream& operator=(InteractionStream&&) noexcept;
  ~InteractionStream();

  std::optional<Interaction> next();

  /// Number of source lines (or elements) consumed so far.
  std::size_t position() const noexcept { return position_; }
  std::size_t dropped_self_loops() const noexcept { return dropped_; }

 private:
  std::optional<Interaction> next_text();
  std::optional<Interaction> next_memory();
  void check(const Interaction& e, const std::string& content);

  ParseOptions options_;
  std::unique_ptr<std::ifstream> owned_;
  std::istream* text_ = nullptr;
  std::vector<Interaction> memory_;
  std::size_t cursor_ = 0;
  std::size_t position_ = 0;
  std::size_t dropped_ = 0;
  std::optional<Timestamp> last_t_;
};

inline InteractionStream parse_stream(StreamSource source, ParseOptions options = {}) {
  return InteractionStream(std::move(source), options);
}

/// Drains a source into memory, validating as it goes.
std::vector<Interaction> read_all(StreamSource source, ParseOptions options = {});
std::vector<Interaction> read_all(std::istream& in, ParseOptions options = {});

/// Parses one non-comment line. Returns nullopt for blank/comment lines and
/// throws MalformedLine for anything else that is not `i j t`.
std::optional<Interaction> parse_line(std::string_view line, std::size_t line_no);

/// Writes `i j t` lines; t uses the shortest representation that round-trips.
void write_stream(std::ostream& out, std::span<const Interaction> stream);

std::vector<Interaction> synth_stream(const GeneratorSpec& spec);

}  // namespace tns
