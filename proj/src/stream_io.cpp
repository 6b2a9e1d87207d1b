#include "tns/stream_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_set>

#include "tns/error.hpp"
#include "tns/random.hpp"

namespace tns {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view next_token(std::string_view& rest) {
  std::size_t b = 0;
  while (b < rest.size() && is_blank(rest[b])) ++b;
  std::size_t e = b;
  while (e < rest.size() && !is_blank(rest[e])) ++e;
  std::string_view tok = rest.substr(b, e - b);
  rest.remove_prefix(e);
  return tok;
}

bool parse_vertex(std::string_view tok, VertexId& out) {
  if (tok.empty()) return false;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_time(std::string_view tok, Timestamp& out) {
  if (tok.empty()) return false;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out) && out >= 0.0;
}

}  // namespace

std::optional<Interaction> parse_line(std::string_view line, std::size_t line_no) {
  std::string_view rest = line;
  std::string_view first = next_token(rest);
  if (first.empty() || first.front() == '#' || first.front() == '%') return std::nullopt;

  std::string_view second = next_token(rest);
  std::string_view third = next_token(rest);
  std::string_view extra = next_token(rest);

  Interaction e;
  if (!extra.empty() || !parse_vertex(first, e.i) || !parse_vertex(second, e.j) ||
      !parse_time(third, e.t)) {
    throw MalformedLine(line_no, std::string(line));
  }
  return e;
}

InteractionStream::InteractionStream(StreamSource source, ParseOptions options)
    : options_(options) {
  if (auto* path = std::get_if<std::filesystem::path>(&source)) {
    owned_ = std::make_unique<std::ifstream>(*path);
    if (!*owned_) throw IoError("cannot open stream file: " + path->string());
    text_ = owned_.get();
  } else if (auto* mem = std::get_if<std::vector<Interaction>>(&source)) {
    memory_ = std::move(*mem);
  } else {
    memory_ = synth_stream(std::get<GeneratorSpec>(source));
  }
}

InteractionStream::InteractionStream(std::istream& in, ParseOptions options)
    : options_(options), text_(&in) {}

InteractionStream::InteractionStream(InteractionStream&&) noexcept = default;
InteractionStream& InteractionStream::operator=(InteractionStream&&) noexcept = default;
InteractionStream::~InteractionStream() = default;

void InteractionStream::check(const Interaction& e, const std::string& content) {
  if (e.i == e.j) throw SelfLoop(position_, content);
  if (last_t_ && e.t < *last_t_) throw NonMonotoneTime(position_, content);
  last_t_ = e.t;
}

std::optional<Interaction> InteractionStream::next_text() {
  std::string line;
  while (std::getline(*text_, line)) {
    ++position_;
    auto e = parse_line(line, position_);
    if (!e) continue;
    if (e->i == e->j && options_.drop_self_loops) {
      ++dropped_;
      continue;
    }
    check(*e, line);
    return e;
  }
  if (text_->bad()) throw IoError("read failure after line " + std::to_string(position_));
  return std::nullopt;
}

std::optional<Interaction> InteractionStream::next_memory() {
  while (cursor_ < memory_.size()) {
    const Interaction e = memory_[cursor_++];
    ++position_;
    if (e.i == e.j && options_.drop_self_loops) {
      ++dropped_;
      continue;
    }
    if (!std::isfinite(e.t) || e.t < 0.0) {
      throw MalformedLine(position_, "t=" + std::to_string(e.t));
    }
    check(e, std::to_string(e.i) + " " + std::to_string(e.j) + " " + std::to_string(e.t));
    return e;
  }
  return std::nullopt;
}

std::optional<Interaction> InteractionStream::next() {
  return text_ ? next_text() : next_memory();
}

std::vector<Interaction> read_all(StreamSource source, ParseOptions options) {
  InteractionStream s(std::move(source), options);
  std::vector<Interaction> out;
  while (auto e = s.next()) out.push_back(*e);
  return out;
}

std::vector<Interaction> read_all(std::istream& in, ParseOptions options) {
  InteractionStream s(in, options);
  std::vector<Interaction> out;
  while (auto e = s.next()) out.push_back(*e);
  return out;
}

void write_stream(std::ostream& out, std::span<const Interaction> stream) {
  char buf[64];
  for (const auto& e : stream) {
    auto res = std::to_chars(buf, buf + sizeof(buf), e.t);
    out << e.i << ' ' << e.j << ' ' << std::string_view(buf, res.ptr - buf) << '\n';
  }
}

namespace {

void validate(const GeneratorSpec& spec) {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (spec.n_vertices < 2) throw InvalidSpec("n_vertices must be >= 2");
  if (spec.n_interactions < 1) throw InvalidSpec("n_interactions must be >= 1");
  if (!in_unit(spec.multiplicity_skew)) throw InvalidSpec("multiplicity_skew must be in [0,1]");
  if (!in_unit(spec.closure_prob) || !in_unit(spec.burst_prob) ||
      spec.closure_prob + spec.burst_prob > 1.0) {
    throw InvalidSpec("closure_prob and burst_prob must be in [0,1] and sum to <= 1");
  }
  if (spec.burst_prob > 0.0 && spec.burst_window == 0) {
    throw InvalidSpec("burst_window must be positive when burst_prob > 0");
  }
}

EdgeKey random_pair(Rng& rng, std::uint64_t n) {
  const VertexId a = rng.below(n);
  VertexId b = rng.below(n - 1);
  if (b >= a) ++b;
  return {a, b};
}

}  // namespace

std::vector<Interaction> synth_stream(const GeneratorSpec& spec) {
  validate(spec);
  Rng rng(spec.rng_seed);
  const std::uint64_t n = spec.n_vertices;
  const long double possible_ld = static_cast<long double>(n) * (n - 1) / 2;
  const std::uint64_t possible =
      possible_ld > static_cast<long double>(UINT64_MAX / 2) ? UINT64_MAX / 2
                                                             : static_cast<std::uint64_t>(possible_ld);

  std::uint64_t hot_target = spec.hot_edges ? spec.hot_edges : std::max<std::uint64_t>(1, n / 2);
  hot_target = std::min(hot_target, possible);

  std::vector<EdgeKey> hot;
  hot.reserve(hot_target);
  if (hot_target == possible && possible <= 4096) {
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = a + 1; b < n; ++b) hot.emplace_back(a, b);
  } else {
    std::unordered_set<EdgeKey, EdgeKeyHash> seen;
    while (hot.size() < hot_target) {
      EdgeKey k = random_pair(rng, n);
      if (seen.insert(k).second) hot.push_back(k);
    }
  }

  std::vector<std::vector<VertexId>> neighbors;
  std::unordered_set<EdgeKey, EdgeKeyHash> present;
  std::vector<EdgeKey> history;
  const bool track_adjacency = spec.closure_prob > 0.0;
  if (track_adjacency) neighbors.resize(n);

  std::vector<Interaction> out;
  out.reserve(spec.n_interactions);

  for (std::uint64_t step = 0; step < spec.n_interactions; ++step) {
    const double r = rng.uniform01();
    std::optional<EdgeKey> pick;

    if (r < spec.burst_prob && !history.empty()) {
      const std::uint64_t window = std::min<std::uint64_t>(spec.burst_window, history.size());
      pick = history[history.size() - 1 - rng.below(window)];
    } else if (r < spec.burst_prob + spec.closure_prob && !history.empty()) {
      const EdgeKey base = history[rng.below(history.size())];
      const bool flip = rng.below(2) == 1;
      const VertexId pivot = flip ? base.hi : base.lo;
      const VertexId other = flip ? base.lo : base.hi;
      const auto& nbrs = neighbors[pivot];
      if (nbrs.size() > 1) {
        const VertexId c = nbrs[rng.below(nbrs.size())];
        if (c != other) pick = EdgeKey(other, c);
      }
    }
    if (!pick) {
      pick = rng.uniform01() < spec.multiplicity_skew ? hot[rng.below(hot.size())]
                                                      : random_pair(rng, n);
    }

    if (track_adjacency && present.insert(*pick).second) {
      neighbors[pick->lo].push_back(pick->hi);
      neighbors[pick->hi].push_back(pick->lo);
    }
    history.push_back(*pick);
    // alternate orientation so consumers exercise canonicalization
    const bool swap = (step & 1) != 0;
    out.push_back({swap ? pick->hi : pick->lo, swap ? pick->lo : pick->hi,
                   static_cast<Timestamp>(step + 1)});
  }
  return out;
}

}  // namespace tns
