#include "tns/run.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include "tns/error.hpp"
#include "tns/online_tns.hpp"
#include "tns/oracle.hpp"
#include "tns/stats.hpp"

namespace tns {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string_view mode_name(WeightMode m) { return m == WeightMode::Adaptive ? "adaptive" : "uniform"; }

EstimatorHooks hooks_for(const RunConfig& cfg) {
  if (!cfg.decay_delta) return EstimatorHooks::no_decay();
  return EstimatorHooks::with_decay(DecayConfig{*cfg.decay_delta, true});
}

double rel_error(double estimate, double exact) {
  if (exact == 0.0) return estimate == 0.0 ? 0.0 : INFINITY;
  return std::abs(estimate - exact) / std::abs(exact);
}

json edge_json(const EdgeEntry& e) {
  return {{"lo", e.key.lo}, {"hi", e.key.hi}, {"c_hat", e.c_hat}, {"v_hat", e.v_hat},
          {"p", e.p},       {"w", e.w},       {"tau", e.last_seen}};
}

json histogram_json(const Histogram& h) {
  return {{"edges", h.edges}, {"counts", h.counts}, {"total", h.total}};
}

std::vector<double> positive(std::vector<double> v) {
  std::erase_if(v, [](double x) { return !(x > 0.0); });
  return v;
}

json distribution_json(const std::vector<double>& values, std::size_t bins = 30) {
  const auto pos = positive(values);
  json j = {{"count", values.size()}, {"zeros", values.size() - pos.size()}};
  if (pos.empty()) return j;
  const auto [lo, hi] = std::minmax_element(pos.begin(), pos.end());
  if (*hi > *lo) j["histogram"] = histogram_json(histogram(pos, log_bin_edges(*lo, *hi, bins)));
  return j;
}

}  // namespace

void RunConfig::validate(bool needs_size) const {
  if (input.empty()) throw ConfigError("--input is required");
  if (sample_size && fraction) throw ConfigError("--sample-size and --fraction are mutually exclusive");
  if (needs_size && !sample_size && !fraction) throw ConfigError("one of --sample-size / --fraction is required");
  if (sample_size && *sample_size < 1) throw ConfigError("--sample-size must be >= 1");
  if (fraction && !(*fraction > 0.0 && *fraction <= 1.0)) throw ConfigError("--fraction must be in (0, 1]");
  if (trials < 1) throw ConfigError("--trials must be >= 1");
  if (!(phi > 0.0) || !std::isfinite(phi)) throw ConfigError("--phi must be positive");
  if (decay_delta && !(*decay_delta > 0.0)) throw ConfigError("--decay must be positive");
  if (topk < 1) throw ConfigError("--topk must be >= 1");
}

json RunConfig::to_json() const {
  json j;
  j["input"] = input.string();
  j["sample_size"] = sample_size ? json(*sample_size) : json(nullptr);
  j["fraction"] = fraction ? json(*fraction) : json(nullptr);
  j["weights"] = mode_name(weight_mode);
  j["phi"] = phi;
  j["decay"] = decay_delta ? json(*decay_delta) : json("off");
  j["motif"] = motif ? json(to_string(*motif)) : json("none");
  j["seed"] = seed;
  j["trials"] = trials;
  j["eval_time"] = eval_time ? json(*eval_time) : json(nullptr);
  j["topk"] = topk;
  j["format"] = format == OutputFormat::Json ? "json" : "csv";
  j["ablation"] = ablation;
  j["source"] = stats_source == StatsSource::Exact ? "exact" : "sample";
  j["drop_self_loops"] = drop_self_loops;
  return j;
}

std::vector<Interaction> load_input(const RunConfig& cfg) {
  return read_all(StreamSource{cfg.input}, ParseOptions{cfg.drop_self_loops});
}

std::size_t resolve_sample_size(const RunConfig& cfg, std::span<const Interaction> stream) {
  if (cfg.sample_size) return *cfg.sample_size;
  if (!cfg.fraction) throw ConfigError("no sample size configured");
  std::unordered_set<EdgeKey, EdgeKeyHash> distinct;
  for (const Interaction& e : stream) distinct.insert(EdgeKey::of(e));
  const auto m = static_cast<std::size_t>(std::ceil(*cfg.fraction * static_cast<double>(distinct.size())));
  return std::max<std::size_t>(1, m);
}

Timestamp resolve_eval_time(const RunConfig& cfg, std::span<const Interaction> stream) {
  if (cfg.eval_time) {
    if (!stream.empty() && *cfg.eval_time < stream.back().t) {
      throw ConfigError("--eval-time must not precede the last stream timestamp");
    }
    return *cfg.eval_time;
  }
  return stream.empty() ? 0.0 : stream.back().t;
}

TrialResult run_trial(const RunConfig& cfg, std::span<const Interaction> stream, std::size_t m,
                      WeightMode mode, std::size_t trial) {
  SamplerConfig sc;
  sc.reservoir.capacity = m;
  sc.reservoir.weight_mode = mode;
  sc.reservoir.phi = cfg.phi;
  sc.reservoir.hooks = hooks_for(cfg);
  sc.motif = cfg.motif;

  TrialResult out;
  out.seed = cfg.seed + trial;
  const auto start = Clock::now();
  OnlineTns sampler(sc, out.seed);
  sampler.process_all(stream);
  out.readout = sampler.readout(resolve_eval_time(cfg, stream));
  out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  out.z_star = sampler.reservoir().z_star();
  out.motif_estimate = sampler.motif_estimate();
  out.peak_size = sampler.peak_size();
  out.evictions = sampler.reservoir().evictions();
  out.clamp_events = sampler.reservoir().clamp_events();
  if (out.clamp_events > 0) {
    std::cerr << "warning: inclusion probability hit the numerical floor " << out.clamp_events
              << " times in trial " << trial << "; estimates may be unstable\n";
  }
  return out;
}

json cmd_sample(const RunConfig& cfg, std::span<const Interaction> stream) {
  cfg.validate();
  const std::size_t m = resolve_sample_size(cfg, stream);
  json report = {{"schema", 1}, {"command", "sample"}, {"config", cfg.to_json()}};
  report["resolved"] = {{"sample_size", m}, {"eval_time", resolve_eval_time(cfg, stream)},
                        {"interactions", stream.size()}};
  json trials = json::array();
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    TrialResult r = run_trial(cfg, stream, m, cfg.weight_mode, t);
    json edges = json::array();
    for (const EdgeEntry& e : r.readout) edges.push_back(edge_json(e));
    json jt = {{"trial", t},
               {"seed", r.seed},
               {"z_star", r.z_star},
               {"sample_size", r.readout.size()},
               {"peak_sample_size", r.peak_size},
               {"evictions", r.evictions},
               {"clamp_events", r.clamp_events},
               {"edges", std::move(edges)}};
    if (cfg.motif) jt["motif_estimate"] = r.motif_estimate;
    if (cfg.timing) jt["runtime_seconds"] = r.seconds;
    trials.push_back(std::move(jt));
  }
  report["trials"] = std::move(trials);
  return report;
}

json cmd_compare(const RunConfig& cfg, std::span<const Interaction> stream) {
  cfg.validate();
  const std::size_t m = resolve_sample_size(cfg, stream);
  const Timestamp eval = resolve_eval_time(cfg, stream);
  const EstimatorHooks hooks = hooks_for(cfg);

  const ExactState exact = replay(stream);
  const SymmetricMatrix c = exact_strength_matrix(exact, eval, hooks);
  std::optional<double> exact_motif;
  if (cfg.motif) exact_motif = exact_weighted_motif_count(stream, *cfg.motif, hooks);
  const auto gaps = collect_inter_contact(exact.edges());
  std::optional<double> exact_b;
  try {
    exact_b = burstiness(gaps);
  } catch (const EmptyInput&) {
    // no gaps, or every gap is zero
  }
  const double exact_l = exact.edges().empty() ? 0.0 : persistence(exact.edges());

  json report = {{"schema", 1}, {"command", "compare"}, {"config", cfg.to_json()}};
  report["resolved"] = {{"sample_size", m}, {"eval_time", eval}, {"interactions", stream.size()},
                        {"distinct_edges", exact.edges().size()}};
  json ex = {{"persistence", exact_l}};
  ex["burstiness"] = exact_b ? json(*exact_b) : json(nullptr);
  if (exact_motif) ex["motif"] = *exact_motif;
  report["exact"] = ex;

  std::vector<WeightMode> modes = {cfg.weight_mode};
  if (cfg.ablation) modes = {WeightMode::Adaptive, WeightMode::Uniform};

  json results;
  for (WeightMode mode : modes) {
    SymmetricMatrix mean;
    double motif_sum = 0.0, b_sum = 0.0, l_sum = 0.0, seconds = 0.0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      TrialResult r = run_trial(cfg, stream, m, mode, t);
      for (const EdgeEntry& e : r.readout) mean.add(e.key, e.c_hat);
      motif_sum += r.motif_estimate;
      const SampleTemporalStats st = sample_temporal_stats(r.readout);
      b_sum += st.burstiness;
      l_sum += st.persistence;
      seconds += r.seconds;
    }
    const double n = static_cast<double>(cfg.trials);
    mean.scale(1.0 / n);
    const ErrorReport err = error_norms(c, mean);
    json jr = {{"rel_spectral", err.rel_spectral},
               {"rel_frobenius", err.rel_frobenius},
               {"power_iters", err.power_iters},
               {"converged", err.converged},
               {"persistence", l_sum / n},
               {"persistence_rel_error", rel_error(l_sum / n, exact_l)}};
    if (exact_b) {
      jr["burstiness"] = b_sum / n;
      jr["burstiness_rel_error"] = rel_error(b_sum / n, *exact_b);
    }
    if (exact_motif) {
      jr["motif"] = motif_sum / n;
      jr["motif_rel_error"] = rel_error(motif_sum / n, *exact_motif);
    }
    if (cfg.timing) jr["runtime_seconds"] = seconds;
    results[std::string(mode_name(mode))] = std::move(jr);
  }
  report["results"] = std::move(results);
  return report;
}

json cmd_stats(const RunConfig& cfg, std::span<const Interaction> stream) {
  cfg.validate(cfg.stats_source == StatsSource::Sample);
  json report = {{"schema", 1}, {"command", "stats"}, {"config", cfg.to_json()}};

  if (cfg.stats_source == StatsSource::Exact) {
    const ExactState exact = replay(stream);
    const auto gaps = collect_inter_contact(exact.edges());
    std::vector<double> lifetimes;
    for (const ExactEdge& e : exact.edges()) lifetimes.push_back(e.last() - e.first());
    json j = {{"source", "exact"},
              {"interactions", exact.interactions()},
              {"distinct_edges", exact.edges().size()},
              {"vertices", exact.vertex_count()},
              {"max_multiplicity", exact.max_multiplicity()}};
    j["burstiness"] = gaps.empty() ? json(nullptr) : json(burstiness(gaps));
    j["persistence"] = exact.edges().empty() ? json(nullptr) : json(persistence(exact.edges()));
    j["inter_contact"] = distribution_json(gaps);
    j["link_persistence"] = distribution_json(lifetimes);
    json top = json::array();
    const auto c = exact_strength_matrix(exact, resolve_eval_time(cfg, stream), hooks_for(cfg));
    if (c.nnz() > 0) {
      for (const auto& [k, v] : top_k_strengths(c, cfg.topk))
        top.push_back({{"lo", k.lo}, {"hi", k.hi}, {"strength", v}});
    }
    j["top_k"] = std::move(top);
    report["stats"] = std::move(j);
    return report;
  }

  const std::size_t m = resolve_sample_size(cfg, stream);
  json trials = json::array();
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    TrialResult r = run_trial(cfg, stream, m, cfg.weight_mode, t);
    const SampleTemporalStats st = sample_temporal_stats(r.readout);
    const SampleTemporalStats raw = sample_temporal_stats(r.readout, false);
    std::vector<double> lifetimes;
    std::vector<std::pair<EdgeKey, double>> strengths;
    for (const EdgeEntry& e : r.readout) {
      lifetimes.push_back(e.last_seen - e.first_seen);
      strengths.emplace_back(e.key, e.c_hat);
    }
    json top = json::array();
    for (const auto& [k, v] : top_k_strengths(strengths, cfg.topk))
      top.push_back({{"lo", k.lo}, {"hi", k.hi}, {"strength", v}});
    trials.push_back({{"trial", t},
                      {"seed", r.seed},
                      {"sample_size", r.readout.size()},
                      {"burstiness", st.burstiness},
                      {"persistence", st.persistence},
                      {"unweighted_burstiness", raw.burstiness},
                      {"unweighted_persistence", raw.persistence},
                      {"link_persistence", distribution_json(lifetimes)},
                      {"top_k", std::move(top)}});
  }
  report["resolved"] = {{"sample_size", m}, {"interactions", stream.size()}};
  report["trials"] = std::move(trials);
  return report;
}

namespace {

void write_histogram_rows(std::ostringstream& os, std::string_view label, const json& dist,
                          std::string_view prefix) {
  if (!dist.contains("histogram")) return;
  const auto& h = dist["histogram"];
  for (std::size_t k = 0; k < h["counts"].size(); ++k) {
    os << prefix << label << ',' << h["edges"][k].get<double>() << ','
       << h["edges"][k + 1].get<double>() << ',' << h["counts"][k].get<std::uint64_t>() << '\n';
  }
}

}  // namespace

std::string render(const json& report, OutputFormat format) {
  if (format == OutputFormat::Json) return report.dump(2) + "\n";

  std::ostringstream os;
  os.precision(17);
  const std::string cmd = report.at("command");
  if (cmd == "sample") {
    os << "trial,lo,hi,c_hat,v_hat,p,w,tau\n";
    for (const auto& t : report["trials"]) {
      for (const auto& e : t["edges"]) {
        os << t["trial"].get<std::size_t>() << ',' << e["lo"].get<VertexId>() << ','
           << e["hi"].get<VertexId>() << ',' << e["c_hat"].get<double>() << ','
           << e["v_hat"].get<double>() << ',' << e["p"].get<double>() << ','
           << e["w"].get<double>() << ',' << e["tau"].get<double>() << '\n';
      }
    }
  } else if (cmd == "compare") {
    os << "weights,metric,value\n";
    for (const auto& [mode, r] : report["results"].items()) {
      for (const auto& [metric, v] : r.items()) {
        if (v.is_number()) os << mode << ',' << metric << ',' << v.get<double>() << '\n';
      }
    }
  } else {
    os << "source,distribution,bin_lo,bin_hi,count\n";
    if (report.contains("stats")) {
      const auto& s = report["stats"];
      write_histogram_rows(os, "inter_contact", s["inter_contact"], "exact,");
      write_histogram_rows(os, "link_persistence", s["link_persistence"], "exact,");
    } else {
      for (const auto& t : report["trials"]) {
        write_histogram_rows(os, "link_persistence", t["link_persistence"],
                             "sample" + std::to_string(t["trial"].get<std::size_t>()) + ",");
      }
    }
  }
  return os.str();
}

}  // namespace tns
