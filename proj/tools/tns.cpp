// Command-line driver: sample / compare / stats over a temporal edge list.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tns/error.hpp"
#include "tns/run.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kConfig = 2,
  kInput = 3,
  kTooLarge = 4,
};

int exit_code_for(const std::string& category) {
  if (category == "ConfigError" || category == "InvalidSpec") return kConfig;
  if (category == "InputTooLarge") return kTooLarge;
  if (category == "MalformedLine" || category == "NonMonotoneTime" || category == "SelfLoop" ||
      category == "IoError") {
    return kInput;
  }
  return kInternal;
}

void report_error(const std::string& category, const std::string& message) {
  std::cerr << nlohmann::json{{"error", category}, {"message", message}}.dump() << '\n';
}

void add_common(CLI::App* cmd, tns::RunConfig& cfg, std::string& weights, std::string& format,
                std::string& motif, std::optional<std::string>& out) {
  cmd->add_option("--input", cfg.input, "temporal edge list: `i j t` per line")->required();
  auto* size = cmd->add_option("--sample-size", cfg.sample_size, "reservoir capacity m");
  auto* frac = cmd->add_option("--fraction", cfg.fraction, "sample fraction of distinct edges");
  size->excludes(frac);
  cmd->add_option("--weights", weights, "adaptive|uniform")
      ->check(CLI::IsMember({"adaptive", "uniform"}));
  cmd->add_option("--phi", cfg.phi, "initial sampling weight");
  cmd->add_option("--decay", cfg.decay_delta, "mean link lifetime delta (enables decay)");
  cmd->add_option("--motif", motif, "none|triangle")->check(CLI::IsMember({"none", "triangle"}));
  cmd->add_option("--seed", cfg.seed, "base RNG seed (trial k uses seed + k)");
  cmd->add_option("--trials", cfg.trials, "independent sampler runs");
  cmd->add_option("--eval-time", cfg.eval_time, "readout time (default: last timestamp)");
  cmd->add_option("--topk", cfg.topk, "top-k strengths to report");
  cmd->add_option("--out", out, "output path (default: stdout)");
  cmd->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--drop-self-loops", cfg.drop_self_loops, "skip i == j lines instead of failing");
  cmd->add_flag("--timing", cfg.timing, "include wall-clock runtimes in the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online temporal network sampling"};
  app.require_subcommand(1);

  tns::RunConfig cfg;
  std::string weights = "adaptive";
  std::string format = "json";
  std::string motif = "none";
  std::string source = "exact";
  std::optional<std::string> out;

  auto* sample = app.add_subcommand("sample", "run the sampler and emit the sampled edges");
  auto* compare = app.add_subcommand("compare", "sampler vs exact replay error report");
  auto* stats = app.add_subcommand("stats", "burstiness, persistence and distributions");
  for (auto* cmd : {sample, compare, stats}) add_common(cmd, cfg, weights, format, motif, out);
  compare->add_flag("--ablation", cfg.ablation, "report both adaptive and uniform weights");
  stats->add_option("--source", source, "exact|sample")->check(CLI::IsMember({"exact", "sample"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report_error("ConfigError", e.what());
    return kConfig;
  }

  try {
    cfg.weight_mode = weights == "uniform" ? tns::WeightMode::Uniform : tns::WeightMode::Adaptive;
    cfg.format = format == "csv" ? tns::OutputFormat::Csv : tns::OutputFormat::Json;
    if (motif != "none") cfg.motif = tns::parse_motif(motif);
    cfg.stats_source = source == "sample" ? tns::StatsSource::Sample : tns::StatsSource::Exact;
    if (out) cfg.out = *out;

    cfg.validate(!stats->parsed() || cfg.stats_source == tns::StatsSource::Sample);
    const auto stream = tns::load_input(cfg);

    nlohmann::json report;
    if (sample->parsed()) report = tns::cmd_sample(cfg, stream);
    else if (compare->parsed()) report = tns::cmd_compare(cfg, stream);
    else report = tns::cmd_stats(cfg, stream);

    const std::string text = tns::render(report, cfg.format);
    if (cfg.out) {
      std::ofstream f(*cfg.out);
      if (!f) throw tns::IoError("cannot write " + cfg.out->string());
      f << text;
    } else {
      std::cout << text;
    }
  } catch (const tns::Error& e) {
    report_error(e.category(), e.what());
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    report_error("Internal", e.what());
    return kInternal;
  }
  return kOk;
}
