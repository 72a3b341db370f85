// locotrans: train / replay / bench / generate / report.
//
// Exit codes: 0 ok, 1 data error, 2 config or usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "locotrans/bench.hpp"
#include "locotrans/config.hpp"
#include "locotrans/error.hpp"
#include "locotrans/model_bank.hpp"
#include "locotrans/pipeline.hpp"
#include "locotrans/report.hpp"
#include "locotrans/serialization.hpp"
#include "locotrans/synthetic.hpp"
#include "locotrans/trial.hpp"

namespace fs = std::filesystem;
using namespace locotrans;

namespace {

constexpr int kExitData = 1;
constexpr int kExitConfig = 2;

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write " + p.string());
  return out;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json(const fs::path& p, const nlohmann::json& j) {
  auto out = open_out(p);
  out << j.dump(2) << '\n';
}

std::string safe_name(std::string id) {
  for (char& c : id) {
    if (c == '/' || c == '\\' || c == ':') c = '_';
  }
  return id;
}

struct Global {
  std::string config_path;
};

EngineConfig resolve_config(const Global& g) {
  EngineConfig cfg = g.config_path.empty() ? EngineConfig{} : load_config(g.config_path);
  cfg = apply_env_overrides(cfg, process_env());
  cfg.validate();
  return cfg;
}

// ---- train

struct TrainArgs {
  std::string data;
  std::string out;
  std::string summary_json;
};

int cmd_train(const Global& g, const TrainArgs& a) {
  const EngineConfig cfg = resolve_config(g);
  const auto trials = load_trials(a.data, cfg.load_proxy);
  if (trials.empty()) throw InsufficientDataError("no trial CSVs under " + a.data);
  const TrainResult r = train_bank(trials, cfg);
  save_bank(r.bank, a.out);
  std::cout << format_train_summary(r);
  if (!a.summary_json.empty()) write_json(a.summary_json, train_summary_to_json(r));
  return 0;
}

// ---- replay

struct ReplayArgs {
  std::string trials;
  std::string bank;
  std::string initial_mode;
  std::string method;
  std::string log_dir;
  std::string out_json;
  std::string out_csv;
};

int cmd_replay(const Global& g, const ReplayArgs& a) {
  EngineConfig cfg = resolve_config(g);
  if (!a.initial_mode.empty()) {
    cfg.replay.initial_mode = a.initial_mode == "auto"
                                  ? std::nullopt
                                  : std::optional<Mode>(parse_mode(a.initial_mode));
  }
  if (!a.method.empty()) cfg.replay.method = parse_method(a.method);

  const ModelBank bank = load_bank(a.bank);
  const auto trials = load_trials(a.trials, cfg.load_proxy);
  if (trials.empty()) throw InsufficientDataError("no trial CSVs under " + a.trials);
  const ReplayResult r = replay_trials(trials, bank, cfg);

  if (!a.log_dir.empty()) {
    for (const TrialReplay& t : r.trials) {
      auto out = open_out(fs::path(a.log_dir) / (safe_name(t.id) + ".decisions.csv"));
      write_decision_log(out, t.log.decisions);
    }
  }

  nlohmann::json per_trial = nlohmann::json::array();
  for (const TrialReplay& t : r.trials) {
    nlohmann::json row{{"id", t.id},
                       {"initial_mode", std::string(to_string(t.initial_mode))},
                       {"final_mode", std::string(to_string(t.log.final_mode))},
                       {"decisions", t.log.decisions.size()},
                       {"fired", t.log.fired().size()},
                       {"events", t.log.events},
                       {"missing_mhf", t.log.missing_mhf}};
    row["accuracy"] = t.accuracy ? accuracy_to_json(*t.accuracy) : nlohmann::json(nullptr);
    per_trial.push_back(row);
  }

  for (const TrialReplay& t : r.trials) {
    std::cerr << t.id << ": " << to_string(t.initial_mode) << " -> "
              << to_string(t.log.final_mode) << ", " << t.log.fired().size() << " fired";
    if (!t.accuracy) std::cerr << " (unannotated, accuracy omitted)";
    std::cerr << '\n';
  }
  const bool any_annotated = r.unannotated < r.trials.size();
  if (any_annotated) write_accuracy_csv(std::cout, r.total);

  if (!a.out_csv.empty() && any_annotated) {
    auto out = open_out(a.out_csv);
    write_accuracy_csv(out, r.total);
  }
  if (!a.out_json.empty()) {
    nlohmann::json j{{"method", std::string(to_string(cfg.replay.method))},
                     {"match_window_s", cfg.replay.match_window},
                     {"trials", per_trial}};
    j["accuracy"] = any_annotated ? accuracy_to_json(r.total) : nlohmann::json(nullptr);
    write_json(a.out_json, j);
  }
  return 0;
}

// ---- bench

struct BenchArgs {
  std::string bank;
  std::size_t cycles = 0;
  std::string out;
  std::string trial;
  std::string initial_mode;
};

int cmd_bench(const Global& g, const BenchArgs& a) {
  EngineConfig cfg = resolve_config(g);
  if (a.cycles) cfg.bench.cycles = a.cycles;
  cfg.bench.validate();
  const ModelBank bank = load_bank(a.bank);
  std::optional<Trial> trial;
  Mode initial = Mode::Walk;
  if (!a.trial.empty()) {
    trial = load_trial(a.trial, cfg.load_proxy);
    if (a.initial_mode == "auto") {
      cfg.replay.initial_mode.reset();
    } else if (!a.initial_mode.empty()) {
      cfg.replay.initial_mode = parse_mode(a.initial_mode);
    }
    initial = initial_mode_for(*trial, cfg.replay);
  }
  const BenchReport rep =
      run_bench(bank, cfg.bench, trial ? &*trial : nullptr, cfg.detector, initial);
  std::cout << format_bench_table(rep);
  if (!a.out.empty()) {
    write_json(a.out + ".json", bench_to_json(rep));
    auto csv = open_out(a.out + ".csv");
    write_bench_csv(csv, rep);
  }
  return 0;
}

// ---- generate

struct GenerateArgs {
  std::string script;
  std::uint64_t seed = 1;
  std::size_t count = 1;
  std::string out_dir;
  std::optional<double> noise;
  std::string prefix = "trial";
};

int cmd_generate(const Global&, const GenerateArgs& a) {
  SyntheticScript script = protocol_script();
  if (!a.script.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_text(a.script));
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError(a.script + ": " + e.what());
    }
    script = script_from_json(j);
  }
  if (a.noise) script.noise_sd = *a.noise;
  script.validate();
  for (std::size_t i = 0; i < a.count; ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "%s_%03zu", a.prefix.c_str(), i);
    const Trial t = generate_synthetic(script, a.seed + i, name);
    const fs::path p = fs::path(a.out_dir) / (std::string(name) + ".csv");
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    save_trial(t, p);
    std::cout << p.string() << '\n';
  }
  return 0;
}

// ---- report

struct ReportArgs {
  std::string log;
  std::string trial;
  std::string bench;
  std::string out_json;
};

int cmd_report(const Global& g, const ReportArgs& a) {
  if (!a.bench.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_text(a.bench));
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError(a.bench + ": " + e.what());
    }
    try {
      std::cout << "# " << j.at("clock").at("note").get<std::string>() << '\n';
      if (j.contains("warning")) std::cout << "# WARNING: " << j["warning"].get<std::string>() << '\n';
      std::cout << "transition,th_median_s,ml_median_s,th_ml_ratio\n";
      for (const auto& [edge, ratio] : j.at("th_ml_median_ratio").items()) {
        double th = 0, ml = 0;
        for (const auto& r : j.at("results")) {
          if (r.at("transition") != edge) continue;
          (r.at("method") == "TH" ? th : ml) = r.at("median_s").get<double>();
        }
        std::cout << edge << ',' << format_double(th) << ',' << format_double(ml) << ','
                  << (ratio.is_null() ? std::string() : format_double(ratio.get<double>()))
                  << '\n';
      }
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(a.bench + ": not a bench report (" + e.what() + ")");
    }
    return 0;
  }
  if (a.log.empty() || a.trial.empty()) {
    throw ConfigError("report needs --log with --trial, or --bench");
  }
  const EngineConfig cfg = resolve_config(g);
  std::ifstream in(a.log, std::ios::binary);
  if (!in) throw DataError("cannot read " + a.log);
  const auto decisions = read_decision_log(in);
  const Trial trial = load_trial(a.trial, cfg.load_proxy);
  if (!trial.annotated()) throw LabelingError(a.trial + " has no annotations");
  const auto truth = annotated_boundaries(trial.annotations);
  const AccuracyReport rep = match_transitions(decisions, truth, cfg.replay.match_window);
  write_accuracy_csv(std::cout, rep);
  if (!a.out_json.empty()) write_json(a.out_json, accuracy_to_json(rep));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locomotion transition recognition: threshold vs ML classifiers"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--config", g.config_path, "JSON engine config")->check(CLI::ExistingFile);

  TrainArgs ta;
  auto* train = app.add_subcommand("train", "fit the six transition classifiers");
  train->add_option("--data", ta.data, "trial CSV or directory")->required();
  train->add_option("--out", ta.out, "model bank JSON to write")->required();
  train->add_option("--summary-json", ta.summary_json, "also write the summary as JSON");

  ReplayArgs ra;
  auto* replay = app.add_subcommand("replay", "run trials through the FSM and score transition detection");
  replay->add_option("--trials", ra.trials, "trial CSV or directory")->required();
  replay->add_option("--bank", ra.bank, "model bank JSON")->required();
  replay->add_option("--initial-mode", ra.initial_mode,
                     "sit, walk, stair_ascent, stair_descent or auto (first annotation)");
  replay->add_option("--method", ra.method, "TH or ML");
  replay->add_option("--log-dir", ra.log_dir, "write <trial>.decisions.csv here");
  replay->add_option("--out-json", ra.out_json, "per-trial summary and accuracy");
  replay->add_option("--out-csv", ra.out_csv, "accuracy table");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "TH vs ML latency per classifier");
  bench->add_option("--bank", ba.bank, "model bank JSON")->required();
  bench->add_option("--cycles", ba.cycles, "recorded cycles per method (>= 10)");
  bench->add_option("--out", ba.out, "report prefix: writes <out>.json and <out>.csv");
  bench->add_option("--trial", ba.trial, "also time the whole FSM over this trial");
  bench->add_option("--initial-mode", ba.initial_mode, "initial mode for --trial");

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "write synthetic trials");
  gen->add_option("--script", ga.script, "script JSON (default: the 6-transition protocol)");
  gen->add_option("--seed", ga.seed, "noise seed of the first trial; trial i uses seed+i");
  gen->add_option("--count", ga.count, "number of trials")->check(CLI::PositiveNumber);
  gen->add_option("--out-dir", ga.out_dir, "output directory")->required();
  gen->add_option("--noise", ga.noise, "override the script's noise_sd");
  gen->add_option("--prefix", ga.prefix, "file name prefix");

  ReportArgs rpa;
  auto* report = app.add_subcommand("report", "score a decision log, or tabulate a bench report");
  report->add_option("--log", rpa.log, "decision log CSV");
  report->add_option("--trial", rpa.trial, "annotated trial the log came from");
  report->add_option("--bench", rpa.bench, "bench JSON report");
  report->add_option("--out-json", rpa.out_json, "accuracy as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*train) return cmd_train(g, ta);
    if (*replay) return cmd_replay(g, ra);
    if (*bench) return cmd_bench(g, ba);
    if (*gen) return cmd_generate(g, ga);
    if (*report) return cmd_report(g, rpa);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitConfig;
}
