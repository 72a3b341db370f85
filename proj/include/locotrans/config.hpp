#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "json.hpp"
#include "locotrans/bench.hpp"
#include "locotrans/classifier.hpp"
#include "locotrans/event_detector.hpp"
#include "locotrans/fsm.hpp"
#include "locotrans/trial.hpp"

namespace locotrans {

struct TrainingConfig {
  LogisticOptions logistic;
  SvmOptions svm;
  std::uint64_t split_seed = 7;
  double lookahead = 0.5;  // labeling window, seconds
};

struct ReplayConfig {
  double match_window = 1.5;  // seconds
  /// nullopt: start each trial in its first annotated mode (Walk if none).
  std::optional<Mode> initial_mode;
  Method method = Method::Threshold;
};

/// Everything the CLI reads from --config. Each section maps to a JSON
/// object of the same name; missing keys keep their defaults.
struct EngineConfig {
  DetectorConfig detector;
  TrainingConfig training;
  ReplayConfig replay;
  BenchOptions bench;
  LoadProxy load_proxy;

  /// Throws ConfigError.
  void validate() const;
};

nlohmann::json config_to_json(const EngineConfig& cfg);

/// Strict: unknown sections or keys and wrong types are ConfigErrors.
EngineConfig config_from_json(const nlohmann::json& j);

/// Reads a JSON config file. Throws ConfigError (ParseError for bad JSON).
EngineConfig load_config(const std::filesystem::path& path);

inline constexpr const char* kEnvPrefix = "LOCOTRANS_";

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// getenv-backed lookup.
EnvLookup process_env();

/// Every key can be overridden by LOCOTRANS_<SECTION>_<KEY> in upper case,
/// e.g. LOCOTRANS_DETECTOR_MHF_MIN_PROMINENCE=4. Values are parsed as the
/// key's type (number, true/false, or text).
EngineConfig apply_env_overrides(const EngineConfig& cfg, const EnvLookup& env);

}  // namespace locotrans
