#include "locotrans/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>

#include "locotrans/error.hpp"
#include "locotrans/serialization.hpp"

namespace locotrans {

using nlohmann::json;

void EngineConfig::validate() const {
  detector.validate();
  if (!(training.logistic.learning_rate > 0.0) || training.logistic.epochs < 1 ||
      !(training.logistic.l2 >= 0.0)) {
    throw ConfigError("training: learning_rate > 0, epochs >= 1, l2 >= 0");
  }
  if (!(training.svm.c > 0.0) || training.svm.epochs < 1) {
    throw ConfigError("training: svm_c > 0, svm_epochs >= 1");
  }
  if (!(training.lookahead > 0.0)) throw ConfigError("training: lookahead must be > 0");
  if (!(replay.match_window > 0.0)) throw ConfigError("replay: match_window must be > 0");
  bench.validate();
}

json config_to_json(const EngineConfig& c) {
  const DetectorConfig& d = c.detector;
  return {
      {"detector",
       {{"mhf_min_prominence", d.mhf_min_prominence},
        {"mhf_refractory", d.mhf_refractory},
        {"mhf_smoothing", d.mhf_smoothing},
        {"hs_load_threshold", d.hs_load_threshold},
        {"crossing_band_low", d.crossing_band_low},
        {"crossing_band_high", d.crossing_band_high},
        {"legacy_crossing", d.legacy_crossing},
        {"use_legacy_crossing", d.use_legacy_crossing}}},
      {"training",
       {{"learning_rate", c.training.logistic.learning_rate},
        {"epochs", c.training.logistic.epochs},
        {"l2", c.training.logistic.l2},
        {"svm_c", c.training.svm.c},
        {"svm_epochs", c.training.svm.epochs},
        {"split_seed", c.training.split_seed},
        {"lookahead", c.training.lookahead}}},
      {"replay",
       {{"match_window", c.replay.match_window},
        {"initial_mode", c.replay.initial_mode
                             ? std::string(to_string(*c.replay.initial_mode))
                             : std::string("auto")},
        {"method", std::string(to_string(c.replay.method))}}},
      {"bench",
       {{"cycles", c.bench.cycles},
        {"warmup", c.bench.warmup},
        {"batch", c.bench.batch},
        {"seed", c.bench.seed}}},
      {"load_proxy",
       {{"contact_height", c.load_proxy.contact_height},
        {"contact_load", c.load_proxy.contact_load}}},
  };
}

EngineConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  // Validate the shape against the defaults: same sections, same keys, and
  // values of a compatible JSON type.
  const json defaults = config_to_json(EngineConfig{});
  json merged = defaults;
  for (const auto& [section, body] : j.items()) {
    if (!defaults.contains(section)) throw ConfigError("unknown config section '" + section + "'");
    if (!body.is_object()) throw ConfigError("config section '" + section + "' must be an object");
    for (const auto& [key, value] : body.items()) {
      const json& def = defaults[section];
      if (!def.contains(key)) {
        throw ConfigError("unknown config key '" + section + "." + key + "'");
      }
      const json& ref = def[key];
      const bool ok = (ref.is_number() && value.is_number()) ||
                      (ref.is_boolean() && value.is_boolean()) ||
                      (ref.is_string() && value.is_string());
      if (!ok) throw ConfigError("config key '" + section + "." + key + "' has the wrong type");
      if (ref.is_number_integer() && !value.is_number_integer()) {
        throw ConfigError("config key '" + section + "." + key + "' must be an integer");
      }
      if (ref.is_number_unsigned() && value.is_number_integer() && value.get<long long>() < 0) {
        throw ConfigError("config key '" + section + "." + key + "' must be >= 0");
      }
      merged[section][key] = value;
    }
  }

  EngineConfig c;
  const json& d = merged["detector"];
  c.detector.mhf_min_prominence = d["mhf_min_prominence"].get<double>();
  c.detector.mhf_refractory = d["mhf_refractory"].get<double>();
  c.detector.mhf_smoothing = d["mhf_smoothing"].get<int>();
  c.detector.hs_load_threshold = d["hs_load_threshold"].get<double>();
  c.detector.crossing_band_low = d["crossing_band_low"].get<double>();
  c.detector.crossing_band_high = d["crossing_band_high"].get<double>();
  c.detector.legacy_crossing = d["legacy_crossing"].get<double>();
  c.detector.use_legacy_crossing = d["use_legacy_crossing"].get<bool>();

  const json& t = merged["training"];
  c.training.logistic.learning_rate = t["learning_rate"].get<double>();
  c.training.logistic.epochs = t["epochs"].get<int>();
  c.training.logistic.l2 = t["l2"].get<double>();
  c.training.svm.c = t["svm_c"].get<double>();
  c.training.svm.epochs = t["svm_epochs"].get<int>();
  c.training.split_seed = t["split_seed"].get<std::uint64_t>();
  c.training.lookahead = t["lookahead"].get<double>();

  const json& r = merged["replay"];
  c.replay.match_window = r["match_window"].get<double>();
  const auto initial = r["initial_mode"].get<std::string>();
  c.replay.initial_mode =
      initial == "auto" ? std::nullopt : std::optional<Mode>(parse_mode(initial));
  c.replay.method = parse_method(r["method"].get<std::string>());

  const json& b = merged["bench"];
  c.bench.cycles = b["cycles"].get<std::size_t>();
  c.bench.warmup = b["warmup"].get<std::size_t>();
  c.bench.batch = b["batch"].get<std::size_t>();
  c.bench.seed = b["seed"].get<std::uint64_t>();

  const json& l = merged["load_proxy"];
  c.load_proxy.contact_height = l["contact_height"].get<double>();
  c.load_proxy.contact_load = l["contact_load"].get<double>();

  c.validate();
  return c;
}

EngineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

EngineConfig apply_env_overrides(const EngineConfig& cfg, const EnvLookup& env) {
  json j = config_to_json(cfg);
  bool changed = false;
  for (auto& [section, body] : j.items()) {
    for (auto& [key, value] : body.items()) {
      std::string name = std::string(kEnvPrefix) + section + "_" + key;
      std::transform(name.begin(), name.end(), name.begin(),
                     [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
      const auto text = env(name);
      if (!text) continue;
      changed = true;
      if (value.is_boolean()) {
        if (*text == "true" || *text == "1") {
          value = true;
        } else if (*text == "false" || *text == "0") {
          value = false;
        } else {
          throw ConfigError(name + ": expected true or false");
        }
      } else if (value.is_number_integer()) {
        try {
          std::size_t used = 0;
          const long long v = std::stoll(*text, &used);
          if (used != text->size()) throw std::invalid_argument("trailing");
          value = v;
        } catch (const std::exception&) {
          throw ConfigError(name + ": expected an integer");
        }
      } else if (value.is_number()) {
        double v = 0.0;
        if (!parse_double(*text, v)) throw ConfigError(name + ": expected a number");
        value = v;
      } else {
        value = *text;
      }
    }
  }
  if (!changed) return cfg;
  return config_from_json(j);
}

}  // namespace locotrans
