#include "locotrans/model_bank.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "locotrans/error.hpp"

namespace locotrans {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "locotrans-model-bank";
constexpr int kVersion = 1;

// JSON has no infinities; a classifier that never (or always) fires keeps its
// threshold as a string.
json number_or_text(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double read_number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw SchemaError(where + ": expected a number");
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> read_optional(const json& entry, const char* key,
                                    const std::string& where) {
  if (!entry.contains(key) || entry.at(key).is_null()) return std::nullopt;
  return read_number(entry.at(key), where + "." + key);
}

}  // namespace

ThresholdModel threshold_model(double threshold, bool fire_above) {
  ThresholdModel t;
  t.threshold = threshold;
  t.fire_above = fire_above;
  t.source.w = fire_above ? 1.0 : -1.0;
  t.source.b = fire_above ? -threshold : threshold;
  t.source.algorithm = Algorithm::LinearSVM;
  return t;
}

ModelBank make_bank(const std::array<std::pair<double, bool>, 6>& thresholds) {
  ModelBank bank;
  for (std::size_t i = 0; i < 6; ++i) {
    bank.models[i] = threshold_model(thresholds[i].first, thresholds[i].second);
  }
  return bank;
}

ModelBank never_firing_bank() {
  ModelBank bank;
  for (auto& m : bank.models) m = threshold_model(1e9, true);
  return bank;
}

std::string bank_to_json_text(const ModelBank& bank) {
  json classifiers = json::object();
  for (TransitionKind k : kAllTransitions) {
    const ThresholdModel& m = bank.at(k);
    const ClassifierStats& s = bank.stats[index_of(k)];
    classifiers[std::string(to_string(k))] = json{
        {"algorithm", std::string(to_string(m.source.algorithm))},
        {"w", m.source.w},
        {"b", m.source.b},
        {"threshold", number_or_text(m.threshold)},
        {"fire_above", m.fire_above},
        {"feature", std::string(to_string(feature_of(k)))},
        {"train_accuracy", optional_number(s.train_accuracy)},
        {"test_accuracy", optional_number(s.test_accuracy)},
        {"n_train", s.n_train},
        {"n_test", s.n_test},
    };
  }
  json root{{"format", kFormat}, {"version", kVersion}, {"classifiers", classifiers}};
  return root.dump(2) + "\n";
}

ModelBank bank_from_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("model bank is not valid JSON: ") + e.what());
  }
  if (!root.is_object() || root.value("format", "") != kFormat) {
    throw SchemaError("not a model bank file (format tag missing)");
  }
  if (root.value("version", 0) != kVersion) {
    throw SchemaError("unsupported model bank version");
  }
  const json& classifiers = root.at("classifiers");
  if (!classifiers.is_object()) throw SchemaError("'classifiers' must be an object");

  ModelBank bank;
  std::array<bool, 6> seen{};
  for (const auto& [key, entry] : classifiers.items()) {
    TransitionKind k;
    try {
      k = parse_transition(key);
    } catch (const ParseError&) {
      throw SchemaError("unknown transition '" + key + "' in model bank");
    }
    if (seen[index_of(k)]) throw SchemaError("duplicate transition '" + key + "'");
    seen[index_of(k)] = true;
    try {
      ThresholdModel m;
      m.source.algorithm = parse_algorithm(entry.at("algorithm").get<std::string>());
      m.source.w = read_number(entry.at("w"), key + ".w");
      m.source.b = read_number(entry.at("b"), key + ".b");
      m.threshold = read_number(entry.at("threshold"), key + ".threshold");
      m.fire_above = entry.at("fire_above").get<bool>();
      if (!threshold_consistent(m)) {
        throw SchemaError(key + ": threshold is not -b/w of its model");
      }
      ClassifierStats& s = bank.stats[index_of(k)];
      s.train_accuracy = read_optional(entry, "train_accuracy", key);
      s.test_accuracy = read_optional(entry, "test_accuracy", key);
      s.n_train = entry.value("n_train", std::size_t{0});
      s.n_test = entry.value("n_test", std::size_t{0});
      bank.at(k) = m;
    } catch (const json::exception& e) {
      throw SchemaError(key + ": " + e.what());
    } catch (const ParseError& e) {
      throw SchemaError(key + ": " + e.what());
    }
  }
  for (TransitionKind k : kAllTransitions) {
    if (!seen[index_of(k)]) {
      throw SchemaError("model bank lacks transition " + std::string(to_string(k)));
    }
  }
  return bank;
}

void save_bank(const ModelBank& bank, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << bank_to_json_text(bank);
  if (!out) throw DataError("write failed: " + path.string());
}

ModelBank load_bank(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return bank_from_json_text(ss.str());
}

}  // namespace locotrans
