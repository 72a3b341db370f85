#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>

#include "locotrans/classifier.hpp"
#include "locotrans/types.hpp"

namespace locotrans {

/// Training bookkeeping stored next to each classifier. Absent values mean
/// the bucket was empty (e.g. no test trials).
struct ClassifierStats {
  std::optional<double> train_accuracy;
  std::optional<double> test_accuracy;
  std::size_t n_train = 0;
  std::size_t n_test = 0;

  friend bool operator==(const ClassifierStats&, const ClassifierStats&) = default;
};

/// One threshold classifier per FSM edge; all six are always present.
struct ModelBank {
  std::array<ThresholdModel, 6> models{};
  std::array<ClassifierStats, 6> stats{};

  const ThresholdModel& at(TransitionKind k) const { return models[index_of(k)]; }
  ThresholdModel& at(TransitionKind k) { return models[index_of(k)]; }

  friend bool operator==(const ModelBank&, const ModelBank&) = default;
};

/// A threshold model whose source is the exact linear equivalent
/// (w = +-1, b = -+threshold, SVM), so both prediction paths agree.
ThresholdModel threshold_model(double threshold, bool fire_above);

/// Bank built from hand-picked thresholds, indexed like kAllTransitions.
ModelBank make_bank(const std::array<std::pair<double, bool>, 6>& thresholds);

/// A bank in which no classifier can fire on finite degree-scale input
/// (thresholds at +-1e9).
ModelBank never_firing_bank();

std::string bank_to_json_text(const ModelBank& bank);

/// Throws SchemaError on a missing/extra edge, a malformed entry or a
/// threshold that is not -b/w of its source (1e-9 relative).
ModelBank bank_from_json_text(const std::string& text);

void save_bank(const ModelBank& bank, const std::filesystem::path& path);
ModelBank load_bank(const std::filesystem::path& path);

}  // namespace locotrans
