#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "locotrans/config.hpp"
#include "locotrans/dataset.hpp"
#include "locotrans/fsm.hpp"
#include "locotrans/metrics.hpp"
#include "locotrans/model_bank.hpp"
#include "locotrans/trial.hpp"

namespace locotrans {

/// One line of the training summary.
struct TrainSummaryRow {
  TransitionKind kind = TransitionKind::WalkToSit;
  Algorithm algorithm = Algorithm::LogisticRegression;
  double threshold = 0.0;
  bool fire_above = true;
  double logistic_train_accuracy = 0.0;
  double svm_train_accuracy = 0.0;
  double train_accuracy = 0.0;
  std::optional<double> test_accuracy;
  std::size_t n_train = 0;
  std::size_t n_train_positive = 0;
  std::size_t n_test = 0;
};

struct TrainResult {
  ModelBank bank;
  DatasetSplit split;
  std::array<TrainSummaryRow, 6> summary{};
};

/// Split by trial, label features, fit both algorithms per edge, keep the
/// better one on training accuracy and distil its threshold.
///
/// Throws LabelingError for unannotated trials, InsufficientDataError when an
/// edge has no training examples and DegenerateDataError when an edge has only
/// one class; both name the edge.
TrainResult train_bank(const std::vector<Trial>& trials, const EngineConfig& cfg);

struct TrialReplay {
  std::string id;
  Mode initial_mode = Mode::Walk;
  TransitionLog log;
  std::optional<AccuracyReport> accuracy;  // absent for unannotated trials
};

struct ReplayResult {
  std::vector<TrialReplay> trials;
  AccuracyReport total;
  std::size_t unannotated = 0;
};

/// Initial mode for a trial under `cfg` (explicit, or its first annotation).
Mode initial_mode_for(const Trial& trial, const ReplayConfig& cfg);

ReplayResult replay_trials(const std::vector<Trial>& trials, const ModelBank& bank,
                           const EngineConfig& cfg);

}  // namespace locotrans
