#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "locotrans/classifier.hpp"
#include "locotrans/event_detector.hpp"
#include "locotrans/trial.hpp"

namespace locotrans {

/// Trial ids per partition. `degenerate` is set when there were too few
/// trials to split and everything went to train.
struct DatasetSplit {
  std::vector<std::string> train;
  std::vector<std::string> test;
  std::vector<std::string> validation;
  std::uint64_t seed = 0;
  bool degenerate = false;

  friend bool operator==(const DatasetSplit&, const DatasetSplit&) = default;
};

inline constexpr std::size_t kMinTrialsForSplit = 10;

/// Seeded shuffle, then 18% test and 10% validation (each rounded to the
/// nearest trial), the rest train. Whole trials only. Throws DataError on
/// duplicate ids.
DatasetSplit split_dataset(std::vector<std::string> ids, std::uint64_t seed);
DatasetSplit split_dataset(const std::vector<Trial>& trials, std::uint64_t seed);

/// An annotated mode change.
struct Boundary {
  double t = 0.0;
  TransitionKind kind = TransitionKind::WalkToSit;

  friend bool operator==(const Boundary&, const Boundary&) = default;
};

/// Mode changes of an annotation list. Throws LabelingError on an empty list
/// or on a change that is not an FSM edge (e.g. Sit -> StairAscent).
std::vector<Boundary> annotated_boundaries(const std::vector<Annotation>& annotations);

using FeatureBuckets = std::array<std::vector<LabeledFeature>, 6>;

struct TrainingFeatures {
  FeatureBuckets buckets;
  std::size_t boundaries = 0;  // annotated mode changes in the trial
  std::size_t positives = 0;   // boundaries that produced a true label
};

struct LabelingOptions {
  double lookahead = 0.5;  // seconds after a boundary in which it can be claimed
};

/// Runs the detector over the trial and routes every event like the FSM
/// would, following the annotations as a perfect classifier would.
///
/// A boundary src->dst at t_b is claimed by the first event in
/// [t_b, t_b + lookahead] whose query is src->dst; that feature is labeled
/// true and routing moves to dst. Until then routing stays in src. A boundary
/// nobody claims in time is dropped and routing follows the annotation.
/// Every other query is labeled false.
TrainingFeatures build_training_features(const Trial& trial, const DetectorConfig& cfg,
                                         const LabelingOptions& opts = {});

void append(FeatureBuckets& into, const FeatureBuckets& from);

}  // namespace locotrans
