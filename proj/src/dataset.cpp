#include "locotrans/dataset.hpp"

#include <cmath>
#include <random>
#include <set>
#include <string>

#include "locotrans/error.hpp"
#include "locotrans/fsm.hpp"

namespace locotrans {

DatasetSplit split_dataset(std::vector<std::string> ids, std::uint64_t seed) {
  // Partitions are keyed by id, so two trials with one id would leak.
  const std::set<std::string> unique(ids.begin(), ids.end());
  if (unique.size() != ids.size()) throw DataError("trial ids must be unique");
  DatasetSplit split;
  split.seed = seed;
  if (ids.size() < kMinTrialsForSplit) {
    split.train = std::move(ids);
    split.degenerate = true;
    return split;
  }
  // Fisher-Yates with an explicit index draw so the permutation does not
  // depend on the standard library's shuffle.
  std::mt19937_64 rng(seed);
  for (std::size_t i = ids.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(ids[i], ids[j]);
  }
  const double n = static_cast<double>(ids.size());
  const auto n_test = static_cast<std::size_t>(std::lround(0.18 * n));
  const auto n_val = static_cast<std::size_t>(std::lround(0.10 * n));
  const std::size_t n_train = ids.size() - n_test - n_val;
  split.train.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.test.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_train),
                    ids.begin() + static_cast<std::ptrdiff_t>(n_train + n_test));
  split.validation.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_train + n_test),
                          ids.end());
  return split;
}

DatasetSplit split_dataset(const std::vector<Trial>& trials, std::uint64_t seed) {
  std::vector<std::string> ids;
  ids.reserve(trials.size());
  for (const Trial& t : trials) ids.push_back(t.id);
  return split_dataset(std::move(ids), seed);
}

std::vector<Boundary> annotated_boundaries(const std::vector<Annotation>& annotations) {
  if (annotations.empty()) throw LabelingError("trial has no annotations");
  std::vector<Boundary> out;
  for (std::size_t i = 1; i < annotations.size(); ++i) {
    const Mode from = annotations[i - 1].mode;
    const Mode to = annotations[i].mode;
    if (from == to) continue;
    const auto k = transition_between(from, to);
    if (!k) {
      throw LabelingError("annotation changes " + std::string(to_string(from)) +
                          " -> " + std::string(to_string(to)) +
                          ", which is not an FSM transition");
    }
    out.push_back({annotations[i].t, *k});
  }
  return out;
}

TrainingFeatures build_training_features(const Trial& trial, const DetectorConfig& cfg,
                                         const LabelingOptions& opts) {
  if (!trial.annotated()) {
    throw LabelingError("trial '" + trial.id + "' has no annotations");
  }
  const std::vector<Boundary> bounds = annotated_boundaries(trial.annotations);

  TrainingFeatures out;
  out.boundaries = bounds.size();
  Mode route = trial.annotations.front().mode;
  std::optional<double> pending;
  std::size_t missing = 0;
  std::size_t next = 0;
  auto move_to = [&](Mode m) {
    if (m != route) pending.reset();
    route = m;
  };

  EventDetector detector(cfg);
  for (const GaitSample& s : trial.samples) {
    for (const GaitEvent& e : detector.push(s)) {
      while (next < bounds.size() && bounds[next].t + opts.lookahead < e.t) {
        move_to(target(bounds[next].kind));
        ++next;
      }
      const auto q = route_event(route, e, pending, missing);
      if (!q) continue;
      const bool open = next < bounds.size() && bounds[next].t <= e.t;
      const bool label = open && bounds[next].kind == q->kind;
      out.buckets[index_of(q->kind)].push_back({q->feature.value, label});
      if (label) {
        ++out.positives;
        move_to(target(q->kind));
        ++next;
      }
    }
  }
  return out;
}

void append(FeatureBuckets& into, const FeatureBuckets& from) {
  for (std::size_t i = 0; i < into.size(); ++i) {
    into[i].insert(into[i].end(), from[i].begin(), from[i].end());
  }
}

}  // namespace locotrans
