#include "locotrans/pipeline.hpp"

#include <set>
#include <string>

#include "locotrans/error.hpp"

namespace locotrans {

TrainResult train_bank(const std::vector<Trial>& trials, const EngineConfig& cfg) {
  cfg.validate();
  if (trials.empty()) throw InsufficientDataError("no trials to train on");
  TrainResult result;
  result.split = split_dataset(trials, cfg.training.split_seed);

  const std::set<std::string> train_ids(result.split.train.begin(), result.split.train.end());
  const std::set<std::string> test_ids(result.split.test.begin(), result.split.test.end());
  FeatureBuckets train;
  FeatureBuckets test;
  const LabelingOptions lab{cfg.training.lookahead};
  for (const Trial& t : trials) {
    const bool in_train = train_ids.count(t.id) > 0;
    const bool in_test = test_ids.count(t.id) > 0;
    if (!in_train && !in_test) continue;
    const TrainingFeatures f = build_training_features(t, cfg.detector, lab);
    append(in_train ? train : test, f.buckets);
  }

  for (TransitionKind k : kAllTransitions) {
    const auto& data = train[index_of(k)];
    const std::string name(to_string(k));
    if (data.empty()) {
      throw InsufficientDataError(name + ": no training examples (no events routed to this transition)");
    }
    std::size_t pos = 0;
    for (const auto& f : data) pos += f.label ? 1 : 0;
    if (pos == 0) {
      throw DegenerateDataError(name + ": training data lacks positive examples");
    }
    if (pos == data.size()) {
      throw DegenerateDataError(name + ": training data lacks negative examples");
    }

    const ModelSelection sel = select_model(data, cfg.training.logistic, cfg.training.svm);
    ThresholdModel model;
    try {
      model = extract_threshold(sel.chosen);
    } catch (const NoBoundaryError& e) {
      throw NoBoundaryError(name + ": " + e.what());
    }

    TrainSummaryRow& row = result.summary[index_of(k)];
    row.kind = k;
    row.algorithm = sel.chosen.algorithm;
    row.threshold = model.threshold;
    row.fire_above = model.fire_above;
    row.logistic_train_accuracy = sel.logistic_accuracy;
    row.svm_train_accuracy = sel.svm_accuracy;
    row.train_accuracy = classifier_accuracy(model, data);
    row.n_train = data.size();
    row.n_train_positive = pos;
    const auto& held = test[index_of(k)];
    row.n_test = held.size();
    if (!held.empty()) row.test_accuracy = classifier_accuracy(model, held);

    result.bank.at(k) = model;
    ClassifierStats& st = result.bank.stats[index_of(k)];
    st.train_accuracy = row.train_accuracy;
    st.test_accuracy = row.test_accuracy;
    st.n_train = row.n_train;
    st.n_test = row.n_test;
  }
  return result;
}

Mode initial_mode_for(const Trial& trial, const ReplayConfig& cfg) {
  if (cfg.initial_mode) return *cfg.initial_mode;
  return trial.annotated() ? trial.annotations.front().mode : Mode::Walk;
}

ReplayResult replay_trials(const std::vector<Trial>& trials, const ModelBank& bank,
                           const EngineConfig& cfg) {
  cfg.validate();
  ReplayResult out;
  for (const Trial& t : trials) {
    TrialReplay r;
    r.id = t.id;
    r.initial_mode = initial_mode_for(t, cfg.replay);
    r.log = run_stream(bank, cfg.detector, t.samples, r.initial_mode, cfg.replay.method);
    if (t.annotated()) {
      const auto truth = annotated_boundaries(t.annotations);
      r.accuracy = match_transitions(r.log.decisions, truth, cfg.replay.match_window);
      out.total += *r.accuracy;
    } else {
      ++out.unannotated;
    }
    out.trials.push_back(std::move(r));
  }
  return out;
}

}  // namespace locotrans
