#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "locotrans/event_detector.hpp"
#include "locotrans/fsm.hpp"
#include "locotrans/model_bank.hpp"
#include "locotrans/trial.hpp"

namespace locotrans {

struct BenchOptions {
  std::size_t cycles = 100;  // recorded cycles per method
  std::size_t warmup = 10;   // discarded cycles before those
  std::size_t batch = 256;   // classifier calls timed together in one cycle
  std::uint64_t seed = 1;    // feature inputs

  /// Throws ConfigError (cycles < 10, batch < 1).
  void validate() const;
};

/// q1/median/q3 by linear interpolation between order statistics.
struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};
Quartiles quartiles(std::vector<double> values);

/// Per-call latency of one classifier path, seconds.
struct BenchResult {
  TransitionKind kind = TransitionKind::WalkToSit;
  Method method = Method::Threshold;
  std::size_t cycles = 0;
  std::vector<double> latencies;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

struct ClockInfo {
  double resolution = 0.0;  // smallest observed non-zero tick, seconds
  bool coarse = false;      // resolution worse than 1 us
};

/// Samples the steady clock to estimate its usable resolution.
ClockInfo probe_clock();

/// Times predict_th and predict_ml of one bank entry on the same
/// pre-generated inputs, interleaved cycle by cycle (TH, ML, TH, ML, ...).
/// Input generation is outside the timed region. Returns {TH, ML}.
std::pair<BenchResult, BenchResult> benchmark_classifier(TransitionKind kind,
                                                         const ModelBank& bank,
                                                         const BenchOptions& opts = {});

/// Whole-pipeline timing: detector + FSM over one trial, per sample.
struct ReplayTiming {
  Method method = Method::Threshold;
  std::size_t cycles = 0;
  std::size_t samples = 0;
  std::vector<double> latencies;  // seconds per sample
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

/// Returns {TH, ML}, interleaved like benchmark_classifier.
std::pair<ReplayTiming, ReplayTiming> benchmark_replay(const Trial& trial,
                                                       const ModelBank& bank,
                                                       const DetectorConfig& cfg,
                                                       Mode initial,
                                                       const BenchOptions& opts = {});

struct BenchReport {
  ClockInfo clock;
  BenchOptions options;
  std::vector<BenchResult> results;  // TH then ML for each edge, kAllTransitions order
  std::vector<ReplayTiming> replay;  // empty, or {TH, ML}

  /// TH median / ML median for one edge.
  double ratio(TransitionKind k) const;
};

BenchReport run_bench(const ModelBank& bank, const BenchOptions& opts,
                      const Trial* replay_trial = nullptr,
                      const DetectorConfig& cfg = {}, Mode initial = Mode::Walk);

}  // namespace locotrans
