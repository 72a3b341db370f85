#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "locotrans/event_detector.hpp"
#include "locotrans/model_bank.hpp"
#include "locotrans/types.hpp"

namespace locotrans {

/// Which runtime path answers classifier queries.
enum class Method { Threshold, MachineLearning };

std::string_view to_string(Method m);  // "TH" / "ML"
Method parse_method(std::string_view name);

/// A classifier query produced by routing one event.
struct RoutedQuery {
  TransitionKind kind;
  IcfValue feature;
};

/// The routing table below as a pure function. `pending_mhf` is updated in
/// place (armed by MHF, consumed by HS); an HS with nothing pending bumps
/// `missing_mhf` and yields no query. Mode changes are the caller's business,
/// including dropping the pending MHF.
std::optional<RoutedQuery> route_event(Mode mode, const GaitEvent& e,
                                       std::optional<double>& pending_mhf,
                                       std::size_t& missing_mhf);

/// Four-state locomotion FSM driven by gait events.
///
/// Routing (mode x event):
///   Walk x MHF          ICF-1 -> W->SA; the MHF angle is kept for ICF-2
///   Walk x HS           ICF-2 = pending MHF - theta -> W->SD
///   Walk x BandCrossing ICF-3 -> W->S
///   Sit  x BandCrossing ICF-3 -> S->W
///   SA   x MHF          ICF-1 -> SA->W
///   SD   x MHF          arms ICF-2 only
///   SD   x HS           ICF-2 -> SD->W
/// anything else is ignored. The pending MHF is dropped after every HS query
/// and on every mode change. An HS with nothing pending is counted, not
/// queried.
class FsmEngine {
 public:
  explicit FsmEngine(ModelBank bank, Mode initial = Mode::Walk,
                     Method method = Method::Threshold);

  /// Returns the decision when the event triggered a query.
  std::optional<TransitionDecision> on_event(const GaitEvent& e);

  /// Clears log, pending MHF and counters; the bank is kept.
  void reset(Mode initial);

  Mode mode() const noexcept { return mode_; }
  Method method() const noexcept { return method_; }
  std::optional<double> pending_mhf() const noexcept { return pending_mhf_; }
  const std::vector<TransitionDecision>& log() const noexcept { return log_; }
  std::size_t missing_mhf_count() const noexcept { return missing_mhf_; }
  const ModelBank& bank() const noexcept { return bank_; }

 private:
  ModelBank bank_;
  Method method_;
  Mode mode_;
  std::optional<double> pending_mhf_;
  std::vector<TransitionDecision> log_;
  std::size_t missing_mhf_ = 0;
};

struct TransitionLog {
  Mode initial_mode = Mode::Walk;
  Mode final_mode = Mode::Walk;
  std::vector<TransitionDecision> decisions;
  std::size_t events = 0;
  std::size_t missing_mhf = 0;

  std::vector<TransitionDecision> fired() const;

  friend bool operator==(const TransitionLog&, const TransitionLog&) = default;
};

/// Sample-by-sample replay through a fresh detector and engine. Stream errors
/// propagate with the offending sample index.
TransitionLog run_stream(const ModelBank& bank, const DetectorConfig& cfg,
                         std::span<const GaitSample> samples,
                         Mode initial = Mode::Walk,
                         Method method = Method::Threshold);

/// Applies the fired decisions to `initial`. Throws DataError if a fired
/// decision does not start from the mode reached so far.
Mode replay_fired(Mode initial, std::span<const TransitionDecision> decisions);

}  // namespace locotrans
