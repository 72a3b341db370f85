#include "locotrans/fsm.hpp"

#include <string>

#include "locotrans/error.hpp"

namespace locotrans {

std::string_view to_string(Method m) {
  return m == Method::Threshold ? "TH" : "ML";
}

Method parse_method(std::string_view name) {
  if (name == "TH" || name == "th" || name == "threshold") return Method::Threshold;
  if (name == "ML" || name == "ml") return Method::MachineLearning;
  throw ParseError("unknown method '" + std::string(name) + "'");
}

FsmEngine::FsmEngine(ModelBank bank, Mode initial, Method method)
    : bank_(std::move(bank)), method_(method), mode_(initial) {}

void FsmEngine::reset(Mode initial) {
  mode_ = initial;
  pending_mhf_.reset();
  log_.clear();
  missing_mhf_ = 0;
}

std::optional<RoutedQuery> route_event(Mode mode, const GaitEvent& e,
                                       std::optional<double>& pending_mhf,
                                       std::size_t& missing_mhf) {
  auto icf2 = [&](TransitionKind k) -> std::optional<RoutedQuery> {
    if (!pending_mhf) {
      ++missing_mhf;
      return std::nullopt;
    }
    const double v = *pending_mhf - e.theta;
    pending_mhf.reset();
    return RoutedQuery{k, {IcfKind::Icf2, v}};
  };
  const IcfValue sign{IcfKind::Icf3, icf3_sign(e.theta_dot)};

  switch (mode) {
    case Mode::Walk:
      switch (e.kind) {
        case EventKind::MaxHipFlexion:
          pending_mhf = e.theta;
          return RoutedQuery{TransitionKind::WalkToStairAscent, {IcfKind::Icf1, e.theta}};
        case EventKind::HeelStrike:
          return icf2(TransitionKind::WalkToStairDescent);
        case EventKind::BandCrossing:
          return RoutedQuery{TransitionKind::WalkToSit, sign};
      }
      break;
    case Mode::Sit:
      if (e.kind == EventKind::BandCrossing) {
        return RoutedQuery{TransitionKind::SitToWalk, sign};
      }
      break;
    case Mode::StairAscent:
      if (e.kind == EventKind::MaxHipFlexion) {
        return RoutedQuery{TransitionKind::StairAscentToWalk, {IcfKind::Icf1, e.theta}};
      }
      break;
    case Mode::StairDescent:
      if (e.kind == EventKind::MaxHipFlexion) {
        pending_mhf = e.theta;
      } else if (e.kind == EventKind::HeelStrike) {
        return icf2(TransitionKind::StairDescentToWalk);
      }
      break;
  }
  return std::nullopt;
}

std::optional<TransitionDecision> FsmEngine::on_event(const GaitEvent& e) {
  const auto q = route_event(mode_, e, pending_mhf_, missing_mhf_);
  if (!q) return std::nullopt;
  const ThresholdModel& m = bank_.at(q->kind);
  const bool fired = method_ == Method::Threshold
                         ? predict_th(m, q->feature.value)
                         : predict_ml(m.source, q->feature.value);
  const TransitionDecision d{q->kind, e.t, mode_, q->feature, fired};
  log_.push_back(d);
  if (fired) {
    mode_ = target(q->kind);
    pending_mhf_.reset();
  }
  return d;
}

std::vector<TransitionDecision> TransitionLog::fired() const {
  std::vector<TransitionDecision> out;
  for (const auto& d : decisions) {
    if (d.fired) out.push_back(d);
  }
  return out;
}

TransitionLog run_stream(const ModelBank& bank, const DetectorConfig& cfg,
                         std::span<const GaitSample> samples, Mode initial,
                         Method method) {
  EventDetector detector(cfg);
  FsmEngine engine(bank, initial, method);
  TransitionLog log;
  log.initial_mode = initial;
  for (const GaitSample& s : samples) {
    for (const GaitEvent& e : detector.push(s)) {
      ++log.events;
      engine.on_event(e);
    }
  }
  log.final_mode = engine.mode();
  log.decisions = engine.log();
  log.missing_mhf = engine.missing_mhf_count();
  return log;
}

Mode replay_fired(Mode initial, std::span<const TransitionDecision> decisions) {
  Mode mode = initial;
  for (const TransitionDecision& d : decisions) {
    if (!d.fired) continue;
    if (source(d.kind) != mode || d.mode_before != mode) {
      throw DataError("fired " + std::string(to_string(d.kind)) + " from mode " +
                      std::string(to_string(mode)));
    }
    mode = target(d.kind);
  }
  return mode;
}

}  // namespace locotrans
