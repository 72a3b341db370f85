#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace locotrans {

/// One timestamped sensor frame.
///
/// Angles are degrees with thigh flexion positive; velocities are deg/s.
/// `load` is the vertical ground load in newtons, or a dimensionless proxy
/// when it was derived from foot height.
struct GaitSample {
  double t = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;
  double load = 0.0;

  friend bool operator==(const GaitSample&, const GaitSample&) = default;
};

/// FSM states. Standing and ramp walking are folded into Walk.
enum class Mode { Sit, Walk, StairAscent, StairDescent };

inline constexpr std::array<Mode, 4> kAllModes = {
    Mode::Sit, Mode::Walk, Mode::StairAscent, Mode::StairDescent};

/// The six directed edges of the locomotion FSM.
enum class TransitionKind {
  WalkToSit,
  SitToWalk,
  WalkToStairAscent,
  StairAscentToWalk,
  WalkToStairDescent,
  StairDescentToWalk,
};

inline constexpr std::array<TransitionKind, 6> kAllTransitions = {
    TransitionKind::WalkToSit,          TransitionKind::SitToWalk,
    TransitionKind::WalkToStairAscent,  TransitionKind::StairAscentToWalk,
    TransitionKind::WalkToStairDescent, TransitionKind::StairDescentToWalk,
};

constexpr std::size_t index_of(TransitionKind k) {
  return static_cast<std::size_t>(k);
}

constexpr Mode source(TransitionKind k) {
  switch (k) {
    case TransitionKind::WalkToSit:
    case TransitionKind::WalkToStairAscent:
    case TransitionKind::WalkToStairDescent:
      return Mode::Walk;
    case TransitionKind::SitToWalk:
      return Mode::Sit;
    case TransitionKind::StairAscentToWalk:
      return Mode::StairAscent;
    case TransitionKind::StairDescentToWalk:
      return Mode::StairDescent;
  }
  return Mode::Walk;
}

constexpr Mode target(TransitionKind k) {
  switch (k) {
    case TransitionKind::WalkToSit:
      return Mode::Sit;
    case TransitionKind::WalkToStairAscent:
      return Mode::StairAscent;
    case TransitionKind::WalkToStairDescent:
      return Mode::StairDescent;
    case TransitionKind::SitToWalk:
    case TransitionKind::StairAscentToWalk:
    case TransitionKind::StairDescentToWalk:
      return Mode::Walk;
  }
  return Mode::Walk;
}

/// The edge from `from` to `to`, if the FSM has one.
constexpr std::optional<TransitionKind> transition_between(Mode from, Mode to) {
  for (TransitionKind k : kAllTransitions) {
    if (source(k) == from && target(k) == to) return k;
  }
  return std::nullopt;
}

enum class EventKind { MaxHipFlexion, HeelStrike, BandCrossing };

/// A characteristic gait moment with the kinematics sampled at that moment.
/// MHF events carry the peak angle; band crossings carry the velocity whose
/// sign becomes ICF-3.
struct GaitEvent {
  EventKind kind = EventKind::MaxHipFlexion;
  double t = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;

  friend bool operator==(const GaitEvent&, const GaitEvent&) = default;
};

enum class IcfKind { Icf1, Icf2, Icf3 };

/// ICF-1/ICF-2 are degrees; ICF-3 is a sign in {-1, 0, +1}.
struct IcfValue {
  IcfKind kind = IcfKind::Icf1;
  double value = 0.0;

  friend bool operator==(const IcfValue&, const IcfValue&) = default;
};

/// ICF-3 of a velocity. Exactly zero counts as non-rising (-1).
constexpr double icf3_sign(double theta_dot) {
  return theta_dot > 0.0 ? 1.0 : -1.0;
}

/// The feature each transition classifier consumes.
constexpr IcfKind feature_of(TransitionKind k) {
  switch (k) {
    case TransitionKind::WalkToSit:
    case TransitionKind::SitToWalk:
      return IcfKind::Icf3;
    case TransitionKind::WalkToStairAscent:
    case TransitionKind::StairAscentToWalk:
      return IcfKind::Icf1;
    case TransitionKind::WalkToStairDescent:
    case TransitionKind::StairDescentToWalk:
      return IcfKind::Icf2;
  }
  return IcfKind::Icf1;
}

/// One evaluated classifier query. `fired` implies the FSM left `mode_before`
/// at time `t`.
struct TransitionDecision {
  TransitionKind kind = TransitionKind::WalkToSit;
  double t = 0.0;
  Mode mode_before = Mode::Walk;
  IcfValue feature;
  bool fired = false;

  friend bool operator==(const TransitionDecision&,
                         const TransitionDecision&) = default;
};

/// Case-insensitive; accepts sit, walk, stair_ascent, stair_descent and the
/// grouping aliases stand and ramp (both Walk). Throws ParseError.
Mode parse_mode(std::string_view name);
std::string_view to_string(Mode m);

/// Accepts the short form ("W->SA") and the unicode arrow ("W→SA").
TransitionKind parse_transition(std::string_view name);
std::string_view to_string(TransitionKind k);

EventKind parse_event_kind(std::string_view name);
std::string_view to_string(EventKind k);

IcfKind parse_icf_kind(std::string_view name);
std::string_view to_string(IcfKind k);

}  // namespace locotrans
