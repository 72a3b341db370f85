#include "locotrans/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "locotrans/error.hpp"

namespace locotrans {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRampSpeed = 150.0;    // deg/s on the sit/stand ramps
constexpr double kBandSpeed = 25.0;     // slow leg through the band, ~10 samples
constexpr double kReboundSpeed = 100.0;  // 1 deg/sample, so a sample clears 75

// Hesitation waypoints around the default 70-75 band. Each ramp crosses the
// band on a slow leg (so the first entry is seen, with the right velocity
// sign, even under noise), leaves it the way it came and re-enters it once
// more in the same direction.
constexpr double kSitDownSlowFrom = 70.5;
constexpr double kSitDownSlowTo = 73.0;
constexpr double kSitDownDip = 62.0;
constexpr double kStandUpSlowFrom = 74.5;
constexpr double kStandUpSlowTo = 72.0;
constexpr double kStandUpRebound = 76.5;  // 4.5 deg: under the MHF prominence

struct Waypoint {
  double theta;
  double speed;  // of the leg arriving here
};

// Linear legs, constant speed each.
struct Ramp {
  std::vector<double> times;   // leg end times, relative
  std::vector<double> angles;  // angles at 0 and each leg end
  double length() const { return times.empty() ? 0.0 : times.back(); }

  void eval(double u, double& theta, double& theta_dot) const {
    double t0 = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (u < times[i] || i + 1 == times.size()) {
        const double a = angles[i];
        const double b = angles[i + 1];
        const double slope = (b - a) / (times[i] - t0);
        const double v = std::clamp(u - t0, 0.0, times[i] - t0);
        theta = a + slope * v;
        theta_dot = slope;
        return;
      }
      t0 = times[i];
    }
  }
};

Ramp make_ramp(double start, std::initializer_list<Waypoint> points) {
  Ramp r;
  r.angles.push_back(start);
  double t = 0.0;
  double prev = start;
  for (const Waypoint& p : points) {
    t += std::abs(p.theta - prev) / p.speed;
    r.times.push_back(t);
    r.angles.push_back(p.theta);
    prev = p.theta;
  }
  return r;
}

struct Piece {
  Mode mode;
  double start = 0.0;
  double length = 0.0;
  Ramp ramp;               // sit-down or stand-up; may be empty
  int cycles = 0;          // locomotion only
  double first_trough = 0.0;  // where the first cycle starts
};

double trough(Mode m) {
  const GaitTemplate g = gait_template(m);
  return g.center - g.amplitude;
}

}  // namespace

void SyntheticScript::validate() const {
  if (segments.empty()) throw SchemaError("script has no segments");
  if (!(sample_rate >= 50.0) || !std::isfinite(sample_rate)) {
    throw SchemaError("sample_rate must be >= 50 Hz");
  }
  if (!(cadence > 0.0) || !std::isfinite(cadence)) throw SchemaError("cadence must be > 0");
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) {
    throw SchemaError("noise_sd must be >= 0");
  }
  if (!(body_weight > 0.0) || !std::isfinite(body_weight)) {
    throw SchemaError("body_weight must be > 0");
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const double d = segments[i].duration;
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw SchemaError("segment " + std::to_string(i + 1) + ": duration must be > 0");
    }
    if (i > 0 && !transition_between(segments[i - 1].mode, segments[i].mode)) {
      throw SchemaError("segment " + std::to_string(i + 1) + ": " +
                        std::string(to_string(segments[i - 1].mode)) + " -> " +
                        std::string(to_string(segments[i].mode)) +
                        " is not an FSM transition");
    }
  }
}

GaitTemplate gait_template(Mode m) {
  switch (m) {
    case Mode::Walk:
      return {20.0, 15.0, 0.61};
    case Mode::StairAscent:
      return {33.0, 28.0, 0.70};
    case Mode::StairDescent:
      return {25.0, 12.0, 0.85};
    case Mode::Sit:
      break;
  }
  throw ConfigError("sit has no gait cycle");
}

Trial generate_synthetic(const SyntheticScript& script, std::uint64_t seed,
                         std::string id) {
  script.validate();
  const double period = 1.0 / script.cadence;

  std::vector<Piece> pieces;
  double t0 = 0.0;
  for (std::size_t i = 0; i < script.segments.size(); ++i) {
    const ScriptSegment& seg = script.segments[i];
    Piece p;
    p.mode = seg.mode;
    p.start = t0;
    const bool has_prev = i > 0;
    const Mode prev = has_prev ? script.segments[i - 1].mode : seg.mode;
    if (seg.mode == Mode::Sit) {
      if (has_prev) {
        p.ramp = make_ramp(trough(prev), {{kSitDownSlowFrom, kRampSpeed},
                                          {kSitDownSlowTo, kBandSpeed},
                                          {kSitDownDip, kRampSpeed},
                                          {kSitAngle, kRampSpeed}});
      }
      p.length = p.ramp.length() + seg.duration;
    } else {
      const double own = trough(seg.mode);
      if (has_prev && prev == Mode::Sit) {
        p.ramp = make_ramp(kSitAngle, {{kStandUpSlowFrom, kRampSpeed},
                                       {kStandUpSlowTo, kBandSpeed},
                                       {kStandUpRebound, kReboundSpeed},
                                       {own, kRampSpeed}});
        p.first_trough = own;
      } else {
        p.first_trough = has_prev ? trough(prev) : own;
      }
      p.cycles = std::max(1, static_cast<int>(std::lround(seg.duration * script.cadence)));
      p.length = p.ramp.length() + p.cycles * period;
    }
    pieces.push_back(p);
    t0 += p.length;
  }

  Trial trial;
  trial.id = std::move(id);
  for (const Piece& p : pieces) trial.annotations.push_back({p.start, p.mode});

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, script.noise_sd > 0 ? script.noise_sd : 1.0);
  const auto n = static_cast<std::size_t>(std::lround(t0 * script.sample_rate));
  trial.samples.reserve(n);
  std::size_t pi = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / script.sample_rate;
    while (pi + 1 < pieces.size() && pieces[pi + 1].start <= t + 1e-12) ++pi;
    const Piece& p = pieces[pi];
    const double u = t - p.start;
    GaitSample s;
    s.t = t;
    if (u < p.ramp.length()) {
      p.ramp.eval(u, s.theta, s.theta_dot);
      s.load = script.body_weight;
    } else if (p.mode == Mode::Sit) {
      s.theta = kSitAngle;
      s.theta_dot = 0.0;
      s.load = 0.0;
    } else {
      const GaitTemplate g = gait_template(p.mode);
      const double cyc = (u - p.ramp.length()) * script.cadence;
      const int idx = std::min(static_cast<int>(std::floor(cyc)), p.cycles - 1);
      const double phi = cyc - idx;
      const double peak = g.center + g.amplitude;
      const double end = g.center - g.amplitude;
      const double w = 2.0 * kPi * phi;
      if (phi < 0.5) {
        const double start = idx == 0 ? p.first_trough : end;
        s.theta = start + (peak - start) * (1.0 - std::cos(w)) / 2.0;
        s.theta_dot = (peak - start) * kPi * script.cadence * std::sin(w);
      } else {
        s.theta = end + (peak - end) * (1.0 + std::cos(w - kPi)) / 2.0;
        s.theta_dot = -(peak - end) * kPi * script.cadence * std::sin(w - kPi);
      }
      s.load = phi >= g.hs_phase ? script.body_weight : 0.0;
    }
    if (script.noise_sd > 0.0) {
      s.theta += noise(rng);
      s.theta_dot += noise(rng);
    }
    trial.samples.push_back(s);
  }
  return trial;
}

SyntheticScript protocol_script(double noise_sd) {
  SyntheticScript s;
  s.segments = {{Mode::Sit, 3.0},         {Mode::Walk, 4.0}, {Mode::StairDescent, 4.0},
                {Mode::Walk, 4.0},        {Mode::StairAscent, 4.0}, {Mode::Walk, 4.0},
                {Mode::Sit, 3.0}};
  s.noise_sd = noise_sd;
  return s;
}

nlohmann::json script_to_json(const SyntheticScript& script) {
  nlohmann::json segs = nlohmann::json::array();
  for (const ScriptSegment& s : script.segments) {
    segs.push_back({{"mode", std::string(to_string(s.mode))}, {"duration", s.duration}});
  }
  return {{"cadence", script.cadence},
          {"noise_sd", script.noise_sd},
          {"sample_rate", script.sample_rate},
          {"body_weight", script.body_weight},
          {"segments", segs}};
}

SyntheticScript script_from_json(const nlohmann::json& j) {
  SyntheticScript s;
  try {
    if (!j.is_object()) throw SchemaError("script must be a JSON object");
    for (const auto& [key, _] : j.items()) {
      if (key != "cadence" && key != "noise_sd" && key != "sample_rate" &&
          key != "body_weight" && key != "segments") {
        throw SchemaError("unknown script key '" + key + "'");
      }
    }
    s.cadence = j.value("cadence", s.cadence);
    s.noise_sd = j.value("noise_sd", s.noise_sd);
    s.sample_rate = j.value("sample_rate", s.sample_rate);
    s.body_weight = j.value("body_weight", s.body_weight);
    for (const auto& seg : j.at("segments")) {
      ScriptSegment g;
      try {
        g.mode = parse_mode(seg.at("mode").get<std::string>());
      } catch (const ParseError& e) {
        throw SchemaError(e.what());
      }
      g.duration = seg.at("duration").get<double>();
      s.segments.push_back(g);
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad script: ") + e.what());
  }
  s.validate();
  return s;
}

}  // namespace locotrans
