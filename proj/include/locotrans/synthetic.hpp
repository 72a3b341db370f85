#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "locotrans/trial.hpp"

namespace locotrans {

struct ScriptSegment {
  Mode mode = Mode::Walk;
  double duration = 1.0;  // seconds

  friend bool operator==(const ScriptSegment&, const ScriptSegment&) = default;
};

struct SyntheticScript {
  std::vector<ScriptSegment> segments;
  double cadence = 1.8;  // thigh cycles per second
  double noise_sd = 0.0;  // deg on theta, deg/s on theta_dot
  double sample_rate = 100.0;
  double body_weight = 700.0;  // N, load during stance

  /// Throws SchemaError: empty script, duration <= 0, sample_rate < 50,
  /// cadence <= 0, noise_sd < 0, or consecutive modes that are not an FSM edge.
  void validate() const;

  friend bool operator==(const SyntheticScript&, const SyntheticScript&) = default;
};

/// Per-mode thigh cycle: theta runs trough (center - amplitude) -> peak
/// (center + amplitude) -> trough as raised cosines; the foot is loaded from
/// `hs_phase` to the end of the cycle.
struct GaitTemplate {
  double center;
  double amplitude;
  double hs_phase;
};

/// Throws ConfigError for Sit, which has no cycle.
GaitTemplate gait_template(Mode m);

inline constexpr double kSitAngle = 85.0;

/// Piecewise thigh trajectory.
///
/// Locomotion segments last a whole number of cycles, max(1, round(d *
/// cadence)); each cycle starts at the previous trough so the signal is
/// continuous across segments. Sit holds 85 deg unloaded for its duration.
/// Moving between Sit and locomotion adds a loaded ramp at the start of the
/// new segment (sit-down or stand-up), so every annotation marks the moment
/// the movement starts. The ramps hesitate briefly at the 70-75 deg band: the
/// thigh leaves the band and re-enters it once more in the same direction,
/// which gives the sit/stand classifiers their negative examples.
///
/// Annotations are the segment start times. Noise is N(0, noise_sd) from a
/// mt19937_64 seeded with `seed`; with noise_sd = 0 the output does not
/// depend on the seed.
Trial generate_synthetic(const SyntheticScript& script, std::uint64_t seed,
                         std::string id = "synthetic");

/// Sit, Walk, StairDescent, Walk, StairAscent, Walk, Sit: one trial with
/// S->W, W->SD, SD->W, W->SA, SA->W, W->S in that order.
SyntheticScript protocol_script(double noise_sd = 0.0);

nlohmann::json script_to_json(const SyntheticScript& script);
/// Throws SchemaError on a malformed script.
SyntheticScript script_from_json(const nlohmann::json& j);

}  // namespace locotrans
