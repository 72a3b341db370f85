#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "locotrans/types.hpp"

namespace locotrans {

struct DetectorConfig {
  /// Minimum rise of a thigh-angle peak above the preceding valley, degrees.
  double mhf_min_prominence = 5.0;
  /// Minimum spacing between two MHF events, seconds.
  double mhf_refractory = 0.3;
  /// Width of the centered moving average the peak test runs on, samples.
  /// Odd; 1 disables smoothing.
  int mhf_smoothing = 9;
  /// Load level separating Unloaded from Loaded (newtons or proxy units).
  double hs_load_threshold = 50.0;
  double crossing_band_low = 70.0;
  double crossing_band_high = 75.0;
  double legacy_crossing = 10.0;
  bool use_legacy_crossing = false;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;

  friend bool operator==(const DetectorConfig&, const DetectorConfig&) = default;
};

/// Fixed-capacity list of the events produced by one sample, in the order
/// MHF, HS, BandCrossing. Never allocates.
class EventBatch {
 public:
  void push_back(const GaitEvent& e) { events_[size_++] = e; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  const GaitEvent& operator[](std::size_t i) const { return events_[i]; }
  const GaitEvent* begin() const noexcept { return events_.data(); }
  const GaitEvent* end() const noexcept { return events_.data() + size_; }

 private:
  std::array<GaitEvent, 3> events_{};
  std::size_t size_ = 0;
};

/// Single-pass detector for maximum hip flexion, heel strike and thigh-angle
/// band crossings.
///
/// MHF: the centered moving average of theta is tested with a 3-point strict
/// local maximum, must rise at least `mhf_min_prominence` above the lowest
/// filtered value since the previous MHF, and must be `mhf_refractory` after
/// it. The event is stamped with the peak's own time, which lags the sample
/// that confirms it by (mhf_smoothing - 1) / 2 + 1 samples.
///
/// HS: load goes from below to at-or-above `hs_load_threshold`.
///
/// BandCrossing: theta enters [low, high] (or jumps across it between two
/// samples); re-armed once theta is outside the band again. In legacy mode,
/// any crossing of `legacy_crossing` in either direction.
///
/// The first sample only seeds the load and band state; it never emits HS or
/// BandCrossing.
class EventDetector {
 public:
  explicit EventDetector(DetectorConfig cfg = {});

  /// Throws StreamError on a non-finite field or a timestamp that does not
  /// strictly increase. The detector state is left unchanged in that case.
  EventBatch push(const GaitSample& s);

  /// Back to the freshly constructed state; the config is kept.
  void reset();

  const DetectorConfig& config() const noexcept { return cfg_; }
  std::size_t samples_seen() const noexcept { return seen_; }

 private:
  struct FilteredPoint {
    double t;
    double theta;
    double theta_dot;
  };

  std::optional<GaitEvent> update_peak(const GaitSample& s);
  std::optional<GaitEvent> update_load(const GaitSample& s);
  std::optional<GaitEvent> update_band(const GaitSample& s);

  DetectorConfig cfg_;
  std::size_t seen_ = 0;
  double last_t_ = 0.0;

  // Smoothing window (ring buffer of raw samples).
  std::vector<GaitSample> window_;
  std::size_t window_head_ = 0;
  std::size_t window_count_ = 0;

  // Last three filtered points, oldest first.
  std::array<FilteredPoint, 3> ring_{};
  std::size_t ring_count_ = 0;
  double valley_ = 0.0;
  std::optional<double> last_mhf_t_;

  bool loaded_ = false;
  bool in_band_ = false;
  double prev_theta_ = 0.0;
};

/// Runs a whole sequence through a fresh detector and concatenates the
/// events. Convenience for tests and offline tools.
std::vector<GaitEvent> detect_events(const std::vector<GaitSample>& samples,
                                     const DetectorConfig& cfg);

}  // namespace locotrans
