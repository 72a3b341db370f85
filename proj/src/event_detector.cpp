#include "locotrans/event_detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "locotrans/error.hpp"

namespace locotrans {

void DetectorConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(mhf_min_prominence)) {
    throw ConfigError("mhf_min_prominence must be > 0");
  }
  if (!positive(mhf_refractory)) throw ConfigError("mhf_refractory must be > 0");
  if (!positive(hs_load_threshold)) {
    throw ConfigError("hs_load_threshold must be > 0");
  }
  if (mhf_smoothing < 1 || mhf_smoothing % 2 == 0) {
    throw ConfigError("mhf_smoothing must be an odd sample count >= 1");
  }
  if (!std::isfinite(crossing_band_low) || !std::isfinite(crossing_band_high) ||
      !(crossing_band_low < crossing_band_high)) {
    throw ConfigError("crossing_band_low must be < crossing_band_high");
  }
  if (!std::isfinite(legacy_crossing)) {
    throw ConfigError("legacy_crossing must be finite");
  }
}

EventDetector::EventDetector(DetectorConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  window_.resize(static_cast<std::size_t>(cfg_.mhf_smoothing));
  reset();
}

void EventDetector::reset() {
  seen_ = 0;
  last_t_ = 0.0;
  window_head_ = 0;
  window_count_ = 0;
  ring_count_ = 0;
  valley_ = std::numeric_limits<double>::infinity();
  last_mhf_t_.reset();
  loaded_ = false;
  in_band_ = false;
  prev_theta_ = 0.0;
}

EventBatch EventDetector::push(const GaitSample& s) {
  if (!std::isfinite(s.t) || !std::isfinite(s.theta) ||
      !std::isfinite(s.theta_dot) || !std::isfinite(s.load)) {
    throw StreamError(seen_, "non-finite sample field");
  }
  if (seen_ > 0 && !(s.t > last_t_)) {
    throw StreamError(seen_, "timestamp does not increase");
  }

  EventBatch out;
  if (auto e = update_peak(s)) out.push_back(*e);
  auto hs = update_load(s);
  auto crossing = update_band(s);
  if (hs) out.push_back(*hs);
  if (crossing) out.push_back(*crossing);

  last_t_ = s.t;
  ++seen_;
  return out;
}

std::optional<GaitEvent> EventDetector::update_peak(const GaitSample& s) {
  const std::size_t n = window_.size();
  window_[window_head_] = s;
  window_head_ = (window_head_ + 1) % n;
  if (window_count_ < n) ++window_count_;
  if (window_count_ < n) return std::nullopt;

  // Oldest sample sits at window_head_. Summing in a fixed order keeps the
  // filtered value a pure function of the window contents.
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += window_[(window_head_ + i) % n].theta;
  const GaitSample& center = window_[(window_head_ + n / 2) % n];
  const FilteredPoint p{center.t, sum / static_cast<double>(n), center.theta_dot};

  if (ring_count_ < 3) {
    ring_[ring_count_++] = p;
  } else {
    ring_[0] = ring_[1];
    ring_[1] = ring_[2];
    ring_[2] = p;
  }

  std::optional<GaitEvent> event;
  if (ring_count_ == 3) {
    const FilteredPoint& a = ring_[0];
    const FilteredPoint& b = ring_[1];
    const FilteredPoint& c = ring_[2];
    const bool strict_max = b.theta > a.theta && b.theta > c.theta;
    const bool prominent = b.theta - valley_ >= cfg_.mhf_min_prominence;
    const bool rested = !last_mhf_t_ || b.t - *last_mhf_t_ >= cfg_.mhf_refractory;
    if (strict_max && prominent && rested) {
      event = GaitEvent{EventKind::MaxHipFlexion, b.t, b.theta, b.theta_dot};
      last_mhf_t_ = b.t;
      valley_ = c.theta;
    }
  }
  valley_ = std::min(valley_, p.theta);
  return event;
}

std::optional<GaitEvent> EventDetector::update_load(const GaitSample& s) {
  const bool loaded = s.load >= cfg_.hs_load_threshold;
  const bool strike = seen_ > 0 && loaded && !loaded_;
  loaded_ = loaded;
  if (!strike) return std::nullopt;
  return GaitEvent{EventKind::HeelStrike, s.t, s.theta, s.theta_dot};
}

std::optional<GaitEvent> EventDetector::update_band(const GaitSample& s) {
  bool crossed = false;
  if (cfg_.use_legacy_crossing) {
    const double level = cfg_.legacy_crossing;
    const bool above = s.theta >= level;
    crossed = seen_ > 0 && above != (prev_theta_ >= level);
  } else {
    const double lo = cfg_.crossing_band_low;
    const double hi = cfg_.crossing_band_high;
    const bool inside = s.theta >= lo && s.theta <= hi;
    if (seen_ > 0) {
      const bool jumped = (prev_theta_ < lo && s.theta > hi) ||
                          (prev_theta_ > hi && s.theta < lo);
      crossed = (inside && !in_band_) || jumped;
    }
    in_band_ = inside;
  }
  prev_theta_ = s.theta;
  if (!crossed) return std::nullopt;
  return GaitEvent{EventKind::BandCrossing, s.t, s.theta, s.theta_dot};
}

std::vector<GaitEvent> detect_events(const std::vector<GaitSample>& samples,
                                     const DetectorConfig& cfg) {
  EventDetector det(cfg);
  std::vector<GaitEvent> out;
  for (const GaitSample& s : samples) {
    for (const GaitEvent& e : det.push(s)) out.push_back(e);
  }
  return out;
}

}  // namespace locotrans
