#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "locotrans/types.hpp"

namespace locotrans {

/// Ground truth: from `t` on, the subject is in `mode`.
struct Annotation {
  double t = 0.0;
  Mode mode = Mode::Walk;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct Trial {
  std::string id;
  std::vector<GaitSample> samples;
  std::vector<Annotation> annotations;

  bool annotated() const noexcept { return !annotations.empty(); }

  friend bool operator==(const Trial&, const Trial&) = default;
};

/// Mapping from a foot-height column to the load proxy: a foot at or below
/// `contact_height` counts as loaded with `contact_load`, otherwise 0.
struct LoadProxy {
  double contact_height = 0.02;
  double contact_load = 100.0;
};

double foot_height_to_load(double foot_height, const LoadProxy& proxy = {});

/// Central differences inside, one-sided at both ends, deg/s.
/// Throws InsufficientDataError for fewer than 2 samples.
std::vector<GaitSample> derive_velocity(std::vector<GaitSample> samples);

/// Annotation mode at time t (the last annotation at or before t; the first
/// one before it). Requires an annotated trial.
Mode mode_at(const std::vector<Annotation>& annotations, double t);

/// Checks sample and annotation invariants. Throws RowError (1-based sample
/// row) or SchemaError.
void validate_trial(const Trial& trial);

/// "<stem>.annotations.csv" next to the trial file.
std::filesystem::path annotation_path(const std::filesystem::path& trial_csv);

/// Reads a canonical trial CSV.
///
/// Columns are found by name: `t`, `theta_th` and `load` are required
/// (`foot_height` may replace `load`, mapped through `proxy`);
/// `theta_dot_th` is derived when absent; `label` optionally holds the mode
/// per row. A sibling annotation file (`t,mode`) takes precedence over the
/// label column.
Trial load_trial(const std::filesystem::path& path, const LoadProxy& proxy = {});

/// Writes the canonical CSV (label column = annotated mode per row) and, for
/// annotated trials, the annotation sidecar with the exact boundary times.
/// Numbers use the shortest exact decimal form, so load(save(x)) == x.
void save_trial(const Trial& trial, const std::filesystem::path& path);

/// A single trial file, or every trial CSV in a directory (sorted by name,
/// annotation sidecars and decision logs skipped).
std::vector<Trial> load_trials(const std::filesystem::path& path,
                               const LoadProxy& proxy = {});

}  // namespace locotrans
