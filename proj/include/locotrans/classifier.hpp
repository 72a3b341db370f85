#pragma once

#include <cmath>
#include <span>
#include <vector>
#include <string_view>
#include <type_traits>

namespace locotrans {

enum class Algorithm { LogisticRegression, LinearSVM };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

/// One training example for a 1-D transition classifier. `label` is true
/// when the transition fires at this moment.
struct LabeledFeature {
  double value = 0.0;
  bool label = false;

  friend bool operator==(const LabeledFeature&, const LabeledFeature&) = default;
};

/// Score s = w*x + b in raw feature units.
struct LinearModel {
  double w = 0.0;
  double b = 0.0;
  Algorithm algorithm = Algorithm::LogisticRegression;

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

/// A linear model reduced to one comparison: fire when x >= threshold
/// (fire_above) or x <= threshold (otherwise).
struct ThresholdModel {
  double threshold = 0.0;
  bool fire_above = true;
  LinearModel source;

  friend bool operator==(const ThresholdModel&, const ThresholdModel&) = default;
};

struct LogisticOptions {
  double learning_rate = 0.1;
  int epochs = 2000;
  double l2 = 1e-4;
};

struct SvmOptions {
  double c = 1.0;
  int epochs = 2000;
};

/// Smallest |w| for which a model still has a decision boundary.
inline constexpr double kMinWeight = 1e-9;

/// Full-batch gradient descent on the L2-regularised log-loss, zero init.
///
/// The optimiser works on z-scored values and maps (w, b) back to raw units,
/// so the returned model and its threshold are in the caller's units.
/// Throws DegenerateDataError (fewer than 2 points or a single class),
/// DataError (non-finite value) and DivergenceError (non-finite loss).
LinearModel fit_logistic_1d(std::span<const LabeledFeature> data,
                            const LogisticOptions& opts = {});

/// Subgradient descent on 0.5*w^2 + c*mean(hinge), step 1/(c*epoch), zero
/// init, same scaling and errors as fit_logistic_1d.
LinearModel fit_linear_svm_1d(std::span<const LabeledFeature> data,
                              const SvmOptions& opts = {});

// The ML path: the model's decision function evaluated at call time. Logistic
// regression goes through the class probability, the SVM through its margin.
// Score 0 (p == 0.5) fires.
inline double decision_score(const LinearModel& m, double x) {
  double s = m.w * x;
  s += m.b;
  return s;
}

inline bool predict_ml(const LinearModel& m, double x) {
  const double s = decision_score(m, x);
  if (m.algorithm == Algorithm::LogisticRegression) {
    const double p = 1.0 / (1.0 + std::exp(-s));
    return p >= 0.5;
  }
  return s >= 0.0;
}

// The TH path: one comparison.
inline bool predict_th(const ThresholdModel& m, double x) {
  return m.fire_above ? x >= m.threshold : x <= m.threshold;
}

/// Reduces a linear model to its threshold. The threshold is the exact
/// boundary of predict_ml over the doubles, so predict_th and predict_ml agree
/// on every finite input; it equals -b/w up to rounding.
/// Throws NoBoundaryError when |w| <= kMinWeight.
ThresholdModel extract_threshold(const LinearModel& m);

/// True when `t.threshold` matches -b/w of its source within `rel_tol`
/// (relative, floored at 1 so boundaries near zero compare absolutely, plus
/// 1e-15/|w| for sigmoid rounding) and fire_above == (w > 0).
bool threshold_consistent(const ThresholdModel& t, double rel_tol = 1e-9);

/// Fraction of `data` the predictor gets right. Throws EmptyInputError.
template <typename Predict>
  requires std::is_invocable_r_v<bool, Predict, double>
double classifier_accuracy(Predict&& predict, std::span<const LabeledFeature> data);

double classifier_accuracy(const LinearModel& m, std::span<const LabeledFeature> data);
double classifier_accuracy(const ThresholdModel& m,
                           std::span<const LabeledFeature> data);

/// Both algorithms fitted on the same data, plus the one kept.
struct ModelSelection {
  LinearModel logistic;
  LinearModel svm;
  double logistic_accuracy = 0.0;
  double svm_accuracy = 0.0;
  LinearModel chosen;
  double chosen_accuracy = 0.0;
};

/// Fits both algorithms and keeps the higher training accuracy; ties go to
/// logistic regression.
ModelSelection select_model(std::span<const LabeledFeature> train,
                            const LogisticOptions& lr = {},
                            const SvmOptions& svm = {});

}  // namespace locotrans

#include "locotrans/error.hpp"

namespace locotrans {

template <typename Predict>
  requires std::is_invocable_r_v<bool, Predict, double>
double classifier_accuracy(Predict&& predict, std::span<const LabeledFeature> data) {
  if (data.empty()) throw EmptyInputError("accuracy of an empty data set");
  std::size_t correct = 0;
  for (const LabeledFeature& f : data) {
    if (static_cast<bool>(predict(f.value)) == f.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace locotrans
