#include "locotrans/classifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "locotrans/error.hpp"

namespace locotrans {

std::string_view to_string(Algorithm a) {
  return a == Algorithm::LogisticRegression ? "logistic_regression" : "linear_svm";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "logistic_regression" || name == "lr") return Algorithm::LogisticRegression;
  if (name == "linear_svm" || name == "svm") return Algorithm::LinearSVM;
  throw ParseError("unknown algorithm '" + std::string(name) + "'");
}

namespace {

// z-scored copy of the training set. Fitting on standardised values keeps the
// step sizes meaningful whatever the feature scale; the fitted (w, b) are
// mapped back before returning.
struct Scaled {
  std::vector<double> z;
  std::vector<double> y;  // +1 / -1
  double mean = 0.0;
  double sd = 1.0;
};

Scaled prepare(std::span<const LabeledFeature> data) {
  if (data.size() < 2) throw DegenerateDataError("need at least 2 training points");
  std::size_t pos = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i].value)) {
      throw DataError("training value " + std::to_string(i) + " is not finite");
    }
    if (data[i].label) ++pos;
    sum += data[i].value;
  }
  if (pos == 0 || pos == data.size()) {
    throw DegenerateDataError("training data contains a single class");
  }
  Scaled s;
  const double n = static_cast<double>(data.size());
  s.mean = sum / n;
  double var = 0.0;
  for (const LabeledFeature& f : data) var += (f.value - s.mean) * (f.value - s.mean);
  s.sd = std::sqrt(var / n);
  if (!(s.sd > 0.0)) s.sd = 1.0;
  s.z.reserve(data.size());
  s.y.reserve(data.size());
  for (const LabeledFeature& f : data) {
    s.z.push_back((f.value - s.mean) / s.sd);
    s.y.push_back(f.label ? 1.0 : -1.0);
  }
  return s;
}

LinearModel unscale(const Scaled& s, double w, double b, Algorithm a) {
  LinearModel m;
  m.w = w / s.sd;
  m.b = b - w * s.mean / s.sd;
  m.algorithm = a;
  return m;
}

double softplus(double v) {
  return v > 0.0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v));
}

}  // namespace

LinearModel fit_logistic_1d(std::span<const LabeledFeature> data,
                            const LogisticOptions& opts) {
  if (!(opts.learning_rate > 0.0) || opts.epochs < 1 || !(opts.l2 >= 0.0)) {
    throw ConfigError("logistic options: learning_rate > 0, epochs >= 1, l2 >= 0");
  }
  const Scaled s = prepare(data);
  const double n = static_cast<double>(s.z.size());
  double w = 0.0;
  double b = 0.0;
  for (int epoch = 1; epoch <= opts.epochs; ++epoch) {
    double gw = 0.0;
    double gb = 0.0;
    double loss = 0.0;
    for (std::size_t i = 0; i < s.z.size(); ++i) {
      const double score = w * s.z[i] + b;
      const double p = 1.0 / (1.0 + std::exp(-score));
      const double target = s.y[i] > 0.0 ? 1.0 : 0.0;
      gw += (p - target) * s.z[i];
      gb += p - target;
      loss += softplus(score) - target * score;
    }
    loss = loss / n + 0.5 * opts.l2 * w * w;
    if (!std::isfinite(loss)) throw DivergenceError(epoch, "log-loss is not finite");
    w -= opts.learning_rate * (gw / n + opts.l2 * w);
    b -= opts.learning_rate * (gb / n);
    if (!std::isfinite(w) || !std::isfinite(b)) {
      throw DivergenceError(epoch, "weights are not finite");
    }
  }
  return unscale(s, w, b, Algorithm::LogisticRegression);
}

LinearModel fit_linear_svm_1d(std::span<const LabeledFeature> data,
                              const SvmOptions& opts) {
  if (!(opts.c > 0.0) || opts.epochs < 1) {
    throw ConfigError("svm options: c > 0, epochs >= 1");
  }
  const Scaled s = prepare(data);
  const double n = static_cast<double>(s.z.size());
  double w = 0.0;
  double b = 0.0;
  for (int epoch = 1; epoch <= opts.epochs; ++epoch) {
    double gw = 0.0;
    double gb = 0.0;
    double hinge = 0.0;
    for (std::size_t i = 0; i < s.z.size(); ++i) {
      const double margin = s.y[i] * (w * s.z[i] + b);
      if (margin < 1.0) {
        hinge += 1.0 - margin;
        gw -= s.y[i] * s.z[i];
        gb -= s.y[i];
      }
    }
    const double loss = 0.5 * w * w + opts.c * hinge / n;
    if (!std::isfinite(loss)) throw DivergenceError(epoch, "hinge loss is not finite");
    const double step = 1.0 / (opts.c * static_cast<double>(epoch));
    w -= step * (w + opts.c * gw / n);
    b -= step * (opts.c * gb / n);
    if (!std::isfinite(w) || !std::isfinite(b)) {
      throw DivergenceError(epoch, "weights are not finite");
    }
  }
  return unscale(s, w, b, Algorithm::LinearSVM);
}

namespace {

// Total order on doubles as unsigned integers: -max .. -0/+0 .. +max map to
// increasing keys. Both zeros share one key.
std::uint64_t key_of(double x) {
  const auto bits = std::bit_cast<std::int64_t>(x);
  const std::int64_t ordered =
      bits >= 0 ? bits : std::numeric_limits<std::int64_t>::min() - bits;
  return static_cast<std::uint64_t>(ordered) ^ (std::uint64_t{1} << 63);
}

double from_key(std::uint64_t k) {
  const auto ordered = static_cast<std::int64_t>(k ^ (std::uint64_t{1} << 63));
  const std::int64_t bits =
      ordered >= 0 ? ordered : std::numeric_limits<std::int64_t>::min() - ordered;
  return std::bit_cast<double>(bits);
}

}  // namespace

ThresholdModel extract_threshold(const LinearModel& m) {
  if (!std::isfinite(m.w) || !std::isfinite(m.b)) {
    throw DataError("model weights are not finite");
  }
  if (std::abs(m.w) <= kMinWeight) {
    throw NoBoundaryError("|w| <= 1e-9: the classifier is constant");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kMax = std::numeric_limits<double>::max();

  ThresholdModel t;
  t.source = m;
  t.fire_above = m.w > 0.0;

  // -b/w is the exact boundary in real arithmetic; rounding in w*x+b (and in
  // the sigmoid for logistic models) can move the decided boundary by an ulp
  // or so. Search for the exact switching point of predict_ml so both paths
  // agree on every double, not just on most of them.
  auto fires = [&](double x) { return predict_ml(m, x); };
  if (t.fire_above) {
    if (!fires(kMax)) {
      t.threshold = kInf;
      return t;
    }
    if (fires(-kMax)) {
      t.threshold = -kInf;
      return t;
    }
    std::uint64_t lo = key_of(-kMax);  // does not fire
    std::uint64_t hi = key_of(kMax);   // fires
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      (fires(from_key(mid)) ? hi : lo) = mid;
    }
    t.threshold = from_key(hi);
  } else {
    if (!fires(-kMax)) {
      t.threshold = -kInf;
      return t;
    }
    if (fires(kMax)) {
      t.threshold = kInf;
      return t;
    }
    std::uint64_t lo = key_of(-kMax);  // fires
    std::uint64_t hi = key_of(kMax);   // does not fire
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      (fires(from_key(mid)) ? lo : hi) = mid;
    }
    t.threshold = from_key(lo);
  }
  return t;
}

bool threshold_consistent(const ThresholdModel& t, double rel_tol) {
  const LinearModel& m = t.source;
  if (!std::isfinite(m.w) || !std::isfinite(m.b) || std::abs(m.w) <= kMinWeight) {
    return false;
  }
  if (t.fire_above != (m.w > 0.0)) return false;
  const double expected = -m.b / m.w;
  if (!std::isfinite(expected)) return t.threshold == expected;
  if (!std::isfinite(t.threshold)) return false;
  // The sigmoid rounds to exactly 0.5 for |score| below ~2e-16, which moves a
  // logistic model's decided boundary by up to that much in score units.
  const double score_slack = 1e-15 / std::abs(m.w);
  return std::abs(t.threshold - expected) <=
         rel_tol * std::max(1.0, std::abs(expected)) + score_slack;
}

double classifier_accuracy(const LinearModel& m, std::span<const LabeledFeature> data) {
  return classifier_accuracy([&](double x) { return predict_ml(m, x); }, data);
}

double classifier_accuracy(const ThresholdModel& m,
                           std::span<const LabeledFeature> data) {
  return classifier_accuracy([&](double x) { return predict_th(m, x); }, data);
}

ModelSelection select_model(std::span<const LabeledFeature> train,
                            const LogisticOptions& lr, const SvmOptions& svm) {
  ModelSelection sel;
  sel.logistic = fit_logistic_1d(train, lr);
  sel.svm = fit_linear_svm_1d(train, svm);
  sel.logistic_accuracy = classifier_accuracy(sel.logistic, train);
  sel.svm_accuracy = classifier_accuracy(sel.svm, train);
  if (sel.svm_accuracy > sel.logistic_accuracy) {
    sel.chosen = sel.svm;
    sel.chosen_accuracy = sel.svm_accuracy;
  } else {
    sel.chosen = sel.logistic;
    sel.chosen_accuracy = sel.logistic_accuracy;
  }
  return sel;
}

}  // namespace locotrans
