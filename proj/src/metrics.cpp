#include "locotrans/metrics.hpp"

#include <cmath>
#include <limits>

#include "locotrans/error.hpp"

namespace locotrans {

double recognition_accuracy(std::size_t n_correct, std::size_t n_total) {
  if (n_total == 0) throw EmptyInputError("no ground-truth transitions");
  if (n_correct > n_total) throw DataError("more correct detections than transitions");
  return 100.0 * static_cast<double>(n_correct) / static_cast<double>(n_total);
}

double TransitionAccuracy::accuracy_pct() const {
  if (n_total == 0) return std::numeric_limits<double>::quiet_NaN();
  return recognition_accuracy(n_correct, n_total);
}

TransitionAccuracy AccuracyReport::total() const {
  TransitionAccuracy t;
  for (const auto& a : per_kind) {
    t.n_correct += a.n_correct;
    t.n_total += a.n_total;
  }
  return t;
}

AccuracyReport& AccuracyReport::operator+=(const AccuracyReport& other) {
  for (std::size_t i = 0; i < per_kind.size(); ++i) {
    per_kind[i].n_correct += other.per_kind[i].n_correct;
    per_kind[i].n_total += other.per_kind[i].n_total;
  }
  return *this;
}

AccuracyReport match_transitions(std::span<const TransitionDecision> decisions,
                                 std::span<const Boundary> truth, double window) {
  AccuracyReport report;
  std::vector<bool> used(decisions.size(), false);
  for (const Boundary& b : truth) {
    TransitionAccuracy& acc = report.at(b.kind);
    ++acc.n_total;
    std::size_t best = decisions.size();
    double best_dt = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < decisions.size(); ++i) {
      const TransitionDecision& d = decisions[i];
      if (used[i] || !d.fired || d.kind != b.kind) continue;
      const double dt = std::abs(d.t - b.t);
      if (dt <= window && dt < best_dt) {
        best = i;
        best_dt = dt;
      }
    }
    if (best < decisions.size()) {
      used[best] = true;
      ++acc.n_correct;
    }
  }
  return report;
}

}  // namespace locotrans
