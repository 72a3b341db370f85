#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "locotrans/dataset.hpp"
#include "locotrans/types.hpp"

namespace locotrans {

/// A = 100 * correct / total. Throws EmptyInputError when total is 0 and
/// DataError when correct > total.
double recognition_accuracy(std::size_t n_correct, std::size_t n_total);

struct TransitionAccuracy {
  std::size_t n_correct = 0;
  std::size_t n_total = 0;

  /// NaN when nothing was expected.
  double accuracy_pct() const;

  friend bool operator==(const TransitionAccuracy&, const TransitionAccuracy&) = default;
};

struct AccuracyReport {
  std::array<TransitionAccuracy, 6> per_kind{};

  const TransitionAccuracy& at(TransitionKind k) const { return per_kind[index_of(k)]; }
  TransitionAccuracy& at(TransitionKind k) { return per_kind[index_of(k)]; }
  TransitionAccuracy total() const;
  AccuracyReport& operator+=(const AccuracyReport& other);

  friend bool operator==(const AccuracyReport&, const AccuracyReport&) = default;
};

inline constexpr double kDefaultMatchWindow = 1.5;

/// Matches fired decisions to ground-truth boundaries. A boundary counts as
/// detected when an unused fired decision of the same kind lies within
/// `window` seconds of it (the closest one is taken). Boundaries are visited
/// in time order. A transition the FSM made late, early or never is not
/// detected, whatever mode it ends up in.
AccuracyReport match_transitions(std::span<const TransitionDecision> decisions,
                                 std::span<const Boundary> truth,
                                 double window = kDefaultMatchWindow);

}  // namespace locotrans
