#include "locotrans/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "locotrans/error.hpp"

namespace locotrans {

namespace {

using Clock = std::chrono::steady_clock;

// Keeps the compiler from hoisting, fusing or vectorising across calls: the
// value is treated as read and rewritten by an opaque statement.
template <typename T>
inline void do_not_optimize(T& value) {
  asm volatile("" : "+r,m"(value) : : "memory");
}

double seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }

std::vector<double> make_inputs(TransitionKind kind, const ThresholdModel& m,
                                std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (index_of(kind) + 1)));
  std::vector<double> xs(n);
  if (feature_of(kind) == IcfKind::Icf3) {
    for (double& x : xs) x = (rng() & 1) ? 1.0 : -1.0;
    return xs;
  }
  // Straddle the boundary so both outcomes occur.
  const double c = std::isfinite(m.threshold) ? m.threshold : 0.0;
  std::uniform_real_distribution<double> u(c - 30.0, c + 30.0);
  for (double& x : xs) x = u(rng);
  return xs;
}

template <typename Predict>
double time_batch(const std::vector<double>& xs, Predict&& predict) {
  unsigned fired = 0;
  const auto t0 = Clock::now();
  for (double x : xs) {
    do_not_optimize(x);
    fired += predict(x) ? 1u : 0u;
  }
  const auto t1 = Clock::now();
  do_not_optimize(fired);
  return seconds(t1 - t0) / static_cast<double>(xs.size());
}

template <typename R>
void summarize(R& r) {
  const Quartiles q = quartiles(r.latencies);
  r.q1 = q.q1;
  r.median = q.median;
  r.q3 = q.q3;
}

}  // namespace

void BenchOptions::validate() const {
  if (cycles < 10) throw ConfigError("bench cycles must be >= 10");
  if (batch < 1) throw ConfigError("bench batch must be >= 1");
}

Quartiles quartiles(std::vector<double> v) {
  if (v.empty()) throw EmptyInputError("quartiles of an empty sample");
  std::sort(v.begin(), v.end());
  auto at = [&](double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (v[hi] - v[lo]) * (pos - static_cast<double>(lo));
  };
  return {at(0.25), at(0.5), at(0.75)};
}

ClockInfo probe_clock() {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2000; ++i) {
    const auto a = Clock::now();
    auto b = Clock::now();
    while (b == a) b = Clock::now();
    best = std::min(best, seconds(b - a));
  }
  const double period =
      static_cast<double>(Clock::period::num) / static_cast<double>(Clock::period::den);
  ClockInfo info;
  info.resolution = std::max(best, period);
  info.coarse = info.resolution > 1e-6;
  return info;
}

std::pair<BenchResult, BenchResult> benchmark_classifier(TransitionKind kind,
                                                         const ModelBank& bank,
                                                         const BenchOptions& opts) {
  opts.validate();
  const ThresholdModel& th = bank.at(kind);
  const LinearModel& ml = th.source;
  const std::vector<double> xs = make_inputs(kind, th, opts.batch, opts.seed);

  BenchResult rth{kind, Method::Threshold, opts.cycles, {}, 0, 0, 0};
  BenchResult rml{kind, Method::MachineLearning, opts.cycles, {}, 0, 0, 0};
  rth.latencies.reserve(opts.cycles);
  rml.latencies.reserve(opts.cycles);
  for (std::size_t c = 0; c < opts.warmup + opts.cycles; ++c) {
    const double a = time_batch(xs, [&](double x) { return predict_th(th, x); });
    const double b = time_batch(xs, [&](double x) { return predict_ml(ml, x); });
    if (c < opts.warmup) continue;
    rth.latencies.push_back(a);
    rml.latencies.push_back(b);
  }
  summarize(rth);
  summarize(rml);
  return {rth, rml};
}

std::pair<ReplayTiming, ReplayTiming> benchmark_replay(const Trial& trial,
                                                       const ModelBank& bank,
                                                       const DetectorConfig& cfg,
                                                       Mode initial,
                                                       const BenchOptions& opts) {
  opts.validate();
  if (trial.samples.empty()) throw EmptyInputError("replay benchmark needs samples");
  ReplayTiming th{Method::Threshold, opts.cycles, trial.samples.size(), {}, 0, 0, 0};
  ReplayTiming ml{Method::MachineLearning, opts.cycles, trial.samples.size(), {}, 0, 0, 0};
  const double n = static_cast<double>(trial.samples.size());
  auto once = [&](Method m) {
    const auto t0 = Clock::now();
    TransitionLog log = run_stream(bank, cfg, trial.samples, initial, m);
    const auto t1 = Clock::now();
    do_not_optimize(log.final_mode);
    return seconds(t1 - t0) / n;
  };
  for (std::size_t c = 0; c < opts.warmup + opts.cycles; ++c) {
    const double a = once(Method::Threshold);
    const double b = once(Method::MachineLearning);
    if (c < opts.warmup) continue;
    th.latencies.push_back(a);
    ml.latencies.push_back(b);
  }
  summarize(th);
  summarize(ml);
  return {th, ml};
}

double BenchReport::ratio(TransitionKind k) const {
  double th = std::numeric_limits<double>::quiet_NaN();
  double ml = th;
  for (const BenchResult& r : results) {
    if (r.kind != k) continue;
    (r.method == Method::Threshold ? th : ml) = r.median;
  }
  return th / ml;
}

BenchReport run_bench(const ModelBank& bank, const BenchOptions& opts,
                      const Trial* replay_trial, const DetectorConfig& cfg,
                      Mode initial) {
  opts.validate();
  BenchReport report;
  report.clock = probe_clock();
  report.options = opts;
  for (TransitionKind k : kAllTransitions) {
    auto [th, ml] = benchmark_classifier(k, bank, opts);
    report.results.push_back(std::move(th));
    report.results.push_back(std::move(ml));
  }
  if (replay_trial) {
    auto [th, ml] = benchmark_replay(*replay_trial, bank, cfg, initial, opts);
    report.replay.push_back(std::move(th));
    report.replay.push_back(std::move(ml));
  }
  return report;
}

}  // namespace locotrans
