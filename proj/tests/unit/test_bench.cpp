#include <gtest/gtest.h>

#include <sstream>

#include "locotrans/bench.hpp"
#include "locotrans/error.hpp"
#include "locotrans/report.hpp"
#include "locotrans/synthetic.hpp"

using namespace locotrans;

namespace {

ModelBank lr_bank() {
  ModelBank b;
  const LinearModel src[6] = {{2.0, -0.1}, {-2.0, -0.1}, {0.8, -38.0},
                              {-0.6, 28.5}, {0.5, -5.5}, {-0.5, 5.6}};
  for (std::size_t i = 0; i < 6; ++i) b.models[i] = extract_threshold(src[i]);
  return b;
}

}  // namespace

TEST(Quartiles, LinearInterpolation) {
  // numpy.percentile([1,2,3,4,5], [25,50,75]) -> 2, 3, 4
  Quartiles q = quartiles({5, 1, 4, 2, 3});
  EXPECT_EQ(q.q1, 2);
  EXPECT_EQ(q.median, 3);
  EXPECT_EQ(q.q3, 4);
  // numpy.percentile([1,2,3,4], [25,50,75]) -> 1.75, 2.5, 3.25
  q = quartiles({4, 3, 2, 1});
  EXPECT_DOUBLE_EQ(q.q1, 1.75);
  EXPECT_DOUBLE_EQ(q.median, 2.5);
  EXPECT_DOUBLE_EQ(q.q3, 3.25);
}

TEST(Bench, RecordsExactlyCyclesLatencies) {
  BenchOptions o;
  o.cycles = 100;
  o.batch = 32;
  const auto [th, ml] = benchmark_classifier(TransitionKind::WalkToStairAscent, lr_bank(), o);
  EXPECT_EQ(th.latencies.size(), 100u);
  EXPECT_EQ(ml.latencies.size(), 100u);
  EXPECT_EQ(th.cycles, 100u);
  EXPECT_EQ(th.method, Method::Threshold);
  EXPECT_EQ(ml.method, Method::MachineLearning);
  for (const BenchResult* r : {&th, &ml}) {
    EXPECT_LE(r->q1, r->median);
    EXPECT_LE(r->median, r->q3);
    EXPECT_GT(r->median, 0.0);
  }
}

TEST(Bench, TooFewCycles) {
  BenchOptions o;
  o.cycles = 9;
  EXPECT_THROW(o.validate(), ConfigError);
  EXPECT_THROW(benchmark_classifier(TransitionKind::WalkToSit, lr_bank(), o), ConfigError);
}

TEST(Bench, FullRunHasTwelveRowsAndReplay) {
  BenchOptions o;
  o.cycles = 10;
  o.batch = 16;
  const Trial t = generate_synthetic(protocol_script(), 1);
  const BenchReport r = run_bench(lr_bank(), o, &t, {}, Mode::Sit);
  ASSERT_EQ(r.results.size(), 12u);
  for (std::size_t i = 0; i < 12; ++i) {
    EXPECT_EQ(r.results[i].kind, kAllTransitions[i / 2]);
    EXPECT_EQ(r.results[i].method, i % 2 ? Method::MachineLearning : Method::Threshold);
  }
  ASSERT_EQ(r.replay.size(), 2u);
  EXPECT_EQ(r.replay[0].samples, t.samples.size());
  std::ostringstream csv;
  write_bench_csv(csv, r);
  std::size_t lines = 0;
  for (char c : csv.str()) lines += c == '\n';
  EXPECT_EQ(lines, 13u);
  const auto j = bench_to_json(r);
  EXPECT_EQ(j["results"].size(), 12u);
  EXPECT_EQ(j["th_ml_median_ratio"].size(), 6u);
  EXPECT_TRUE(j["clock"].contains("note"));
  EXPECT_EQ(j["fsm_replay"].size(), 2u);
}

TEST(Bench, RepeatedRunsAreStable) {
  BenchOptions o;
  o.cycles = 50;
  const auto a = benchmark_classifier(TransitionKind::WalkToStairAscent, lr_bank(), o);
  const auto b = benchmark_classifier(TransitionKind::WalkToStairAscent, lr_bank(), o);
  for (auto [x, y] : {std::pair{a.first.median, b.first.median},
                      std::pair{a.second.median, b.second.median}}) {
    EXPECT_LE(std::max(x, y) / std::min(x, y), 3.0);
  }
}

TEST(Clock, ProbeReportsResolution) {
  const ClockInfo c = probe_clock();
  EXPECT_GT(c.resolution, 0.0);
  EXPECT_EQ(c.coarse, c.resolution > 1e-6);
}
