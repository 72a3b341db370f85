#include <gtest/gtest.h>

#include <random>

#include "locotrans/error.hpp"
#include "locotrans/fsm.hpp"
#include "locotrans/model_bank.hpp"
#include "locotrans/synthetic.hpp"

using namespace locotrans;

namespace {

// Hand-picked thresholds: sit/stand on the ICF-3 sign, stair ascent on a
// high MHF, descent on a large MHF-HS drop.
ModelBank demo_bank() {
  return make_bank({{{0.0, true},
                     {0.0, false},
                     {48.0, true},
                     {47.0, false},
                     {11.0, true},
                     {11.0, false}}});
}

GaitEvent mhf(double t, double th) { return {EventKind::MaxHipFlexion, t, th, 0}; }
GaitEvent hs(double t, double th) { return {EventKind::HeelStrike, t, th, 0}; }
GaitEvent band(double t, double v) { return {EventKind::BandCrossing, t, 72, v}; }

}  // namespace

TEST(Fsm, WalkMhfFiresStairAscent) {
  FsmEngine e(demo_bank());
  const auto d = e.on_event(mhf(1.0, 85));
  ASSERT_TRUE(d);
  EXPECT_TRUE(d->fired);
  EXPECT_EQ(d->kind, TransitionKind::WalkToStairAscent);
  EXPECT_EQ(d->feature.value, 85);
  EXPECT_EQ(e.mode(), Mode::StairAscent);
  EXPECT_FALSE(e.pending_mhf());  // dropped on the mode change
}

TEST(Fsm, WalkHsWithoutMhfIsCounted) {
  FsmEngine e(demo_bank());
  EXPECT_FALSE(e.on_event(hs(1.0, 10)));
  EXPECT_EQ(e.mode(), Mode::Walk);
  EXPECT_EQ(e.missing_mhf_count(), 1u);
  EXPECT_TRUE(e.log().empty());
}

TEST(Fsm, SitIgnoresMhfAndHs) {
  FsmEngine e(demo_bank(), Mode::Sit);
  EXPECT_FALSE(e.on_event(mhf(1.0, 85)));
  EXPECT_FALSE(e.on_event(hs(1.1, 10)));
  EXPECT_EQ(e.mode(), Mode::Sit);
  EXPECT_EQ(e.missing_mhf_count(), 0u);
}

TEST(Fsm, Icf2IsPendingMhfMinusHs) {
  FsmEngine e(demo_bank());
  e.on_event(mhf(1.0, 35));
  ASSERT_EQ(e.pending_mhf(), 35.0);
  const auto d = e.on_event(hs(1.2, 31.5));
  ASSERT_TRUE(d);
  EXPECT_EQ(d->kind, TransitionKind::WalkToStairDescent);
  EXPECT_DOUBLE_EQ(d->feature.value, 3.5);
  EXPECT_FALSE(d->fired);
  EXPECT_FALSE(e.pending_mhf());
  // descent
  e.on_event(mhf(2.0, 37));
  const auto d2 = e.on_event(hs(2.2, 13));
  ASSERT_TRUE(d2 && d2->fired);
  EXPECT_EQ(e.mode(), Mode::StairDescent);
  // SD: MHF only arms, HS queries SD->W
  EXPECT_FALSE(e.on_event(mhf(3.0, 37)));
  const auto d3 = e.on_event(hs(3.2, 33));
  ASSERT_TRUE(d3 && d3->fired);
  EXPECT_EQ(d3->kind, TransitionKind::StairDescentToWalk);
  EXPECT_EQ(e.mode(), Mode::Walk);
}

TEST(Fsm, BandCrossingRouting) {
  FsmEngine e(demo_bank(), Mode::Sit);
  auto d = e.on_event(band(1, +5));  // rising while seated: stay
  ASSERT_TRUE(d);
  EXPECT_FALSE(d->fired);
  d = e.on_event(band(2, -5));
  ASSERT_TRUE(d && d->fired);
  EXPECT_EQ(d->kind, TransitionKind::SitToWalk);
  d = e.on_event(band(3, 0.0));  // zero velocity counts as -1: no sit-down
  ASSERT_TRUE(d);
  EXPECT_FALSE(d->fired);
  EXPECT_EQ(d->feature.value, -1.0);
  d = e.on_event(band(4, 2));
  ASSERT_TRUE(d && d->fired);
  EXPECT_EQ(e.mode(), Mode::Sit);
  // stairs ignore band crossings
  FsmEngine s(demo_bank(), Mode::StairAscent);
  EXPECT_FALSE(s.on_event(band(1, 5)));
}

TEST(Fsm, ResetAndDeterminism) {
  const Trial t = generate_synthetic(protocol_script(2.0), 4);
  const auto a = run_stream(demo_bank(), {}, t.samples, Mode::Sit);
  const auto b = run_stream(demo_bank(), {}, t.samples, Mode::Sit);
  EXPECT_EQ(a, b);
  FsmEngine e(demo_bank(), Mode::Walk);
  e.on_event(mhf(1, 30));
  e.reset(Mode::Sit);
  EXPECT_EQ(e.mode(), Mode::Sit);
  EXPECT_TRUE(e.log().empty());
  EXPECT_FALSE(e.pending_mhf());
}

TEST(RunStream, EmptyStream) {
  const auto log = run_stream(demo_bank(), {}, {}, Mode::StairDescent);
  EXPECT_TRUE(log.decisions.empty());
  EXPECT_EQ(log.final_mode, Mode::StairDescent);
  EXPECT_EQ(log.events, 0u);
}

TEST(RunStream, ProtocolTrialFiresSixInOrder) {
  const Trial t = generate_synthetic(protocol_script(), 1);
  const auto log = run_stream(demo_bank(), {}, t.samples, Mode::Sit);
  const auto fired = log.fired();
  const std::vector<TransitionKind> expect = {
      TransitionKind::SitToWalk,          TransitionKind::WalkToStairDescent,
      TransitionKind::StairDescentToWalk, TransitionKind::WalkToStairAscent,
      TransitionKind::StairAscentToWalk,  TransitionKind::WalkToSit};
  ASSERT_EQ(fired.size(), expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_EQ(fired[i].kind, expect[i]);
  EXPECT_EQ(log.final_mode, Mode::Sit);
}

TEST(RunStream, ThAndMlLogsIdentical) {
  // a bank whose sources are fitted-looking LR models
  ModelBank bank = demo_bank();
  bank.at(TransitionKind::WalkToStairAscent) = extract_threshold({0.8, -38.0});
  bank.at(TransitionKind::StairAscentToWalk) = extract_threshold({-0.6, 28.5});
  const Trial t = generate_synthetic(protocol_script(2.0), 8);
  auto th = run_stream(bank, {}, t.samples, Mode::Sit, Method::Threshold);
  auto ml = run_stream(bank, {}, t.samples, Mode::Sit, Method::MachineLearning);
  EXPECT_EQ(th, ml);
}

TEST(RunStream, StreamErrorCarriesIndex) {
  std::vector<GaitSample> s{{0, 1, 0, 0}, {0.01, 1, 0, 0}, {0.005, 1, 0, 0}};
  try {
    run_stream(demo_bank(), {}, s);
    FAIL();
  } catch (const StreamError& e) {
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(ReplayFired, RejectsInconsistentLog) {
  std::vector<TransitionDecision> d{{TransitionKind::SitToWalk, 1, Mode::Sit, {}, true}};
  EXPECT_EQ(replay_fired(Mode::Sit, d), Mode::Walk);
  EXPECT_THROW(replay_fired(Mode::Walk, d), DataError);
  d[0].fired = false;
  EXPECT_EQ(replay_fired(Mode::Walk, d), Mode::Walk);
}

TEST(RouteEvent, FullTable) {
  // Oracle: the routing table spelled out, (mode, event) -> expected kind.
  struct Row {
    Mode mode;
    EventKind ev;
    std::optional<TransitionKind> kind;
  };
  const Row rows[] = {
      {Mode::Walk, EventKind::MaxHipFlexion, TransitionKind::WalkToStairAscent},
      {Mode::Walk, EventKind::HeelStrike, TransitionKind::WalkToStairDescent},
      {Mode::Walk, EventKind::BandCrossing, TransitionKind::WalkToSit},
      {Mode::Sit, EventKind::MaxHipFlexion, std::nullopt},
      {Mode::Sit, EventKind::HeelStrike, std::nullopt},
      {Mode::Sit, EventKind::BandCrossing, TransitionKind::SitToWalk},
      {Mode::StairAscent, EventKind::MaxHipFlexion, TransitionKind::StairAscentToWalk},
      {Mode::StairAscent, EventKind::HeelStrike, std::nullopt},
      {Mode::StairAscent, EventKind::BandCrossing, std::nullopt},
      {Mode::StairDescent, EventKind::MaxHipFlexion, std::nullopt},
      {Mode::StairDescent, EventKind::HeelStrike, TransitionKind::StairDescentToWalk},
      {Mode::StairDescent, EventKind::BandCrossing, std::nullopt},
  };
  for (const Row& r : rows) {
    std::optional<double> pending = 40.0;
    std::size_t missing = 0;
    const auto q = route_event(r.mode, {r.ev, 1.0, 30.0, 1.0}, pending, missing);
    ASSERT_EQ(q.has_value(), r.kind.has_value()) << to_string(r.mode) << ' ' << to_string(r.ev);
    if (q) {
      EXPECT_EQ(q->kind, *r.kind);
      EXPECT_EQ(q->feature.kind, feature_of(*r.kind));
    }
  }
}

TEST(FsmFuzz, OnlyLegalEdges) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> th(-20, 100), v(-50, 50);
  const ModelBank bank = demo_bank();
  for (Method m : {Method::Threshold, Method::MachineLearning}) {
    FsmEngine e(bank, Mode::Walk, m);
    Mode prev = e.mode();
    for (int i = 0; i < 10000; ++i) {
      const GaitEvent ev{static_cast<EventKind>(rng() % 3), i * 0.01, th(rng), v(rng)};
      const std::size_t before = e.log().size();
      e.on_event(ev);
      ASSERT_LE(e.log().size(), before + 1);
      if (e.mode() != prev) {
        ASSERT_TRUE(transition_between(prev, e.mode()));
        ASSERT_TRUE(e.log().back().fired);
      }
      prev = e.mode();
    }
    EXPECT_EQ(replay_fired(Mode::Walk, e.log()), e.mode());
  }
}
