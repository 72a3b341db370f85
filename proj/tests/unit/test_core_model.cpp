#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "locotrans/error.hpp"
#include "locotrans/serialization.hpp"
#include "locotrans/types.hpp"

using namespace locotrans;

TEST(ParseMode, NamesAndAliases) {
  EXPECT_EQ(parse_mode("walk"), Mode::Walk);
  EXPECT_EQ(parse_mode("WALK"), Mode::Walk);
  EXPECT_EQ(parse_mode("stand"), Mode::Walk);
  EXPECT_EQ(parse_mode("Ramp"), Mode::Walk);
  EXPECT_EQ(parse_mode("sit"), Mode::Sit);
  EXPECT_EQ(parse_mode("stair_ascent"), Mode::StairAscent);
  EXPECT_EQ(parse_mode("Stair_Descent"), Mode::StairDescent);
}

TEST(ParseMode, UnknownTokenIsNamed) {
  try {
    parse_mode("jump");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("jump"), std::string::npos);
  }
}

TEST(TransitionKind, EdgesAreABijection) {
  // The six directed edges of the FSM, written out by hand.
  const std::set<std::pair<Mode, Mode>> edges = {
      {Mode::Walk, Mode::Sit},          {Mode::Sit, Mode::Walk},
      {Mode::Walk, Mode::StairAscent},  {Mode::StairAscent, Mode::Walk},
      {Mode::Walk, Mode::StairDescent}, {Mode::StairDescent, Mode::Walk}};
  std::set<std::pair<Mode, Mode>> seen;
  for (TransitionKind k : kAllTransitions) {
    seen.insert({source(k), target(k)});
    EXPECT_EQ(transition_between(source(k), target(k)), k);
    EXPECT_EQ(parse_transition(to_string(k)), k);
  }
  EXPECT_EQ(seen, edges);
  int n = 0;
  for (Mode a : kAllModes)
    for (Mode b : kAllModes) n += transition_between(a, b).has_value();
  EXPECT_EQ(n, 6);
}

TEST(TransitionKind, UnicodeArrow) {
  EXPECT_EQ(parse_transition("W→SA"), TransitionKind::WalkToStairAscent);
  EXPECT_EQ(parse_transition("SD->W"), TransitionKind::StairDescentToWalk);
  EXPECT_THROW(parse_transition("S->SA"), ParseError);
}

TEST(Icf3, ZeroIsNonRising) {
  EXPECT_EQ(icf3_sign(0.0), -1.0);
  EXPECT_EQ(icf3_sign(-0.0), -1.0);
  EXPECT_EQ(icf3_sign(1e-300), 1.0);
  EXPECT_EQ(icf3_sign(-3.0), -1.0);
}

TEST(Serialization, FormatDoubleRoundTrips) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    double back = 0;
    ASSERT_TRUE(parse_double(format_double(v), back));
    EXPECT_EQ(back, v);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  double x = 0;
  EXPECT_FALSE(parse_double("1.5x", x));
  EXPECT_FALSE(parse_double("", x));
}

TEST(Serialization, CoreTypesRoundTrip) {
  const GaitSample s{0.01, 72.5, -3.25, 700.0};
  EXPECT_EQ(json(s).get<GaitSample>(), s);
  const GaitEvent e{EventKind::BandCrossing, 1.25, 71.0, 40.0};
  EXPECT_EQ(json(e).get<GaitEvent>(), e);
  const TransitionDecision d{TransitionKind::SitToWalk, 3.07, Mode::Sit, {IcfKind::Icf3, -1.0},
                             true};
  EXPECT_EQ(json(d).get<TransitionDecision>(), d);
  for (Mode m : kAllModes) EXPECT_EQ(json(m).get<Mode>(), m);
  for (TransitionKind k : kAllTransitions) EXPECT_EQ(json(k).get<TransitionKind>(), k);
}

TEST(FeatureOf, MatchesTheFeatureTable) {
  EXPECT_EQ(feature_of(TransitionKind::WalkToSit), IcfKind::Icf3);
  EXPECT_EQ(feature_of(TransitionKind::SitToWalk), IcfKind::Icf3);
  EXPECT_EQ(feature_of(TransitionKind::WalkToStairAscent), IcfKind::Icf1);
  EXPECT_EQ(feature_of(TransitionKind::StairAscentToWalk), IcfKind::Icf1);
  EXPECT_EQ(feature_of(TransitionKind::WalkToStairDescent), IcfKind::Icf2);
  EXPECT_EQ(feature_of(TransitionKind::StairDescentToWalk), IcfKind::Icf2);
}
