#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "locotrans/error.hpp"
#include "locotrans/metrics.hpp"
#include "locotrans/report.hpp"

using namespace locotrans;

namespace {

TransitionDecision fired(TransitionKind k, double t) {
  return {k, t, source(k), {feature_of(k), 1.0}, true};
}

}  // namespace

TEST(Eq1, Arithmetic) {
  EXPECT_EQ(recognition_accuracy(45, 50), 90.0);
  EXPECT_EQ(recognition_accuracy(50, 50), 100.0);
  EXPECT_EQ(recognition_accuracy(0, 7), 0.0);
  EXPECT_THROW(recognition_accuracy(0, 0), EmptyInputError);
  EXPECT_THROW(recognition_accuracy(3, 2), DataError);
  EXPECT_TRUE(std::isnan(TransitionAccuracy{}.accuracy_pct()));
}

TEST(Eq1, CraftedLogFortyFiveOfFifty) {
  // 50 W->SA boundaries, 10 s apart. 45 are detected 0.4 s late; the other 5
  // fail in different ways, each of which the FSM might "recover" from.
  std::vector<Boundary> truth;
  std::vector<TransitionDecision> log;
  for (int i = 0; i < 50; ++i) {
    const double tb = 10.0 * i;
    truth.push_back({tb, TransitionKind::WalkToStairAscent});
    switch (i) {
      case 3:  // fired two steps later: steady state right, transition missed
        log.push_back(fired(TransitionKind::WalkToStairAscent, tb + 1.6));
        break;
      case 11:  // wrong edge on time
        log.push_back(fired(TransitionKind::WalkToStairDescent, tb + 0.2));
        break;
      case 20:  // evaluated, but not fired
        log.push_back({TransitionKind::WalkToStairAscent, tb, Mode::Walk, {}, false});
        break;
      case 33:  // early by more than the window
        log.push_back(fired(TransitionKind::WalkToStairAscent, tb - 1.51));
        break;
      case 47:  // never fired
        break;
      default:
        log.push_back(fired(TransitionKind::WalkToStairAscent, tb + 0.4));
    }
  }
  const AccuracyReport r = match_transitions(log, truth);
  EXPECT_EQ(r.at(TransitionKind::WalkToStairAscent), (TransitionAccuracy{45, 50}));
  EXPECT_EQ(r.at(TransitionKind::WalkToStairAscent).accuracy_pct(), 90.0);
  EXPECT_EQ(r.at(TransitionKind::WalkToStairDescent).n_total, 0u);
  EXPECT_EQ(r.total(), (TransitionAccuracy{45, 50}));
}

TEST(Eq1, OneDecisionCannotServeTwoBoundaries) {
  const std::vector<Boundary> truth{{10.0, TransitionKind::WalkToSit},
                                    {10.5, TransitionKind::WalkToSit}};
  const std::vector<TransitionDecision> log{fired(TransitionKind::WalkToSit, 10.2)};
  EXPECT_EQ(match_transitions(log, truth).at(TransitionKind::WalkToSit).n_correct, 1u);
}

TEST(Eq1, WindowEdgeIsInclusive) {
  const std::vector<Boundary> truth{{4.0, TransitionKind::SitToWalk}};
  const std::vector<TransitionDecision> log{fired(TransitionKind::SitToWalk, 5.5)};
  EXPECT_EQ(match_transitions(log, truth, 1.5).total().n_correct, 1u);
  EXPECT_EQ(match_transitions(log, truth, 1.4).total().n_correct, 0u);
}

TEST(Eq1, ReportsAdd) {
  AccuracyReport a, b;
  a.at(TransitionKind::SitToWalk) = {1, 2};
  b.at(TransitionKind::SitToWalk) = {2, 2};
  b.at(TransitionKind::WalkToSit) = {0, 1};
  a += b;
  EXPECT_EQ(a.at(TransitionKind::SitToWalk), (TransitionAccuracy{3, 4}));
  EXPECT_EQ(a.total(), (TransitionAccuracy{3, 5}));
}

TEST(DecisionLog, RoundTrip) {
  std::vector<TransitionDecision> log{
      fired(TransitionKind::SitToWalk, 3.07),
      {TransitionKind::WalkToStairDescent, 3.9, Mode::Walk, {IcfKind::Icf2, 3.4000000000000004},
       false}};
  std::stringstream ss;
  write_decision_log(ss, log);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "t,state_before,kind,feature_value,fired");
  EXPECT_EQ(read_decision_log(ss), log);
}

TEST(DecisionLog, Errors) {
  std::stringstream bad_header("a,b\n");
  EXPECT_THROW(read_decision_log(bad_header), SchemaError);
  std::stringstream bad_row("t,state_before,kind,feature_value,fired\n1,walk,W->S,1,2\n");
  try {
    read_decision_log(bad_row);
    FAIL();
  } catch (const RowError& e) {
    EXPECT_EQ(e.row(), 1u);
  }
}

TEST(AccuracyCsv, Layout) {
  AccuracyReport r;
  r.at(TransitionKind::WalkToSit) = {45, 50};
  std::ostringstream out;
  write_accuracy_csv(out, r);
  EXPECT_EQ(out.str(),
            "transition,n_correct,n_total,accuracy_pct\n"
            "W->S,45,50,90\n"
            "S->W,0,0,\n"
            "W->SA,0,0,\n"
            "SA->W,0,0,\n"
            "W->SD,0,0,\n"
            "SD->W,0,0,\n"
            "total,45,50,90\n");
  const auto j = accuracy_to_json(r);
  EXPECT_EQ(j["per_transition"]["W->S"]["accuracy_pct"].get<double>(), 90.0);
  EXPECT_TRUE(j["per_transition"]["S->W"]["accuracy_pct"].is_null());
}
