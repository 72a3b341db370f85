#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "locotrans/dataset.hpp"
#include "locotrans/error.hpp"
#include "locotrans/event_detector.hpp"
#include "locotrans/synthetic.hpp"

namespace fs = std::filesystem;
using namespace locotrans;

namespace {

std::vector<GaitEvent> mhf_events(const Trial& t) {
  std::vector<GaitEvent> out;
  for (const auto& e : detect_events(t.samples, {}))
    if (e.kind == EventKind::MaxHipFlexion) out.push_back(e);
  return out;
}

SyntheticScript one(Mode m, double d) {
  SyntheticScript s;
  s.segments = {{m, d}};
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Synthetic, WalkPeakCount) {
  const auto s = one(Mode::Walk, 5.0);
  const long expect = static_cast<long>(std::floor(5.0 * s.cadence));
  const long got = static_cast<long>(mhf_events(generate_synthetic(s, 1)).size());
  EXPECT_LE(std::abs(got - expect), 1);
}

TEST(Synthetic, SitThenWalkBoundary) {
  SyntheticScript s;
  s.segments = {{Mode::Sit, 3.0}, {Mode::Walk, 5.0}};
  const Trial t = generate_synthetic(s, 9);
  const auto b = annotated_boundaries(t.annotations);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0], (Boundary{3.0, TransitionKind::SitToWalk}));
}

TEST(Synthetic, ProtocolOrder) {
  const auto b = annotated_boundaries(generate_synthetic(protocol_script(), 1).annotations);
  const std::vector<TransitionKind> expect = {
      TransitionKind::SitToWalk,          TransitionKind::WalkToStairDescent,
      TransitionKind::StairDescentToWalk, TransitionKind::WalkToStairAscent,
      TransitionKind::StairAscentToWalk,  TransitionKind::WalkToSit};
  ASSERT_EQ(b.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(b[i].kind, expect[i]);
}

TEST(Synthetic, StairPeaksAboveWalkPeaks) {
  // 100 noiseless steps of each.
  const auto walk = mhf_events(generate_synthetic(one(Mode::Walk, 100 / 1.8), 1));
  const auto stair = mhf_events(generate_synthetic(one(Mode::StairAscent, 100 / 1.8), 1));
  ASSERT_GE(walk.size(), 99u);
  ASSERT_GE(stair.size(), 99u);
  double max_walk = -1e9, min_stair = 1e9;
  for (const auto& e : walk) max_walk = std::max(max_walk, e.theta);
  for (const auto& e : stair) min_stair = std::min(min_stair, e.theta);
  EXPECT_GT(min_stair, max_walk);
  EXPECT_NEAR(max_walk, 35.0, 1.0);
}

TEST(Synthetic, SeedChangesNoiseNotAnnotations) {
  const Trial a = generate_synthetic(protocol_script(2.0), 1);
  const Trial b = generate_synthetic(protocol_script(2.0), 2);
  EXPECT_EQ(a.annotations, b.annotations);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  EXPECT_NE(a.samples, b.samples);
}

TEST(Synthetic, NoiselessIsSeedIndependentAndByteStable) {
  const Trial a = generate_synthetic(protocol_script(), 1, "x");
  const Trial b = generate_synthetic(protocol_script(), 77, "x");
  EXPECT_EQ(a, b);
  const fs::path dir = fs::temp_directory_path() / "lt_synth_bytes";
  fs::create_directories(dir);
  save_trial(a, dir / "one.csv");
  save_trial(generate_synthetic(protocol_script(), 1, "x"), dir / "two.csv");
  EXPECT_EQ(slurp(dir / "one.csv"), slurp(dir / "two.csv"));
  fs::remove_all(dir);
}

TEST(Synthetic, SampleGridAndRange) {
  const Trial t = generate_synthetic(protocol_script(), 1);
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    EXPECT_DOUBLE_EQ(t.samples[i].t, static_cast<double>(i) / 100.0);
    EXPECT_LT(std::abs(t.samples[i].theta), 180.0);
  }
  EXPECT_NO_THROW(validate_trial(t));
}

TEST(Synthetic, ScriptValidation) {
  SyntheticScript s;
  EXPECT_THROW(s.validate(), SchemaError);
  s.segments = {{Mode::Walk, 0.0}};
  EXPECT_THROW(s.validate(), SchemaError);
  s.segments = {{Mode::Sit, 1.0}, {Mode::StairAscent, 1.0}};
  EXPECT_THROW(s.validate(), SchemaError);
  s.segments = {{Mode::Walk, 1.0}};
  s.sample_rate = 40;
  EXPECT_THROW(s.validate(), SchemaError);
  s.sample_rate = 100;
  s.noise_sd = -1;
  EXPECT_THROW(s.validate(), SchemaError);
}

TEST(Synthetic, ScriptJsonRoundTrip) {
  const SyntheticScript s = protocol_script(1.5);
  EXPECT_EQ(script_from_json(script_to_json(s)), s);
  EXPECT_THROW(script_from_json(nlohmann::json::parse(R"({"segments":[],"bogus":1})")),
               SchemaError);
  EXPECT_THROW(
      script_from_json(nlohmann::json::parse(R"({"segments":[{"mode":"fly","duration":1}]})")),
      SchemaError);
}
