#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "qsv/consistency.hpp"
#include "qsv/mask.hpp"
#include "qsv/projection.hpp"

namespace qsv {
namespace {

TEST(Project, UnmeasuredLandingContributesNothing) {
  Mask pm(4, 4);
  pm.set(0, 0, true);
  const auto past = apply_mask(Frame(4, 4, std::vector<double>(16, 50.0)), pm);
  MotionField f(4, 4);
  f.at(2, 2) = {true, {1, 1}, 0.0, MotionStatus::accepted};
  f.at(1, 1) = {true, {-1, -1}, 0.0, MotionStatus::accepted};
  f.at(1, 2) = {true, {-1, -2}, 0.0, MotionStatus::rejected};
  f.at(2, 1) = {true, {-2, -1}, 0.0, MotionStatus::candidate};
  ProjectionBuffer buf(4, 4);
  project(f, past, buf);
  EXPECT_EQ(buf.covered(), 1u);
  EXPECT_TRUE(buf.has({1, 1}));
  EXPECT_EQ(buf.value({1, 1}), 50.0);
}

TEST(Project, ContributionsAverage) {
  Mask pm(3, 3, 0);
  pm.set(1, 1, true);
  const auto past1 = apply_mask(Frame(3, 3, std::vector<double>(9, 10.0)), pm);
  const auto past2 = apply_mask(Frame(3, 3, std::vector<double>(9, 20.0)), pm);
  MotionField f(3, 3);
  f.at(0, 0) = {true, {1, 1}, 0.0, MotionStatus::accepted};
  ProjectionBuffer buf(3, 3);
  project(f, past1, buf);
  project(f, past2, buf);
  EXPECT_EQ(buf.count({0, 0}), 2);
  EXPECT_EQ(buf.value({0, 0}), 15.0);
}

TEST(Project, DimensionMismatch) {
  ProjectionBuffer buf(4, 4);
  EXPECT_THROW(project(MotionField(4, 4), apply_mask(Frame(5, 4), Mask(5, 4)), buf), DimensionError);
}

TEST(Overlay, ValuesAndMask) {
  ProjectionBuffer buf(2, 2);
  const auto empty = to_sampled_overlay(buf);
  EXPECT_EQ(empty.mask.values(), std::vector<std::uint8_t>(4, 0));
  buf.add({0, 1}, 5.0);
  buf.add({0, 1}, 10.0);
  buf.add({0, 1}, 15.0);
  const auto ov = to_sampled_overlay(buf);
  EXPECT_EQ(ov.mask(0, 1), 1);
  EXPECT_EQ(ov.values(0, 1), 10.0);
  EXPECT_EQ(ov.values(1, 1), 0.0);
}

struct ThreeReferences {
  std::vector<Frame> seq;
  std::vector<SampledFrame> sampled;
  std::vector<MotionField> fields;  // fields[d-1]: current -> t-d, checked

  ThreeReferences() {
    const Vec2 v{1, -2};
    seq = oracle::global_translation(64, 64, 4, v, 19);
    const auto masks = generate_dynamic_mask(64, 64, 6);
    for (const auto& f : seq) sampled.push_back(apply_mask(f, masks.mask_for(f.t())));
    for (int d = 1; d <= 3; ++d) {
      auto field = estimate(sampled[3], seq[static_cast<std::size_t>(3 - d)], MotionParams{}, d);
      fields.push_back(check_frmc(field, sampled[3], seq[static_cast<std::size_t>(3 - d)],
                                  MotionParams{}, CheckMode{}.frmc_offsets));
    }
  }
};

TEST(Project, OrderOfReferencesIrrelevant) {
  ThreeReferences fx;
  std::vector<int> order{0, 1, 2};
  ProjectionBuffer reference(64, 64);
  for (int d : order) project(fx.fields[static_cast<std::size_t>(d)], fx.sampled[static_cast<std::size_t>(2 - d)], reference);
  while (std::next_permutation(order.begin(), order.end())) {
    ProjectionBuffer buf(64, 64);
    for (int d : order) project(fx.fields[static_cast<std::size_t>(d)], fx.sampled[static_cast<std::size_t>(2 - d)], buf);
    EXPECT_EQ(buf, reference);
  }
}

TEST(Project, MergeMatchesSharedBuffer) {
  ThreeReferences fx;
  ProjectionBuffer shared(64, 64), merged(64, 64);
  for (int d = 0; d < 3; ++d) {
    project(fx.fields[static_cast<std::size_t>(d)], fx.sampled[static_cast<std::size_t>(2 - d)], shared);
    ProjectionBuffer own(64, 64);
    project(fx.fields[static_cast<std::size_t>(d)], fx.sampled[static_cast<std::size_t>(2 - d)], own);
    merged.merge(own);
  }
  EXPECT_EQ(merged, shared);
}

TEST(Project, TranslationCoverage) {
  ThreeReferences fx;
  ProjectionBuffer buf(64, 64);
  for (int d = 0; d < 3; ++d) {
    project(fx.fields[static_cast<std::size_t>(d)], fx.sampled[static_cast<std::size_t>(2 - d)], buf);
  }
  // Direct enumeration: a missing interior pixel can be covered only if one
  // of its true correspondences was measured.
  int missing = 0, covered = 0, reachable = 0;
  for (const auto& p : fx.sampled[3].missing_positions()) {
    if (p.row < 13 || p.col < 13 || p.row >= 51 || p.col >= 51) continue;
    ++missing;
    covered += buf.has(p);
    bool any = false;
    for (int d = 1; d <= 3; ++d) {
      any = any || fx.sampled[static_cast<std::size_t>(3 - d)].measured({p.row + d, p.col - 2 * d});
    }
    reachable += any;
    if (buf.has(p)) {
      // Projected values are exact samples of the translated texture.
      ASSERT_EQ(buf.value(p), fx.seq[3][p]);
    }
  }
  // Independent per-block permutations put the reachable share near
  // 1 - (3/4)^3 for any non-zero motion, so the bound is the enumeration.
  EXPECT_GE(static_cast<double>(reachable) / missing, 0.5);
  EXPECT_GE(covered, 95 * reachable / 100);
  EXPECT_LE(covered, reachable);
}

TEST(Project, ValueWithinContributionRange) {
  ProjectionBuffer buf(1, 1);
  for (double v : {3.0, 250.0, 17.5, 99.0}) buf.add({0, 0}, v);
  EXPECT_GE(buf.value({0, 0}), 3.0);
  EXPECT_LE(buf.value({0, 0}), 250.0);
}

}  // namespace
}  // namespace qsv
