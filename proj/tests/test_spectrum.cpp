#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "qaplan/errors.hpp"
#include "qaplan/spectrum.hpp"
#include "test_support.hpp"

namespace qaplan {
namespace {

using testing::shipped_fiber;

constexpr double kLen = 20.0;
constexpr double kBq = 12.5;

FiberParams fiber_with(std::vector<RamanSpectrum::Point> pts) {
  FiberParams f;
  f.raman = std::make_shared<const RamanSpectrum>(std::move(pts));
  return f;
}

TEST(Grid, Validation) {
  WdmGrid g;
  EXPECT_NO_THROW(g.validate());
  EXPECT_DOUBLE_EQ(g.slot_freq_thz(0), 191.7);
  EXPECT_NEAR(g.slot_freq_thz(39), 195.6, 1e-12);
  EXPECT_DOUBLE_EQ(g.detuning_ghz(30, 10), 2000.0);
  g.n_slots = 60;
  EXPECT_THROW(g.validate(), InvalidInput);
  g.n_slots = 1;
  EXPECT_THROW(g.validate(), InvalidInput);
  EXPECT_THROW(WdmGrid{}.slot_freq_thz(40), InvalidInput);
}

TEST(Assignment, Validation) {
  const WdmGrid g;
  EXPECT_THROW((ChannelAssignment{3, {{3, 0.0}}}.validate(g)), InvalidInput);
  EXPECT_THROW((ChannelAssignment{3, {{4, 0.0}, {4, 0.0}}}.validate(g)), InvalidInput);
  EXPECT_THROW((ChannelAssignment{3, {{40, 0.0}}}.validate(g)), InvalidInput);
}

TEST(Aggregate, EmptySingleAndPermutation) {
  const WdmGrid g;
  const FiberParams f = shipped_fiber();
  EXPECT_EQ(aggregate_spurs(g, {17, {}}, f, kLen, kBq), 0.0);

  const double rho = raman_coefficient(*f.raman, g.slot_freq_thz(25), g.slot_freq_thz(17));
  const double single = spurs_power_forward(dbm_to_watt(0.0), kLen, f, rho, kBq);
  EXPECT_NEAR(aggregate_spurs(g, {17, {{25, 0.0}}}, f, kLen, kBq), single, 1e-12 * single);

  std::vector<ClassicalSlot> slots;
  for (int s = 0; s < g.n_slots; s += 3) {
    if (s != 17) slots.push_back({s, -10.0 + 0.5 * s});
  }
  const double base = aggregate_spurs(g, {17, slots}, f, kLen, kBq);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(slots.begin(), slots.end(), rng);
    EXPECT_NEAR(aggregate_spurs(g, {17, slots}, f, kLen, kBq), base, 1e-14 * base);
  }
}

TEST(Aggregate, AdditiveOverDisjointSets) {
  const WdmGrid g;
  const FiberParams f = shipped_fiber();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> slots(g.n_slots);
    std::iota(slots.begin(), slots.end(), 0);
    slots.erase(slots.begin() + 20);
    std::shuffle(slots.begin(), slots.end(), rng);
    std::vector<ClassicalSlot> a, b, both;
    for (std::size_t i = 0; i < 16; ++i) {
      const ClassicalSlot c{slots[i], -5.0};
      (i % 2 ? a : b).push_back(c);
      both.push_back(c);
    }
    const double sum = aggregate_spurs(g, {20, a}, f, kLen, kBq) +
                       aggregate_spurs(g, {20, b}, f, kLen, kBq);
    EXPECT_NEAR(aggregate_spurs(g, {20, both}, f, kLen, kBq), sum, 1e-14 * sum);
  }
}

TEST(Placement, ShapeOnShippedTable) {
  const WdmGrid g;
  const PlacementSweep sweep = placement_sweep(g, shipped_fiber(), kLen, 0.0, kBq);
  ASSERT_EQ(sweep.points.size(), 40u);
  EXPECT_GT(sweep.argmin_slot, 0);
  EXPECT_LT(sweep.argmin_slot, 39);
  EXPECT_GE(3 * sweep.argmin_slot, 40);
  EXPECT_LT(3 * sweep.argmin_slot, 80);
  for (const auto& p : sweep.points) {
    EXPECT_GE(p.spurs_w, sweep.points[sweep.argmin_slot].spurs_w);
  }
  // every point equals the aggregate over all other slots lit at 0 dBm
  std::vector<ClassicalSlot> rest;
  for (int s = 0; s < 40; ++s) {
    if (s != 5) rest.push_back({s, 0.0});
  }
  EXPECT_NEAR(sweep.points[5].spurs_w, aggregate_spurs(g, {5, rest}, shipped_fiber(), kLen, kBq),
              1e-15 * sweep.points[5].spurs_w);
}

TEST(Placement, TwoSlotsSymmetricTableGiveEqualValues) {
  const FiberParams f = fiber_with({{-15000, 2e-11}, {0, 0.0}, {15000, 2e-11}});
  WdmGrid g;
  g.n_slots = 2;
  const PlacementSweep sweep = placement_sweep(g, f, kLen, 0.0, kBq);
  ASSERT_EQ(sweep.points.size(), 2u);
  EXPECT_GT(sweep.points[0].spurs_w, 0.0);
  EXPECT_NEAR(sweep.points[0].spurs_w, sweep.points[1].spurs_w, 1e-12 * sweep.points[1].spurs_w);
  EXPECT_EQ(sweep.argmin_slot, 0);
}

TEST(Order, QawaIsPermutationSortedByContribution) {
  const WdmGrid g;
  const FiberParams f = shipped_fiber();
  for (int q : {0, 17, 23, 39}) {
    const auto order = qawa_order(g, q, f, kLen, kBq);
    const auto contrib = slot_contributions(g, q, f, kLen, kBq);
    ASSERT_EQ(order.size(), 39u);
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected;
    for (int s = 0; s < 40; ++s) {
      if (s != q) expected.push_back(s);
    }
    EXPECT_EQ(sorted, expected);

    std::vector<int> direct = expected;
    std::stable_sort(direct.begin(), direct.end(),
                     [&](int a, int b) { return contrib[a] < contrib[b]; });
    EXPECT_EQ(order, direct);
    for (int s : expected) EXPECT_LE(contrib[order.front()], contrib[s]);
  }
}

TEST(Order, IncreasingTableFillsFarAntiStokesFirst) {
  // rho strictly increasing in detuning on both sides of zero
  const FiberParams f = fiber_with({{-15000, 1e-12}, {0, 2e-12}, {15000, 9e-12}});
  const WdmGrid g;
  const auto order = qawa_order(g, 12, f, kLen, kBq);
  std::vector<int> expected;
  for (int s = 0; s < 40; ++s) {
    if (s != 12) expected.push_back(s);
  }
  EXPECT_EQ(order, expected);
}

TEST(Order, GreedyPrefixIsOptimalSubset) {
  // The first k slots of the order minimise SpRS over every k-subset.
  WdmGrid g;
  g.n_slots = 12;
  const FiberParams f = shipped_fiber();
  const int q = 5;
  const auto order = qawa_order(g, q, f, kLen, kBq);
  const auto contrib = slot_contributions(g, q, f, kLen, kBq);
  std::vector<int> others;
  for (int s = 0; s < g.n_slots; ++s) {
    if (s != q) others.push_back(s);
  }
  const int n = static_cast<int>(others.size());
  for (int k = 1; k <= 5; ++k) {
    double greedy = 0.0;
    for (int i = 0; i < k; ++i) greedy += contrib[order[i]];
    double best = 1e300;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != k) continue;
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) sum += contrib[others[i]];
      }
      best = std::min(best, sum);
    }
    EXPECT_NEAR(greedy, best, 1e-15 * best) << "k=" << k;
  }
}

TEST(Order, FirstFitSkipsQuantumSlot) {
  const auto order = first_fit_order(WdmGrid{}, 0);
  ASSERT_EQ(order.size(), 39u);
  EXPECT_EQ(order.front(), 1);
  EXPECT_EQ(order.back(), 39);
}

}  // namespace
}  // namespace qaplan
