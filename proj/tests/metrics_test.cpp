// Copyright 2026 The fdrasim Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdrasim/metrics.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

namespace {

using fdra::makeMetric;
using fdra::MetricKind;
using fdra::mlwdfWeight;
using fdra::parseMetricKind;
using fdra::pfWeight;
using fdra::QosProfile;
using fdra::sumRateWeight;
using fdra::UeSchedulingState;
using fdra::updateAvgRate;

QosProfile qosOf(double tau, double delta) {
  QosProfile q;
  q.delayThresholdSec = tau;
  q.acceptableDropProb = delta;
  return q;
}

UeSchedulingState stateOf(double hol, double avgRate) {
  UeSchedulingState s;
  s.holDelaySec = hol;
  s.avgRate = avgRate;
  return s;
}

TEST(Mlwdf, FrozenExample) {
  // -(ln 0.1 / 0.1) * 0.01 * 213 / 100
  const double w = mlwdfWeight(qosOf(0.1, 0.1), stateOf(0.01, 100.0), 213);
  EXPECT_NEAR(w, 0.4904506249, 1e-9);
}

TEST(Mlwdf, ZeroDelayOrRateGivesZero) {
  EXPECT_EQ(mlwdfWeight(qosOf(0.1, 0.1), stateOf(0.0, 100.0), 213), 0.0);
  EXPECT_EQ(mlwdfWeight(qosOf(0.1, 0.1), stateOf(0.05, 100.0), 0), 0.0);
}

TEST(Mlwdf, RejectsNonPositiveAvgRate) {
  EXPECT_THROW(mlwdfWeight(qosOf(0.1, 0.1), stateOf(0.01, 0.0), 213),
               std::invalid_argument);
  EXPECT_THROW(mlwdfWeight(qosOf(0.1, 0.1), stateOf(0.01, -1.0), 213),
               std::invalid_argument);
}

TEST(Mlwdf, LinearInRate) {
  const QosProfile q = qosOf(0.007, 0.001);
  const UeSchedulingState s = stateOf(0.003, 512.0);
  EXPECT_DOUBLE_EQ(mlwdfWeight(q, s, 426), 2.0 * mlwdfWeight(q, s, 213));
}

TEST(Mlwdf, StricterQosWeighsHeavier) {
  const UeSchedulingState s = stateOf(0.002, 300.0);
  // Lower acceptable drop probability raises the weight.
  EXPECT_GT(mlwdfWeight(qosOf(0.007, 0.001), s, 213),
            mlwdfWeight(qosOf(0.007, 0.01), s, 213));
  // Tighter deadline raises the weight.
  EXPECT_GT(mlwdfWeight(qosOf(0.006, 0.001), s, 213),
            mlwdfWeight(qosOf(0.1, 0.001), s, 213));
}

TEST(Pf, RateOverAverage) {
  EXPECT_DOUBLE_EQ(pfWeight(stateOf(0.0, 100.0), 213), 2.13);
  EXPECT_THROW(pfWeight(stateOf(0.0, 0.0), 213), std::invalid_argument);
}

TEST(SumRate, IsTheRate) {
  EXPECT_DOUBLE_EQ(sumRateWeight(4262), 4262.0);
  EXPECT_DOUBLE_EQ(sumRateWeight(0), 0.0);
}

TEST(UpdateAvgRate, FrozenExamples) {
  UeSchedulingState s = stateOf(0.0, 100.0);
  EXPECT_DOUBLE_EQ(updateAvgRate(s, 300, 100).avgRate, 102.0);
  EXPECT_DOUBLE_EQ(updateAvgRate(s, 0, 100).avgRate, 99.0);
  EXPECT_DOUBLE_EQ(updateAvgRate(s, 100, 100).avgRate, 100.0);  // fixed point
}

TEST(UpdateAvgRate, FloorsAtMinimum) {
  UeSchedulingState s = stateOf(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    s = updateAvgRate(s, 0, 100);
    EXPECT_GE(s.avgRate, fdra::kMinAvgRateBitsPerSlot);
  }
  EXPECT_DOUBLE_EQ(s.avgRate, fdra::kMinAvgRateBitsPerSlot);
}

TEST(UpdateAvgRate, StaysBetweenOldValueAndSample) {
  std::mt19937 rng(3u);
  UeSchedulingState s = stateOf(0.0, 50.0);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t served =
        std::uniform_int_distribution<std::int64_t>(0, 5000)(rng);
    const double before = s.avgRate;
    s = updateAvgRate(s, served, 100);
    const double lo = std::min(before, static_cast<double>(served));
    const double hi = std::max(before, static_cast<double>(served));
    EXPECT_GE(s.avgRate, std::max(lo, fdra::kMinAvgRateBitsPerSlot) - 1e-12);
    EXPECT_LE(s.avgRate, std::max(hi, fdra::kMinAvgRateBitsPerSlot) + 1e-12);
  }
}

TEST(UpdateAvgRate, RejectsBadTimeConstant) {
  EXPECT_THROW(updateAvgRate(stateOf(0.0, 1.0), 0, 0), std::invalid_argument);
}

TEST(MetricFactory, DispatchesAndRoundTripsNames) {
  const QosProfile q = qosOf(0.1, 0.1);
  const UeSchedulingState s = stateOf(0.01, 100.0);
  EXPECT_DOUBLE_EQ(makeMetric(MetricKind::kMlwdf)(q, s, 213),
                   mlwdfWeight(q, s, 213));
  EXPECT_DOUBLE_EQ(makeMetric(MetricKind::kPf)(q, s, 213), pfWeight(s, 213));
  EXPECT_DOUBLE_EQ(makeMetric(MetricKind::kSumRate)(q, s, 213), 213.0);
  for (MetricKind k :
       {MetricKind::kMlwdf, MetricKind::kPf, MetricKind::kSumRate}) {
    EXPECT_EQ(parseMetricKind(fdra::metricName(k)), k);
  }
  EXPECT_THROW(parseMetricKind("bogus"), std::invalid_argument);
}

}  // namespace
