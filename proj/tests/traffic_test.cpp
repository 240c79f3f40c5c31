// Copyright 2026 The fdrasim Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdrasim/traffic.hpp"

#include <cstdint>
#include <random>

#include "gtest/gtest.h"

namespace {

using fdra::ArrivalProcess;
using fdra::generateArrivals;
using fdra::Packet;
using fdra::parseTrafficType;
using fdra::QosProfile;
using fdra::trafficPreset;
using fdra::TrafficType;
using fdra::trafficTypeName;
using fdra::UeQueue;

constexpr double kSlot = 0.0005;

TEST(TrafficPresets, FrozenParameters) {
  const QosProfile embb = trafficPreset(TrafficType::kEmbb);
  EXPECT_DOUBLE_EQ(embb.delayThresholdSec, 0.100);
  EXPECT_DOUBLE_EQ(embb.acceptableDropProb, 0.10);
  EXPECT_EQ(embb.packetSizeBits, 12000);
  EXPECT_DOUBLE_EQ(embb.arrivalRatePktPerSec, 1000.0);

  const QosProfile arvr = trafficPreset(TrafficType::kArVr2);
  EXPECT_DOUBLE_EQ(arvr.delayThresholdSec, 0.007);
  EXPECT_DOUBLE_EQ(arvr.acceptableDropProb, 0.001);
  EXPECT_EQ(arvr.packetSizeBits, 32768);
  EXPECT_DOUBLE_EQ(arvr.arrivalRatePktPerSec, 60.0);

  const QosProfile its = trafficPreset(TrafficType::kIts);
  EXPECT_DOUBLE_EQ(its.delayThresholdSec, 0.007);
  EXPECT_DOUBLE_EQ(its.acceptableDropProb, 1e-5);
  EXPECT_EQ(its.packetSizeBits, 10960);
  EXPECT_DOUBLE_EQ(its.arrivalRatePktPerSec, 100.0);

  const QosProfile power = trafficPreset(TrafficType::kPowerDist2);
  EXPECT_DOUBLE_EQ(power.delayThresholdSec, 0.006);
  EXPECT_DOUBLE_EQ(power.acceptableDropProb, 1e-5);
  EXPECT_EQ(power.packetSizeBits, 2000);
  EXPECT_DOUBLE_EQ(power.arrivalRatePktPerSec, 1200.0);

  for (const QosProfile& q : {embb, arvr, its, power}) EXPECT_TRUE(q.valid());
}

TEST(TrafficPresets, NamesRoundTrip) {
  for (TrafficType t : fdra::kAllTrafficTypes) {
    EXPECT_EQ(parseTrafficType(trafficTypeName(t)), t);
  }
  EXPECT_THROW(parseTrafficType("voice"), std::invalid_argument);
}

TEST(Arrivals, ZeroRateProducesNothing) {
  QosProfile q = trafficPreset(TrafficType::kEmbb);
  q.arrivalRatePktPerSec = 0.0;
  std::mt19937_64 rng(1);
  for (std::int64_t slot = 0; slot < 100; ++slot) {
    EXPECT_TRUE(generateArrivals(q, kSlot, slot, rng).empty());
  }
}

TEST(Arrivals, PoissonMeanMatchesRate) {
  // eMBB: 1000 pkt/s at 0.5 ms slots is 0.5 packets per slot.
  const QosProfile q = trafficPreset(TrafficType::kEmbb);
  std::mt19937_64 rng(42);
  std::int64_t total = 0;
  const int slots = 200000;
  for (std::int64_t slot = 0; slot < slots; ++slot) {
    total += static_cast<std::int64_t>(
        generateArrivals(q, kSlot, slot, rng).size());
  }
  const double perSlot = static_cast<double>(total) / slots;
  EXPECT_NEAR(perSlot, 0.5, 0.01);  // within 2 percent
}

TEST(Arrivals, PacketsCarryTheProfileSize) {
  const QosProfile q = trafficPreset(TrafficType::kPowerDist2);
  std::mt19937_64 rng(7);
  for (std::int64_t slot = 0; slot < 200; ++slot) {
    for (const Packet& p : generateArrivals(q, kSlot, slot, rng)) {
      EXPECT_EQ(p.sizeBits, 2000);
      EXPECT_EQ(p.remainingBits, 2000);
      EXPECT_EQ(p.arrivalSlot, slot);
    }
  }
}

TEST(Arrivals, DeterministicProcessCountsExactly) {
  // 0.5 packets per slot: one packet on every odd slot, none on even.
  const QosProfile q = trafficPreset(TrafficType::kEmbb);
  std::mt19937_64 rng(1);
  std::int64_t total = 0;
  for (std::int64_t slot = 0; slot < 10; ++slot) {
    const auto a = generateArrivals(q, kSlot, slot, rng,
                                    ArrivalProcess::kDeterministic);
    total += static_cast<std::int64_t>(a.size());
    EXPECT_EQ(a.size(), slot % 2 == 1 ? 1u : 0u) << "slot " << slot;
  }
  EXPECT_EQ(total, 5);
}

Packet packetOf(std::int64_t size, std::int64_t slot) {
  Packet p;
  p.sizeBits = size;
  p.remainingBits = size;
  p.arrivalSlot = slot;
  return p;
}

TEST(UeQueue, HolDelayTracksTheOldestPacket) {
  UeQueue q;
  EXPECT_DOUBLE_EQ(q.holDelaySec(10, kSlot), 0.0);
  q.push(packetOf(2000, 3));
  q.push(packetOf(2000, 5));
  EXPECT_DOUBLE_EQ(q.holDelaySec(5, kSlot), 0.001);
  EXPECT_DOUBLE_EQ(q.holDelaySec(3, kSlot), 0.0);
}

TEST(UeQueue, PendingBitsWholeQueueVersusHolPacket) {
  UeQueue q;
  EXPECT_EQ(q.pendingBits(), 0);
  q.push(packetOf(2000, 0));
  q.push(packetOf(3000, 1));
  EXPECT_EQ(q.pendingBits(true), 5000);
  EXPECT_EQ(q.pendingBits(false), 2000);
  q.applyGrant(500);
  EXPECT_EQ(q.pendingBits(true), 4500);
  EXPECT_EQ(q.pendingBits(false), 1500);
}

TEST(UeQueue, DropsAtExactlyTheDeadline) {
  QosProfile q = trafficPreset(TrafficType::kEmbb);
  q.delayThresholdSec = 0.005;  // ten slots
  UeQueue queue;
  queue.push(packetOf(2000, 0));
  EXPECT_EQ(queue.dropExpired(q, kSlot, 9), 0);
  EXPECT_EQ(queue.packetCount(), 1u);
  EXPECT_EQ(queue.dropExpired(q, kSlot, 10), 1);
  EXPECT_TRUE(queue.empty());
  EXPECT_EQ(queue.stats().droppedPackets, 1);
}

TEST(UeQueue, DeadlineSlotsRobustToRounding) {
  // 0.007 / 0.0005 is 14 up to floating-point noise.
  const QosProfile q = trafficPreset(TrafficType::kArVr2);
  UeQueue queue;
  queue.push(packetOf(100, 0));
  EXPECT_EQ(queue.dropExpired(q, kSlot, 13), 0);
  EXPECT_EQ(queue.dropExpired(q, kSlot, 14), 1);
}

TEST(UeQueue, DropsOnlyTheExpiredPrefix) {
  const QosProfile q = trafficPreset(TrafficType::kArVr2);  // 14 slots
  UeQueue queue;
  queue.push(packetOf(100, 0));
  queue.push(packetOf(100, 1));
  queue.push(packetOf(100, 10));
  EXPECT_EQ(queue.dropExpired(q, kSlot, 15), 2);
  EXPECT_EQ(queue.packetCount(), 1u);
  EXPECT_DOUBLE_EQ(queue.holDelaySec(15, kSlot), 5 * kSlot);
}

TEST(UeQueue, GrantDrainsHeadFirstAndCountsFullPackets) {
  UeQueue q;
  q.push(packetOf(2000, 0));
  q.push(packetOf(2000, 0));
  EXPECT_EQ(q.applyGrant(0), 0);
  EXPECT_EQ(q.applyGrant(3000), 1);  // head delivered, second half-served
  EXPECT_EQ(q.stats().deliveredPackets, 1);
  EXPECT_EQ(q.stats().deliveredBits, 2000);  // full packet size, not 3000
  EXPECT_EQ(q.pendingBits(), 1000);
  EXPECT_EQ(q.applyGrant(999), 0);  // still one bit short
  EXPECT_EQ(q.applyGrant(1), 1);
  EXPECT_TRUE(q.empty());
  EXPECT_EQ(q.stats().deliveredBits, 4000);
}

TEST(UeQueue, OvergrantOnEmptyQueueIsLost) {
  UeQueue q;
  q.push(packetOf(500, 0));
  EXPECT_EQ(q.applyGrant(10000), 1);
  EXPECT_EQ(q.stats().deliveredBits, 500);
  EXPECT_EQ(q.applyGrant(10000), 0);
}

TEST(UeQueue, DeliveredPacketsCanNoLongerExpire) {
  const QosProfile q = trafficPreset(TrafficType::kPowerDist2);
  UeQueue queue;
  queue.push(packetOf(2000, 0));
  EXPECT_EQ(queue.applyGrant(2000), 1);
  EXPECT_EQ(queue.dropExpired(q, kSlot, 1000), 0);
  EXPECT_EQ(queue.stats().droppedPackets, 0);
}

TEST(UeQueue, AccountingIdentityUnderRandomTraffic) {
  std::mt19937_64 rng(20260819);
  const QosProfile profile = trafficPreset(TrafficType::kIts);
  UeQueue q;
  for (std::int64_t slot = 0; slot < 20000; ++slot) {
    for (Packet& p :
         generateArrivals(profile, kSlot, slot, rng)) {
      q.push(p);
    }
    q.dropExpired(profile, kSlot, slot);
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
      q.applyGrant(std::uniform_int_distribution<std::int64_t>(0, 30000)(rng));
    }
    const auto& s = q.stats();
    ASSERT_EQ(s.arrivedPackets,
              s.deliveredPackets + s.droppedPackets +
                  static_cast<std::int64_t>(q.packetCount()));
  }
  EXPECT_GT(q.stats().arrivedPackets, 0);
  EXPECT_GT(q.stats().deliveredPackets, 0);
  EXPECT_GT(q.stats().droppedPackets, 0);
}

}  // namespace
