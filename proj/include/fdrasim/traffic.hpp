// Copyright 2026 The fdrasim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Traffic models: per-flow QoS presets, packet arrival processes, FIFO
// queues with deadline discard, and delivery accounting.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdrasim/metrics.hpp"

namespace fdra {

enum class TrafficType { kEmbb, kArVr2, kIts, kPowerDist2 };

inline constexpr std::array<TrafficType, 4> kAllTrafficTypes = {
    TrafficType::kEmbb, TrafficType::kArVr2, TrafficType::kIts,
    TrafficType::kPowerDist2};

// Fixed packet sizes and Poisson rates per service class.
inline QosProfile trafficPreset(TrafficType type) {
  QosProfile q;
  switch (type) {
    case TrafficType::kEmbb:
      q.delayThresholdSec = 0.100;
      q.acceptableDropProb = 0.10;
      q.packetSizeBits = 12000;
      q.arrivalRatePktPerSec = 1000.0;
      return q;
    case TrafficType::kArVr2:
      q.delayThresholdSec = 0.007;
      q.acceptableDropProb = 0.001;
      q.packetSizeBits = 32768;
      q.arrivalRatePktPerSec = 60.0;
      return q;
    case TrafficType::kIts:
      q.delayThresholdSec = 0.007;
      q.acceptableDropProb = 1e-5;
      q.packetSizeBits = 10960;
      q.arrivalRatePktPerSec = 100.0;
      return q;
    case TrafficType::kPowerDist2:
      q.delayThresholdSec = 0.006;
      q.acceptableDropProb = 1e-5;
      q.packetSizeBits = 2000;
      q.arrivalRatePktPerSec = 1200.0;
      return q;
  }
  throw std::logic_error("trafficPreset: unknown type");
}

inline std::string trafficTypeName(TrafficType type) {
  switch (type) {
    case TrafficType::kEmbb:
      return "embb";
    case TrafficType::kArVr2:
      return "arvr2";
    case TrafficType::kIts:
      return "its";
    case TrafficType::kPowerDist2:
      return "powerdist2";
  }
  throw std::logic_error("trafficTypeName: unknown type");
}

inline TrafficType parseTrafficType(const std::string& name) {
  for (TrafficType t : kAllTrafficTypes) {
    if (trafficTypeName(t) == name) return t;
  }
  std::string msg = "unknown traffic type '" + name + "', expected one of";
  for (TrafficType t : kAllTrafficTypes) msg += " " + trafficTypeName(t);
  throw std::invalid_argument(msg);
}

struct Packet {
  std::int64_t sizeBits = 0;
  std::int64_t remainingBits = 0;
  std::int64_t arrivalSlot = 0;
};

enum class ArrivalProcess { kPoisson, kDeterministic };

// Packets arriving in one slot. Poisson draws from the per-slot mean
// rate * slotDuration; the deterministic process spreads the same mean
// evenly by cumulative counting and uses no randomness.
inline std::vector<Packet> generateArrivals(const QosProfile& qos,
                                            double slotDurationSec,
                                            std::int64_t slot,
                                            std::mt19937_64& rng,
                                            ArrivalProcess process =
                                                ArrivalProcess::kPoisson) {
  if (!(slotDurationSec > 0.0)) {
    throw std::invalid_argument("generateArrivals: bad slot duration");
  }
  const double mean = qos.arrivalRatePktPerSec * slotDurationSec;
  int count = 0;
  if (mean > 0.0) {
    if (process == ArrivalProcess::kPoisson) {
      count = std::poisson_distribution<int>(mean)(rng);
    } else {
      const auto upto = [mean](std::int64_t s) {
        return static_cast<std::int64_t>(
            std::floor(static_cast<double>(s) * mean + 1e-9));
      };
      count = static_cast<int>(upto(slot + 1) - upto(slot));
    }
  }
  std::vector<Packet> out(static_cast<std::size_t>(count));
  for (Packet& p : out) {
    p.sizeBits = qos.packetSizeBits;
    p.remainingBits = qos.packetSizeBits;
    p.arrivalSlot = slot;
  }
  return out;
}

struct QueueStats {
  std::int64_t arrivedPackets = 0;
  std::int64_t deliveredPackets = 0;
  std::int64_t droppedPackets = 0;
  std::int64_t deliveredBits = 0;
};

// FIFO transmission queue of one UE. Grants drain the head packet first;
// a packet counts as delivered (and its full size as throughput) only when
// its last bit is served.
class UeQueue {
 public:
  void push(Packet packet) {
    ++stats_.arrivedPackets;
    fifo_.push_back(packet);
  }

  bool empty() const { return fifo_.empty(); }
  std::size_t packetCount() const { return fifo_.size(); }
  const QueueStats& stats() const { return stats_; }

  // Age of the head-of-line packet; zero when idle.
  double holDelaySec(std::int64_t slot, double slotDurationSec) const {
    if (fifo_.empty()) return 0.0;
    return static_cast<double>(slot - fifo_.front().arrivalSlot) *
           slotDurationSec;
  }

  // Backlog under the chosen payload reading: the whole queue, or only the
  // head packet's remaining bits.
  std::int64_t pendingBits(bool wholeQueue = true) const {
    if (fifo_.empty()) return 0;
    if (!wholeQueue) return fifo_.front().remainingBits;
    std::int64_t sum = 0;
    for (const Packet& p : fifo_) sum += p.remainingBits;
    return sum;
  }

  // Discards every packet whose age has reached the deadline. FIFO order
  // means expired packets are always a prefix of the queue.
  int dropExpired(const QosProfile& qos, double slotDurationSec,
                  std::int64_t slot) {
    const std::int64_t thresholdSlots = static_cast<std::int64_t>(
        std::ceil(qos.delayThresholdSec / slotDurationSec - 1e-9));
    int dropped = 0;
    while (!fifo_.empty() &&
           slot - fifo_.front().arrivalSlot >= thresholdSlots) {
      fifo_.pop_front();
      ++dropped;
      ++stats_.droppedPackets;
    }
    return dropped;
  }

  // Serves up to grantBits from the queue head. Returns the number of
  // packets fully delivered by this grant.
  int applyGrant(std::int64_t grantBits) {
    int delivered = 0;
    while (grantBits > 0 && !fifo_.empty()) {
      Packet& head = fifo_.front();
      const std::int64_t served = std::min(grantBits, head.remainingBits);
      head.remainingBits -= served;
      grantBits -= served;
      if (head.remainingBits == 0) {
        stats_.deliveredBits += head.sizeBits;
        ++stats_.deliveredPackets;
        ++delivered;
        fifo_.pop_front();
      }
    }
    return delivered;
  }

 private:
  std::deque<Packet> fifo_;
  QueueStats stats_;
};

}  // namespace fdra
