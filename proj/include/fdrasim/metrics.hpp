// Copyright 2026 The fdrasim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Per-RB scheduling weights (M-LWDF, proportional fair, sum-rate) and the
// exponential moving average of served rate they normalize by.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace fdra {

// QoS contract of one traffic flow. delayThresholdSec is the discard
// deadline, acceptableDropProb the target probability of missing it.
struct QosProfile {
  double delayThresholdSec = 0.1;
  double acceptableDropProb = 0.1;
  std::int64_t packetSizeBits = 12000;
  double arrivalRatePktPerSec = 1000.0;

  bool valid() const {
    return delayThresholdSec > 0.0 && acceptableDropProb > 0.0 &&
           acceptableDropProb < 1.0 && packetSizeBits >= 1 &&
           arrivalRatePktPerSec >= 0.0;
  }
};

// avgRate is kept strictly positive so weight denominators never blow up;
// a UE that was never served sits at the floor.
inline constexpr double kMinAvgRateBitsPerSlot = 1.0;

struct UeSchedulingState {
  double holDelaySec = 0.0;               // age of the head-of-line packet
  double avgRate = kMinAvgRateBitsPerSlot;  // EMA of served bits per slot
  std::int64_t pendingBits = 0;
};

// Largest weighted delay first: -(ln(delta) / tau) * d * r / R. Grows with
// head-of-line delay and instantaneous rate, shrinks with past service.
inline double mlwdfWeight(const QosProfile& qos, const UeSchedulingState& ue,
                          std::int64_t ratePerRb) {
  if (!(ue.avgRate > 0.0)) {
    throw std::invalid_argument("mlwdfWeight: avgRate must be positive");
  }
  if (!qos.valid()) {
    throw std::invalid_argument("mlwdfWeight: invalid QoS profile");
  }
  const double urgency =
      -(std::log(qos.acceptableDropProb) / qos.delayThresholdSec);
  return urgency * ue.holDelaySec * static_cast<double>(ratePerRb) /
         ue.avgRate;
}

inline double pfWeight(const UeSchedulingState& ue, std::int64_t ratePerRb) {
  if (!(ue.avgRate > 0.0)) {
    throw std::invalid_argument("pfWeight: avgRate must be positive");
  }
  return static_cast<double>(ratePerRb) / ue.avgRate;
}

inline double sumRateWeight(std::int64_t ratePerRb) {
  return static_cast<double>(ratePerRb);
}

// One EMA step with time constant T slots: R <- R + (served - R) / T,
// floored at kMinAvgRateBitsPerSlot.
inline UeSchedulingState updateAvgRate(UeSchedulingState ue,
                                       std::int64_t servedBits,
                                       int timeConstantSlots) {
  if (timeConstantSlots < 1) {
    throw std::invalid_argument("updateAvgRate: time constant must be >= 1");
  }
  ue.avgRate += (static_cast<double>(servedBits) - ue.avgRate) /
                static_cast<double>(timeConstantSlots);
  if (ue.avgRate < kMinAvgRateBitsPerSlot) {
    ue.avgRate = kMinAvgRateBitsPerSlot;
  }
  return ue;
}

inline constexpr int kDefaultAvgRateTimeConstantSlots = 100;

enum class MetricKind { kMlwdf, kPf, kSumRate };

using MetricFn =
    std::function<double(const QosProfile&, const UeSchedulingState&,
                         std::int64_t)>;

inline MetricFn makeMetric(MetricKind kind) {
  switch (kind) {
    case MetricKind::kMlwdf:
      return [](const QosProfile& q, const UeSchedulingState& u,
                std::int64_t r) { return mlwdfWeight(q, u, r); };
    case MetricKind::kPf:
      return [](const QosProfile&, const UeSchedulingState& u,
                std::int64_t r) { return pfWeight(u, r); };
    case MetricKind::kSumRate:
      return [](const QosProfile&, const UeSchedulingState&,
                std::int64_t r) { return sumRateWeight(r); };
  }
  throw std::logic_error("makeMetric: unknown kind");
}

inline std::string metricName(MetricKind kind) {
  switch (kind) {
    case MetricKind::kMlwdf:
      return "mlwdf";
    case MetricKind::kPf:
      return "pf";
    case MetricKind::kSumRate:
      return "sum-rate";
  }
  throw std::logic_error("metricName: unknown kind");
}

inline MetricKind parseMetricKind(const std::string& name) {
  if (name == "mlwdf") return MetricKind::kMlwdf;
  if (name == "pf") return MetricKind::kPf;
  if (name == "sum-rate") return MetricKind::kSumRate;
  throw std::invalid_argument("unknown metric '" + name + "'");
}

}  // namespace fdra
