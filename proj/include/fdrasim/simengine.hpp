// Copyright 2026 The fdrasim Authors
// SPDX-License-Identifier: Apache-2.0
//
// The slot-driven simulation engine: a Gauss-Markov subband channel, per-UE
// traffic queues, delayed CSI, one scheduler invocation per slot, and KPI
// aggregation over seeds. Fully deterministic for a given config and seed.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdrasim/core.hpp"
#include "fdrasim/link.hpp"
#include "fdrasim/metrics.hpp"
#include "fdrasim/rng.hpp"
#include "fdrasim/schedulers.hpp"
#include "fdrasim/traffic.hpp"

namespace fdra {

struct RankPolicy {
  enum class Kind { kFixed, kRandomWalk };
  Kind kind = Kind::kFixed;
  int fixedRank = 1;
  double changeProb = 0.01;  // per slot, random-walk only
  int maxRank = 4;
};

// First-order Gauss-Markov channel parameters. rhoTime is the slot-to-slot
// correlation of the latent fading state, rhoFreq the cross-subband
// correlation of its innovations.
struct ChannelParams {
  double rhoTime = 0.98;
  double rhoFreq = 0.5;
  double cqiScale = 2.0;
  double meanCqiMin = 5.0;
  double meanCqiMax = 12.0;
  RankPolicy rank;

  bool valid() const {
    return rhoTime >= 0.0 && rhoTime <= 1.0 && rhoFreq >= 0.0 &&
           rhoFreq <= 1.0 && cqiScale >= 0.0 && meanCqiMin <= meanCqiMax &&
           rank.fixedRank >= 1 && rank.maxRank >= rank.fixedRank &&
           rank.changeProb >= 0.0 && rank.changeProb <= 1.0;
  }
};

// Per-UE, per-subband fading with its own deterministic substream per UE.
// step() advances every UE by one slot; reports are stamped with the slot
// they were generated in.
class ChannelProcess {
 public:
  ChannelProcess(const BwpConfig& bwp, int numUes, const ChannelParams& params,
                 std::uint64_t seed)
      : bwp_(bwp), params_(params) {
    if (!params.valid()) {
      throw std::invalid_argument("ChannelProcess: invalid parameters");
    }
    const int numSubbands = bwp.numRbgs();
    ues_.resize(numUes);
    for (int k = 0; k < numUes; ++k) {
      UeChannel& ue = ues_[k];
      ue.rng.seed(deriveSeed(seed, kChannelStream, static_cast<std::uint64_t>(k)));
      ue.meanCqi = std::uniform_real_distribution<double>(
          params.meanCqiMin, params.meanCqiMax)(ue.rng);
      // Stationary start with the same cross-subband structure as the
      // innovations.
      const double shared = gauss(ue.rng);
      ue.latent.resize(numSubbands);
      for (double& x : ue.latent) {
        x = std::sqrt(params.rhoFreq) * shared +
            std::sqrt(1.0 - params.rhoFreq) * gauss(ue.rng);
      }
      ue.rank = params.rank.kind == RankPolicy::Kind::kFixed
                    ? params.rank.fixedRank
                    : std::min(params.rank.fixedRank, params.rank.maxRank);
    }
  }

  void step() {
    const double keep = params_.rhoTime;
    const double fresh = std::sqrt(1.0 - keep * keep);
    for (UeChannel& ue : ues_) {
      const double shared = gauss(ue.rng);
      for (double& x : ue.latent) {
        const double innovation = std::sqrt(params_.rhoFreq) * shared +
                                  std::sqrt(1.0 - params_.rhoFreq) *
                                      gauss(ue.rng);
        x = keep * x + fresh * innovation;
      }
      if (params_.rank.kind == RankPolicy::Kind::kRandomWalk) {
        const double u = std::uniform_real_distribution<double>(0.0, 1.0)(ue.rng);
        if (u < params_.rank.changeProb) {
          ue.rank = std::uniform_int_distribution<int>(
              1, params_.rank.maxRank)(ue.rng);
        }
      }
    }
    ++slot_;
  }

  std::int64_t currentSlot() const { return slot_; }

  ChannelReport report(int ue) const {
    const UeChannel& u = ues_.at(ue);
    ChannelReport r;
    r.sbCqi.reserve(u.latent.size());
    for (double x : u.latent) {
      const long cqi = std::lround(u.meanCqi + params_.cqiScale * x);
      r.sbCqi.push_back(static_cast<int>(std::clamp(cqi, 0L, 15L)));
    }
    r.wbRank = u.rank;
    r.generatedAtSlot = slot_;
    return r;
  }

  // Observability hooks for statistical tests.
  double latent(int ue, int subband) const {
    return ues_.at(ue).latent.at(subband);
  }
  double meanCqi(int ue) const { return ues_.at(ue).meanCqi; }

 private:
  struct UeChannel {
    std::mt19937_64 rng;
    double meanCqi = 0.0;
    std::vector<double> latent;
    int rank = 1;
  };

  static double gauss(std::mt19937_64& rng) {
    return std::normal_distribution<double>(0.0, 1.0)(rng);
  }

  BwpConfig bwp_;
  ChannelParams params_;
  std::vector<UeChannel> ues_;
  std::int64_t slot_ = -1;
};

class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& what)
      : std::runtime_error(what) {}
};

// Engine-level configuration of one simulation (one algorithm, one UE
// population, many seeds).
struct SimConfig {
  BwpConfig bwp;
  CqiTable cqiTable;
  ChannelParams channel;
  Algorithm algorithm = Algorithm::kJade;
  MetricKind metric = MetricKind::kMlwdf;
  EffMcsReducer effMcs = EffMcsReducer::kMedian;
  bool payloadWholeQueue = true;
  ArrivalProcess arrivalProcess = ArrivalProcess::kPoisson;
  std::vector<TrafficType> ueTypes;     // one entry per UE, index is the id
  std::vector<QosProfile> ueProfiles;   // parallel to ueTypes
  std::int64_t slotsPerSeed = 1200;
  int feedbackDelaySlots = 1;
  int avgRateTimeConstantSlots = kDefaultAvgRateTimeConstantSlots;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

  // Test/tracing hook, called with every input handed to the scheduler.
  std::function<void(std::int64_t, const SchedulerInput&)> inputObserver;

  void validate() const {
    if (!bwp.valid()) {
      throw std::invalid_argument("SimConfig: invalid bandwidth part");
    }
    if (!channel.valid()) {
      throw std::invalid_argument("SimConfig: invalid channel parameters");
    }
    if (ueTypes.size() != ueProfiles.size()) {
      throw std::invalid_argument(
          "SimConfig: ueTypes and ueProfiles must be parallel");
    }
    for (const QosProfile& q : ueProfiles) {
      if (!q.valid()) {
        throw std::invalid_argument("SimConfig: invalid UE profile");
      }
    }
    if (slotsPerSeed < 0) {
      throw std::invalid_argument("SimConfig: negative slot count");
    }
    if (feedbackDelaySlots < 0) {
      throw std::invalid_argument("SimConfig: negative feedback delay");
    }
    if (avgRateTimeConstantSlots < 1) {
      throw std::invalid_argument("SimConfig: avg-rate time constant < 1");
    }
    if (seeds.empty()) {
      throw std::invalid_argument("SimConfig: no seeds");
    }
    if (algorithm == Algorithm::kOracle &&
        (static_cast<int>(ueTypes.size()) > kOracleMaxUes ||
         bwp.numRbs > kOracleMaxRbs)) {
      std::ostringstream os;
      os << "SimConfig: the oracle is limited to " << kOracleMaxUes
         << " UEs and " << kOracleMaxRbs << " RBs, got " << ueTypes.size()
         << " UEs and " << bwp.numRbs << " RBs";
      throw std::invalid_argument(os.str());
    }
  }
};

// Round-robin assignment of the traffic mix across numUes UEs, with QoS
// profiles resolved from the presets.
inline void assignTrafficMix(SimConfig& cfg, int numUes,
                             const std::vector<TrafficType>& mix) {
  if (numUes < 1 || mix.empty()) {
    throw std::invalid_argument("assignTrafficMix: empty population or mix");
  }
  cfg.ueTypes.clear();
  cfg.ueProfiles.clear();
  for (int k = 0; k < numUes; ++k) {
    const TrafficType t = mix[static_cast<std::size_t>(k) % mix.size()];
    cfg.ueTypes.push_back(t);
    cfg.ueProfiles.push_back(trafficPreset(t));
  }
}

struct KpiBucket {
  std::int64_t arrivedPackets = 0;
  std::int64_t deliveredPackets = 0;
  std::int64_t droppedPackets = 0;
  std::int64_t queuedPackets = 0;  // still in queue at the end of the run
  std::int64_t deliveredBits = 0;
  double holDelaySumSec = 0.0;
  std::int64_t holDelaySamples = 0;

  KpiBucket& operator+=(const KpiBucket& o) {
    arrivedPackets += o.arrivedPackets;
    deliveredPackets += o.deliveredPackets;
    droppedPackets += o.droppedPackets;
    queuedPackets += o.queuedPackets;
    deliveredBits += o.deliveredBits;
    holDelaySumSec += o.holDelaySumSec;
    holDelaySamples += o.holDelaySamples;
    return *this;
  }

  double throughputBps(std::int64_t slots, double slotDurationSec) const {
    const double seconds = static_cast<double>(slots) * slotDurationSec;
    return seconds > 0.0 ? static_cast<double>(deliveredBits) / seconds : 0.0;
  }
  double lossRate() const {
    return arrivedPackets > 0 ? static_cast<double>(droppedPackets) /
                                    static_cast<double>(arrivedPackets)
                              : 0.0;
  }
  double meanHolDelaySec() const {
    return holDelaySamples > 0 ? holDelaySumSec /
                                     static_cast<double>(holDelaySamples)
                               : 0.0;
  }
};

struct SeedRunResult {
  std::uint64_t seed = 0;
  std::int64_t slots = 0;
  std::map<TrafficType, KpiBucket> perType;
  KpiBucket aggregate;
  OpCounters counters;
};

// One full run of one seed. Violating decisions abort the run: the engine
// refuses to apply physically impossible grants.
inline SeedRunResult runSeed(const SimConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const int numUes = static_cast<int>(cfg.ueTypes.size());
  const double slotDur = cfg.bwp.slotDurationSec;

  SeedRunResult result;
  result.seed = seed;
  result.slots = cfg.slotsPerSeed;
  for (TrafficType t : cfg.ueTypes) result.perType[t];  // materialize buckets

  ChannelProcess channel(cfg.bwp, numUes, cfg.channel, seed);
  std::vector<std::mt19937_64> trafficRng;
  trafficRng.reserve(numUes);
  for (int k = 0; k < numUes; ++k) {
    trafficRng.emplace_back(
        deriveSeed(seed, kTrafficStream, static_cast<std::uint64_t>(k)));
  }
  std::vector<UeQueue> queues(numUes);
  std::vector<UeSchedulingState> states(numUes);

  // CSI ring buffer: the scheduler at slot t sees the report generated at
  // slot t - feedbackDelaySlots.
  const int ringSize = cfg.feedbackDelaySlots + 1;
  std::vector<std::vector<ChannelReport>> csiRing(
      ringSize, std::vector<ChannelReport>(numUes));

  std::vector<std::int64_t> grantBits(numUes, 0);
  for (std::int64_t slot = 0; slot < cfg.slotsPerSeed; ++slot) {
    channel.step();
    for (int k = 0; k < numUes; ++k) {
      csiRing[slot % ringSize][k] = channel.report(k);
    }

    for (int k = 0; k < numUes; ++k) {
      for (Packet& p : generateArrivals(cfg.ueProfiles[k], slotDur, slot,
                                        trafficRng[k], cfg.arrivalProcess)) {
        queues[k].push(p);
      }
      queues[k].dropExpired(cfg.ueProfiles[k], slotDur, slot);
      KpiBucket& bucket = result.perType[cfg.ueTypes[k]];
      bucket.holDelaySumSec += queues[k].holDelaySec(slot, slotDur);
      ++bucket.holDelaySamples;
    }

    std::fill(grantBits.begin(), grantBits.end(), 0);
    // CSI needs feedbackDelaySlots slots of history; earlier slots have
    // nothing causally usable, so the scheduler is not invoked.
    if (slot >= cfg.feedbackDelaySlots) {
      SchedulerInput input;
      input.bwp = cfg.bwp;
      input.cqiTable = cfg.cqiTable;
      input.metric = makeMetric(cfg.metric);
      input.effMcs = cfg.effMcs;
      input.rngSeed = deriveSeed(seed, kSchedulerStream,
                                 static_cast<std::uint64_t>(slot));
      const int reportIdx =
          static_cast<int>((slot - cfg.feedbackDelaySlots) % ringSize);
      for (int k = 0; k < numUes; ++k) {
        const std::int64_t pending =
            queues[k].pendingBits(cfg.payloadWholeQueue);
        if (pending < 1) continue;
        UeContext ue;
        ue.ueId = k;
        ue.qos = cfg.ueProfiles[k];
        ue.state.holDelaySec = queues[k].holDelaySec(slot, slotDur);
        ue.state.avgRate = states[k].avgRate;
        ue.state.pendingBits = pending;
        ue.report = csiRing[reportIdx][k];
        input.ues.push_back(std::move(ue));
      }
      if (!input.ues.empty()) {
        if (cfg.inputObserver) cfg.inputObserver(slot, input);
        const ScheduleOutcome outcome = scheduleOnce(cfg.algorithm, input);
        if (outcome.decision.has_value()) {
          const ValidationResult v =
              validateDecision(cfg.bwp, *outcome.decision);
          if (!v.ok()) {
            std::ostringstream os;
            os << "slot " << slot << ": scheduler '"
               << algorithmName(cfg.algorithm)
               << "' produced an invalid decision: "
               << v.violations.front().detail;
            throw SimulationError(os.str());
          }
        }
        result.counters += outcome.counters;
        for (const auto& [ueId, bits] : outcome.perUeBits()) {
          grantBits[ueId] += bits;
        }
      }
    }

    for (int k = 0; k < numUes; ++k) {
      if (grantBits[k] > 0) queues[k].applyGrant(grantBits[k]);
      states[k] = updateAvgRate(states[k], grantBits[k],
                                cfg.avgRateTimeConstantSlots);
    }
  }

  for (int k = 0; k < numUes; ++k) {
    KpiBucket& bucket = result.perType[cfg.ueTypes[k]];
    const QueueStats& s = queues[k].stats();
    bucket.arrivedPackets += s.arrivedPackets;
    bucket.deliveredPackets += s.deliveredPackets;
    bucket.droppedPackets += s.droppedPackets;
    bucket.deliveredBits += s.deliveredBits;
    bucket.queuedPackets += static_cast<std::int64_t>(queues[k].packetCount());
  }
  for (const auto& [type, bucket] : result.perType) {
    result.aggregate += bucket;
  }
  return result;
}

struct KpiStat {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation across seeds
};

inline KpiStat statOf(const std::vector<double>& xs) {
  KpiStat s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(var / static_cast<double>(xs.size()));
  return s;
}

struct KpiSummary {
  KpiStat throughputBps;
  KpiStat lossRate;
  KpiStat meanHolDelaySec;
};

struct KpiReport {
  Algorithm algorithm = Algorithm::kJade;
  int numUes = 0;
  std::int64_t slotsPerSeed = 0;
  std::vector<std::uint64_t> seeds;
  std::map<TrafficType, KpiSummary> perType;
  KpiSummary aggregate;
  KpiStat tbsCalcs;
  KpiStat metricCalcs;
  KpiStat rbAmountCalcs;
  std::vector<SeedRunResult> seedResults;
};

// Runs every seed in order and aggregates mean/stddev per KPI. Seeds are
// independent; the order in `seeds` fixes the report layout only.
inline KpiReport runSimulation(const SimConfig& cfg) {
  cfg.validate();
  KpiReport report;
  report.algorithm = cfg.algorithm;
  report.numUes = static_cast<int>(cfg.ueTypes.size());
  report.slotsPerSeed = cfg.slotsPerSeed;
  report.seeds = cfg.seeds;
  for (std::uint64_t seed : cfg.seeds) {
    report.seedResults.push_back(runSeed(cfg, seed));
  }

  const double slotDur = cfg.bwp.slotDurationSec;
  const auto summarize = [&](auto bucketOf) {
    KpiSummary s;
    std::vector<double> tp, loss, delay;
    for (const SeedRunResult& r : report.seedResults) {
      const KpiBucket& b = bucketOf(r);
      tp.push_back(b.throughputBps(r.slots, slotDur));
      loss.push_back(b.lossRate());
      delay.push_back(b.meanHolDelaySec());
    }
    s.throughputBps = statOf(tp);
    s.lossRate = statOf(loss);
    s.meanHolDelaySec = statOf(delay);
    return s;
  };

  report.aggregate =
      summarize([](const SeedRunResult& r) -> const KpiBucket& {
        return r.aggregate;
      });
  std::set<TrafficType> types(cfg.ueTypes.begin(), cfg.ueTypes.end());
  for (TrafficType t : types) {
    report.perType[t] = summarize(
        [t](const SeedRunResult& r) -> const KpiBucket& {
          return r.perType.at(t);
        });
  }
  std::vector<double> tbs, metric, rbAmount;
  for (const SeedRunResult& r : report.seedResults) {
    tbs.push_back(static_cast<double>(r.counters.tbsCalcs));
    metric.push_back(static_cast<double>(r.counters.metricCalcs));
    rbAmount.push_back(static_cast<double>(r.counters.rbAmountCalcs));
  }
  report.tbsCalcs = statOf(tbs);
  report.metricCalcs = statOf(metric);
  report.rbAmountCalcs = statOf(rbAmount);
  return report;
}

}  // namespace fdra
