// Copyright 2026 The fdrasim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Slot-level downlink schedulers for contiguous (type-1) frequency-domain
// allocation, plus an RBG-bitmap baseline and an exhaustive oracle for small
// instances. All schedulers consume the same immutable SchedulerInput and
// report their work through OpCounters.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fdrasim/core.hpp"
#include "fdrasim/link.hpp"
#include "fdrasim/metrics.hpp"
#include "fdrasim/rng.hpp"

namespace fdra {

struct UeContext {
  int ueId = 0;
  QosProfile qos;
  UeSchedulingState state;
  ChannelReport report;
};

// Everything a scheduler may look at for one slot. Schedulers never mutate
// it; randomized tie-breaks draw from substreams of rngSeed only.
struct SchedulerInput {
  std::vector<UeContext> ues;
  BwpConfig bwp;
  CqiTable cqiTable;
  MetricFn metric = makeMetric(MetricKind::kMlwdf);
  EffMcsReducer effMcs = EffMcsReducer::kMedian;
  std::uint64_t rngSeed = 0;

  void validate() const {
    if (!bwp.valid()) {
      throw std::invalid_argument("SchedulerInput: invalid bandwidth part");
    }
    if (!metric) {
      throw std::invalid_argument("SchedulerInput: missing metric");
    }
    std::unordered_set<int> ids;
    for (const UeContext& ue : ues) {
      std::ostringstream os;
      os << "SchedulerInput: ue " << ue.ueId << ": ";
      if (!ids.insert(ue.ueId).second) {
        throw std::invalid_argument(os.str() + "duplicate id");
      }
      if (!ue.qos.valid()) {
        throw std::invalid_argument(os.str() + "invalid QoS profile");
      }
      if (ue.state.pendingBits < 1) {
        throw std::invalid_argument(os.str() + "no pending data");
      }
      if (!(ue.state.avgRate > 0.0)) {
        throw std::invalid_argument(os.str() + "non-positive avgRate");
      }
      if (!ue.report.validFor(bwp)) {
        throw std::invalid_argument(os.str() + "channel report does not match "
                                               "the bandwidth part");
      }
    }
  }
};

// Work counters: transport-block sizings, metric evaluations, and wideband
// RB-demand sizings. The unit costs the complexity comparison is made in.
struct OpCounters {
  std::int64_t tbsCalcs = 0;
  std::int64_t metricCalcs = 0;
  std::int64_t rbAmountCalcs = 0;

  OpCounters& operator+=(const OpCounters& o) {
    tbsCalcs += o.tbsCalcs;
    metricCalcs += o.metricCalcs;
    rbAmountCalcs += o.rbAmountCalcs;
    return *this;
  }
};

struct ScheduleResult {
  SlotDecision decision;
  OpCounters counters;
};

// Closed interval of still-free RBs. Every scheduler here keeps the free
// region contiguous, so one interval suffices.
struct RbInterval {
  int lo = 0;
  int hi = -1;

  bool empty() const { return lo > hi; }
  int size() const { return empty() ? 0 : hi - lo + 1; }
};

struct Expansion {
  ContiguousAllocation alloc;
  std::int64_t rateBits = 0;
  bool payloadMet = false;
};

// Accumulates RBs from the low edge of the interval until the summed per-RB
// rate reaches payloadBits or the interval (or maxRbs cap) is exhausted.
// Every accumulated RB costs one TBS computation.
template <typename RateFn>
Expansion expandFromStart(const RateFn& ratePerRbFn, RbInterval rbs,
                          std::int64_t payloadBits, OpCounters& counters,
                          int maxRbs = -1) {
  Expansion e;
  e.alloc = {rbs.lo, 0};
  if (rbs.empty()) return e;
  const int cap = maxRbs < 0 ? rbs.size() : std::min(maxRbs, rbs.size());
  for (int rb = rbs.lo; rb < rbs.lo + cap; ++rb) {
    e.rateBits += ratePerRbFn(rb);
    ++e.alloc.length;
    ++counters.tbsCalcs;
    if (e.rateBits >= payloadBits) {
      e.payloadMet = true;
      break;
    }
  }
  return e;
}

// Mirror image of expandFromStart, growing down from the high edge.
template <typename RateFn>
Expansion expandFromEnd(const RateFn& ratePerRbFn, RbInterval rbs,
                        std::int64_t payloadBits, OpCounters& counters,
                        int maxRbs = -1) {
  Expansion e;
  e.alloc = {rbs.hi, 0};
  if (rbs.empty()) {
    e.alloc.startRb = rbs.lo;
    return e;
  }
  const int cap = maxRbs < 0 ? rbs.size() : std::min(maxRbs, rbs.size());
  for (int rb = rbs.hi; rb > rbs.hi - cap; --rb) {
    e.rateBits += ratePerRbFn(rb);
    ++e.alloc.length;
    e.alloc.startRb = rb;
    ++counters.tbsCalcs;
    if (e.rateBits >= payloadBits) {
      e.payloadMet = true;
      break;
    }
  }
  return e;
}

namespace detail {

inline std::int64_t ueRbRate(const SchedulerInput& in, const UeContext& ue,
                             int rb) {
  return perRbRate(in.bwp, in.cqiTable, ue.report, rb);
}

inline std::vector<int> allocMcsList(const SchedulerInput& in,
                                     const UeContext& ue,
                                     const ContiguousAllocation& alloc) {
  std::vector<int> mcs;
  mcs.reserve(alloc.length);
  for (int rb = alloc.startRb; rb <= alloc.lastRb(); ++rb) {
    mcs.push_back(cqiToMcs(ue.report.sbCqi[in.bwp.rbgOf(rb)]));
  }
  return mcs;
}

inline DecisionEntry makeEntry(const SchedulerInput& in, const UeContext& ue,
                               const ContiguousAllocation& alloc,
                               std::int64_t scheduledBits) {
  DecisionEntry e;
  e.ueId = ue.ueId;
  e.alloc = alloc;
  e.riv = rivEncode(in.bwp, alloc);
  e.mcs = effectiveMcs(allocMcsList(in, ue, alloc), in.effMcs);
  e.rank = ue.report.wbRank;
  e.scheduledBits = scheduledBits;
  return e;
}

// Start-edge expansion plus, when wanted and winnable, an end-edge expansion
// capped at the start expansion's size. The end side is taken only when it
// meets the payload in strictly fewer RBs; a full-interval expansion covers
// the same RB set from both sides, so the cap loses nothing.
inline Expansion bestEdgeExpansion(
    const SchedulerInput& in, const UeContext& ue, RbInterval rbs,
    bool dualEnd, OpCounters& counters) {
  const auto rate = [&](int rb) { return ueRbRate(in, ue, rb); };
  Expansion start =
      expandFromStart(rate, rbs, ue.state.pendingBits, counters);
  if (dualEnd && start.payloadMet && start.alloc.length > 1) {
    Expansion end = expandFromEnd(rate, rbs, ue.state.pendingBits, counters,
                                  start.alloc.length);
    if (end.payloadMet && end.alloc.length < start.alloc.length) {
      return end;
    }
  }
  return start;
}

}  // namespace detail

// Joint selection scheduler: each round expands a candidate allocation for
// every unscheduled UE at the free interval's edges, evaluates the summed
// metric over the candidate, and grants the best one. With dualEnd the
// candidate may sit at either edge; otherwise it grows from the start edge
// only.
inline ScheduleResult jadeSchedule(const SchedulerInput& in,
                                   bool dualEnd = true) {
  in.validate();
  ScheduleResult result;
  RbInterval rbs{0, in.bwp.numRbs - 1};
  std::vector<std::size_t> active(in.ues.size());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;

  while (!active.empty() && !rbs.empty()) {
    std::size_t bestPos = 0;
    int bestUeId = 0;
    Expansion best;
    double bestMetric = 0.0;
    bool haveBest = false;
    for (std::size_t pos = 0; pos < active.size(); ++pos) {
      const UeContext& ue = in.ues[active[pos]];
      const Expansion cand =
          detail::bestEdgeExpansion(in, ue, rbs, dualEnd, result.counters);
      double metric = 0.0;
      for (int rb = cand.alloc.startRb; rb <= cand.alloc.lastRb(); ++rb) {
        metric += in.metric(ue.qos, ue.state, detail::ueRbRate(in, ue, rb));
        ++result.counters.metricCalcs;
      }
      if (!haveBest || metric > bestMetric ||
          (metric == bestMetric && ue.ueId < bestUeId)) {
        haveBest = true;
        bestPos = pos;
        bestUeId = ue.ueId;
        best = cand;
        bestMetric = metric;
      }
    }
    const UeContext& winner = in.ues[active[bestPos]];
    result.decision.entries.push_back(
        detail::makeEntry(in, winner, best.alloc, best.rateBits));
    if (best.alloc.startRb == rbs.lo) {
      rbs.lo += best.alloc.length;
    } else {
      rbs.hi -= best.alloc.length;
    }
    active.erase(active.begin() + bestPos);
  }
  return result;
}

namespace detail {

struct UrgencyInfo {
  double slackSec = 0.0;        // time left before the deadline
  double dropProb = 0.0;
  std::int64_t rbDemand = 0;    // RBs needed at the wideband rate
};

inline constexpr std::int64_t kInfiniteRbDemand =
    std::numeric_limits<std::int64_t>::max();

// Wideband RB demand of every UE, sized once per slot. A UE whose wideband
// rate is zero cannot be sized and is marked unschedulable for the slot.
inline std::vector<UrgencyInfo> computeUrgencyInfo(const SchedulerInput& in,
                                                   OpCounters& counters) {
  std::vector<UrgencyInfo> infos;
  infos.reserve(in.ues.size());
  for (const UeContext& ue : in.ues) {
    UrgencyInfo info;
    info.slackSec = ue.qos.delayThresholdSec - ue.state.holDelaySec;
    info.dropProb = ue.qos.acceptableDropProb;
    const int wb = widebandCqi(ue.report, in.effMcs);
    const std::int64_t oneRb =
        tbs(in.cqiTable, cqiToMcs(wb), ue.report.wbRank, 1);
    ++counters.tbsCalcs;
    info.rbDemand = oneRb > 0
                        ? (ue.state.pendingBits + oneRb - 1) / oneRb
                        : kInfiniteRbDemand;
    ++counters.rbAmountCalcs;
    infos.push_back(info);
  }
  return infos;
}

// Tightest slack, then strictest drop target, then smallest RB demand, then
// a seeded uniform draw. Returns a position into `active`.
inline std::size_t selectUrgentUe(const std::vector<UeContext>& ues,
                                  const std::vector<UrgencyInfo>& infos,
                                  const std::vector<std::size_t>& active,
                                  std::mt19937_64& tieRng) {
  std::vector<std::size_t> pool(active.size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;

  const auto narrow = [&](auto key) {
    double bestKey = key(pool[0]);
    for (std::size_t p : pool) bestKey = std::min(bestKey, key(p));
    std::vector<std::size_t> kept;
    for (std::size_t p : pool) {
      if (key(p) == bestKey) kept.push_back(p);
    }
    pool.swap(kept);
  };

  narrow([&](std::size_t p) { return infos[active[p]].slackSec; });
  if (pool.size() > 1) {
    narrow([&](std::size_t p) { return infos[active[p]].dropProb; });
  }
  if (pool.size() > 1) {
    narrow([&](std::size_t p) {
      return static_cast<double>(infos[active[p]].rbDemand);
    });
  }
  if (pool.size() > 1) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    return pool[pick(tieRng)];
  }
  (void)ues;
  return pool[0];
}

}  // namespace detail

// Deadline-cascade scheduler, start-edge variant: UEs are served strictly in
// urgency order, each taking RBs from the start of the free interval until
// its payload is met.
inline ScheduleResult daseSchedule(const SchedulerInput& in) {
  in.validate();
  ScheduleResult result;
  const std::vector<detail::UrgencyInfo> infos =
      detail::computeUrgencyInfo(in, result.counters);
  std::mt19937_64 tieRng(deriveSeed(in.rngSeed, kSchedulerStream));
  RbInterval rbs{0, in.bwp.numRbs - 1};
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < in.ues.size(); ++i) {
    if (infos[i].rbDemand != detail::kInfiniteRbDemand) active.push_back(i);
  }

  while (!active.empty() && !rbs.empty()) {
    const std::size_t pos =
        detail::selectUrgentUe(in.ues, infos, active, tieRng);
    const UeContext& ue = in.ues[active[pos]];
    const auto rate = [&](int rb) { return detail::ueRbRate(in, ue, rb); };
    const Expansion e =
        expandFromStart(rate, rbs, ue.state.pendingBits, result.counters);
    result.decision.entries.push_back(
        detail::makeEntry(in, ue, e.alloc, e.rateBits));
    rbs.lo += e.alloc.length;
    active.erase(active.begin() + pos);
  }
  return result;
}

// Deadline-cascade scheduler, dual-edge variant: same UE order as
// daseSchedule, but each UE may take its run from whichever edge of the free
// interval meets its payload in fewer RBs (start wins ties).
inline ScheduleResult dateSchedule(const SchedulerInput& in) {
  in.validate();
  ScheduleResult result;
  const std::vector<detail::UrgencyInfo> infos =
      detail::computeUrgencyInfo(in, result.counters);
  std::mt19937_64 tieRng(deriveSeed(in.rngSeed, kSchedulerStream));
  RbInterval rbs{0, in.bwp.numRbs - 1};
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < in.ues.size(); ++i) {
    if (infos[i].rbDemand != detail::kInfiniteRbDemand) active.push_back(i);
  }

  while (!active.empty() && !rbs.empty()) {
    const std::size_t pos =
        detail::selectUrgentUe(in.ues, infos, active, tieRng);
    const UeContext& ue = in.ues[active[pos]];
    const Expansion e = detail::bestEdgeExpansion(in, ue, rbs,
                                                  /*dualEnd=*/true,
                                                  result.counters);
    result.decision.entries.push_back(
        detail::makeEntry(in, ue, e.alloc, e.rateBits));
    if (e.alloc.startRb == rbs.lo) {
      rbs.lo += e.alloc.length;
    } else {
      rbs.hi -= e.alloc.length;
    }
    active.erase(active.begin() + pos);
  }
  return result;
}

// Window-growing baseline: every UE's allocation is a window seeded at its
// best still-free RB by metric; each step grants the single (UE, RB) pair
// with the highest metric among all seeds and window edges. Windows stay
// contiguous; a UE stops at its payload or when walled in.
inline ScheduleResult leapSchedule(const SchedulerInput& in) {
  in.validate();
  ScheduleResult result;
  const int numRbs = in.bwp.numRbs;
  const std::size_t numUes = in.ues.size();

  std::vector<std::vector<std::int64_t>> rate(numUes);
  std::vector<std::vector<double>> mu(numUes);
  std::vector<std::vector<int>> seedOrder(numUes);
  for (std::size_t k = 0; k < numUes; ++k) {
    const UeContext& ue = in.ues[k];
    rate[k].resize(numRbs);
    mu[k].resize(numRbs);
    for (int rb = 0; rb < numRbs; ++rb) {
      rate[k][rb] = detail::ueRbRate(in, ue, rb);
      mu[k][rb] = in.metric(ue.qos, ue.state, rate[k][rb]);
      ++result.counters.metricCalcs;
    }
    seedOrder[k].resize(numRbs);
    for (int rb = 0; rb < numRbs; ++rb) seedOrder[k][rb] = rb;
    std::stable_sort(seedOrder[k].begin(), seedOrder[k].end(),
                     [&](int a, int b) { return mu[k][a] > mu[k][b]; });
  }

  struct Window {
    int lo = -1;
    int hi = -1;
    std::int64_t rateBits = 0;
    bool seeded() const { return lo >= 0; }
  };
  std::vector<Window> window(numUes);
  std::vector<std::size_t> seedCursor(numUes, 0);
  std::vector<char> rbFree(numRbs, 1);
  std::vector<char> growing(numUes, 1);
  std::vector<std::size_t> grantOrder;

  for (;;) {
    bool haveBest = false;
    std::size_t bestUe = 0;
    int bestRb = -1;
    double bestMu = 0.0;
    const auto offer = [&](std::size_t k, int rb) {
      if (rb < 0 || rb >= numRbs || !rbFree[rb]) return;
      const double m = mu[k][rb];
      if (!haveBest || m > bestMu ||
          (m == bestMu &&
           (in.ues[k].ueId < in.ues[bestUe].ueId ||
            (in.ues[k].ueId == in.ues[bestUe].ueId && rb < bestRb)))) {
        haveBest = true;
        bestUe = k;
        bestRb = rb;
        bestMu = m;
      }
    };
    for (std::size_t k = 0; k < numUes; ++k) {
      if (!growing[k]) continue;
      if (!window[k].seeded()) {
        auto& cur = seedCursor[k];
        while (cur < seedOrder[k].size() && !rbFree[seedOrder[k][cur]]) ++cur;
        if (cur == seedOrder[k].size()) {
          growing[k] = 0;  // no free RB left to seed from
          continue;
        }
        offer(k, seedOrder[k][cur]);
      } else {
        const bool below = window[k].lo > 0 && rbFree[window[k].lo - 1];
        const bool above =
            window[k].hi + 1 < numRbs && rbFree[window[k].hi + 1];
        if (!below && !above) {
          growing[k] = 0;  // walled in, the window is final
          continue;
        }
        if (below) offer(k, window[k].lo - 1);
        if (above) offer(k, window[k].hi + 1);
      }
    }
    if (!haveBest) break;

    Window& w = window[bestUe];
    if (!w.seeded()) {
      w.lo = w.hi = bestRb;
      grantOrder.push_back(bestUe);
    } else if (bestRb < w.lo) {
      w.lo = bestRb;
    } else {
      w.hi = bestRb;
    }
    rbFree[bestRb] = 0;
    w.rateBits += rate[bestUe][bestRb];
    ++result.counters.tbsCalcs;
    if (w.rateBits >= in.ues[bestUe].state.pendingBits) {
      growing[bestUe] = 0;
    }
  }

  for (std::size_t k : grantOrder) {
    const Window& w = window[k];
    result.decision.entries.push_back(detail::makeEntry(
        in, in.ues[k], {w.lo, w.hi - w.lo + 1}, w.rateBits));
  }
  return result;
}

// Bitmap (type-0) baseline grant: a set of RB groups instead of one run.
struct RbgGrant {
  int ueId = 0;
  std::vector<int> rbgs;
  int mcs = 0;
  int rank = 1;
  std::int64_t scheduledBits = 0;
};

struct Type0Result {
  std::vector<RbgGrant> grants;
  OpCounters counters;
};

// RBG-bitmap baseline: repeatedly grant the (UE, free RBG) pair with the
// highest metric; a UE leaves once its cumulative rate covers its payload.
// Metrics are re-evaluated every iteration.
inline Type0Result type0Schedule(const SchedulerInput& in) {
  in.validate();
  Type0Result result;
  const int numRbgs = in.bwp.numRbgs();
  const std::size_t numUes = in.ues.size();

  std::vector<std::vector<std::int64_t>> rbgRate(numUes);
  for (std::size_t k = 0; k < numUes; ++k) {
    rbgRate[k].resize(numRbgs);
    for (int g = 0; g < numRbgs; ++g) {
      rbgRate[k][g] = tbs(in.cqiTable, cqiToMcs(in.ues[k].report.sbCqi[g]),
                          in.ues[k].report.wbRank, in.bwp.rbgLength(g));
      ++result.counters.tbsCalcs;
    }
  }

  std::vector<char> rbgFree(numRbgs, 1);
  std::vector<char> activeUe(numUes, 1);
  std::vector<std::int64_t> gotBits(numUes, 0);
  std::unordered_map<std::size_t, std::size_t> grantIndex;
  int freeLeft = numRbgs;
  std::size_t activeLeft = numUes;

  while (freeLeft > 0 && activeLeft > 0) {
    bool haveBest = false;
    std::size_t bestUe = 0;
    int bestRbg = -1;
    double bestMu = 0.0;
    for (std::size_t k = 0; k < numUes; ++k) {
      if (!activeUe[k]) continue;
      for (int g = 0; g < numRbgs; ++g) {
        if (!rbgFree[g]) continue;
        const double m =
            in.metric(in.ues[k].qos, in.ues[k].state, rbgRate[k][g]);
        ++result.counters.metricCalcs;
        if (!haveBest || m > bestMu ||
            (m == bestMu && (in.ues[k].ueId < in.ues[bestUe].ueId ||
                             (in.ues[k].ueId == in.ues[bestUe].ueId &&
                              g < bestRbg)))) {
          haveBest = true;
          bestUe = k;
          bestRbg = g;
          bestMu = m;
        }
      }
    }
    if (!haveBest) break;

    auto [it, inserted] = grantIndex.try_emplace(bestUe, result.grants.size());
    if (inserted) {
      RbgGrant g;
      g.ueId = in.ues[bestUe].ueId;
      g.rank = in.ues[bestUe].report.wbRank;
      result.grants.push_back(g);
    }
    RbgGrant& grant = result.grants[it->second];
    grant.rbgs.push_back(bestRbg);
    grant.scheduledBits += rbgRate[bestUe][bestRbg];
    gotBits[bestUe] += rbgRate[bestUe][bestRbg];
    rbgFree[bestRbg] = 0;
    --freeLeft;
    if (gotBits[bestUe] >= in.ues[bestUe].state.pendingBits) {
      activeUe[bestUe] = 0;
      --activeLeft;
    }
  }

  for (RbgGrant& g : result.grants) {
    std::sort(g.rbgs.begin(), g.rbgs.end());
    std::vector<int> mcs;
    mcs.reserve(g.rbgs.size());
    const UeContext* ue = nullptr;
    for (const UeContext& u : in.ues) {
      if (u.ueId == g.ueId) ue = &u;
    }
    for (int rbg : g.rbgs) mcs.push_back(cqiToMcs(ue->report.sbCqi[rbg]));
    g.mcs = effectiveMcs(mcs, in.effMcs);
  }
  return result;
}

inline constexpr int kOracleMaxUes = 4;
inline constexpr int kOracleMaxRbs = 12;

// Exhaustive search over all assignments of disjoint contiguous runs
// (including "nothing") to each UE, maximizing the summed metric. Within a
// run, RBs past the payload crossing score zero, so over-long runs never
// win. The first maximizer in UE-id-major, (start, length)-lexicographic
// enumeration order is returned, which pins the result among ties. Guarded
// to tiny instances.
inline SlotDecision bruteForceType1(const SchedulerInput& in,
                                    int maxUes = kOracleMaxUes,
                                    int maxRbs = kOracleMaxRbs) {
  in.validate();
  const int numRbs = in.bwp.numRbs;
  const int numUes = static_cast<int>(in.ues.size());
  if (numUes > maxUes || numRbs > maxRbs) {
    std::ostringstream os;
    os << "bruteForceType1: instance " << numUes << " UEs x " << numRbs
       << " RBs exceeds the guard (" << maxUes << " x " << maxRbs << ")";
    throw std::invalid_argument(os.str());
  }

  std::vector<std::size_t> order(in.ues.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return in.ues[a].ueId < in.ues[b].ueId;
  });

  // Objective contribution of every (start, length) range per UE. RBs past
  // the payload crossing add nothing, so a longer-than-needed range ties with
  // the exact one and the lexicographic order prefers the shorter.
  std::vector<std::vector<std::vector<double>>> rangeMu(order.size());
  std::vector<std::vector<std::int64_t>> ratePrefix(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const UeContext& ue = in.ues[order[i]];
    ratePrefix[i].assign(numRbs + 1, 0);
    for (int rb = 0; rb < numRbs; ++rb) {
      ratePrefix[i][rb + 1] =
          ratePrefix[i][rb] + detail::ueRbRate(in, ue, rb);
    }
    rangeMu[i].assign(numRbs, {});
    for (int s = 0; s < numRbs; ++s) {
      rangeMu[i][s].assign(numRbs - s + 1, 0.0);
      std::int64_t cum = 0;
      bool met = false;
      for (int l = 1; s + l <= numRbs; ++l) {
        rangeMu[i][s][l] = rangeMu[i][s][l - 1];
        if (!met) {
          const std::int64_t r = detail::ueRbRate(in, ue, s + l - 1);
          rangeMu[i][s][l] += in.metric(ue.qos, ue.state, r);
          cum += r;
          met = cum >= ue.state.pendingBits;
        }
      }
    }
  }

  std::vector<std::optional<ContiguousAllocation>> current(order.size());
  std::vector<std::optional<ContiguousAllocation>> best(order.size());
  double bestObjective = -std::numeric_limits<double>::infinity();

  const auto recurse = [&](auto&& self, std::size_t depth,
                           std::uint32_t freeMask, double acc) -> void {
    if (depth == order.size()) {
      if (acc > bestObjective) {
        bestObjective = acc;
        best = current;
      }
      return;
    }
    current[depth] = std::nullopt;
    self(self, depth + 1, freeMask, acc);
    for (int s = 0; s < numRbs; ++s) {
      for (int l = 1; s + l <= numRbs; ++l) {
        const std::uint32_t mask = ((1u << l) - 1u) << s;
        if ((mask & freeMask) != mask) continue;
        current[depth] = ContiguousAllocation{s, l};
        self(self, depth + 1, freeMask & ~mask, acc + rangeMu[depth][s][l]);
      }
    }
    current[depth] = std::nullopt;
  };
  const std::uint32_t fullMask =
      numRbs == 32 ? 0xffffffffu : ((1u << numRbs) - 1u);
  recurse(recurse, 0, fullMask, 0.0);

  SlotDecision decision;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!best[i].has_value()) continue;
    const UeContext& ue = in.ues[order[i]];
    const ContiguousAllocation alloc = *best[i];
    const std::int64_t bits =
        ratePrefix[i][alloc.startRb + alloc.length] - ratePrefix[i][alloc.startRb];
    decision.entries.push_back(detail::makeEntry(
        in, ue, alloc,
        std::min(bits, ue.state.pendingBits)));
  }
  return decision;
}

// Summed metric of a decision under the given input; the quantity the oracle
// maximizes. Within each entry RBs are counted left to right only until the
// cumulative rate reaches the UE's payload, matching the oracle's scoring.
inline double decisionObjective(const SchedulerInput& in,
                                const SlotDecision& decision) {
  std::unordered_map<int, const UeContext*> byId;
  for (const UeContext& ue : in.ues) byId[ue.ueId] = &ue;
  double total = 0.0;
  for (const DecisionEntry& e : decision.entries) {
    const auto it = byId.find(e.ueId);
    if (it == byId.end()) {
      throw std::invalid_argument("decisionObjective: entry for unknown ue");
    }
    const UeContext& ue = *it->second;
    std::int64_t cum = 0;
    for (int rb = e.alloc.startRb; rb <= e.alloc.lastRb(); ++rb) {
      const std::int64_t r = detail::ueRbRate(in, ue, rb);
      total += in.metric(ue.qos, ue.state, r);
      cum += r;
      if (cum >= ue.state.pendingBits) break;
    }
  }
  return total;
}

enum class Algorithm {
  kJade,
  kJadeSingleEnd,
  kDase,
  kDate,
  kLeap,
  kType0,
  kOracle,
};

inline constexpr std::array<Algorithm, 7> kAllAlgorithms = {
    Algorithm::kJade, Algorithm::kJadeSingleEnd, Algorithm::kDase,
    Algorithm::kDate, Algorithm::kLeap,          Algorithm::kType0,
    Algorithm::kOracle,
};

inline std::string algorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::kJade:
      return "jade";
    case Algorithm::kJadeSingleEnd:
      return "jade-single-end";
    case Algorithm::kDase:
      return "dase";
    case Algorithm::kDate:
      return "date";
    case Algorithm::kLeap:
      return "leap";
    case Algorithm::kType0:
      return "type0";
    case Algorithm::kOracle:
      return "oracle";
  }
  throw std::logic_error("algorithmName: unknown algorithm");
}

inline Algorithm parseAlgorithm(const std::string& name) {
  for (Algorithm a : kAllAlgorithms) {
    if (algorithmName(a) == name) return a;
  }
  std::ostringstream os;
  os << "unknown algorithm '" << name << "', expected one of";
  for (Algorithm a : kAllAlgorithms) os << " " << algorithmName(a);
  throw std::invalid_argument(os.str());
}

// Uniform single-slot entry point. Type-1 algorithms fill `decision`,
// the bitmap baseline fills `rbgGrants`.
struct ScheduleOutcome {
  std::optional<SlotDecision> decision;
  std::optional<std::vector<RbgGrant>> rbgGrants;
  OpCounters counters;

  // (ueId, scheduledBits) pairs in ascending ueId order.
  std::vector<std::pair<int, std::int64_t>> perUeBits() const {
    std::vector<std::pair<int, std::int64_t>> out;
    if (decision.has_value()) {
      for (const DecisionEntry& e : decision->entries) {
        out.emplace_back(e.ueId, e.scheduledBits);
      }
    }
    if (rbgGrants.has_value()) {
      for (const RbgGrant& g : *rbgGrants) {
        out.emplace_back(g.ueId, g.scheduledBits);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline ScheduleOutcome scheduleOnce(Algorithm algorithm,
                                    const SchedulerInput& in) {
  ScheduleOutcome out;
  switch (algorithm) {
    case Algorithm::kJade: {
      ScheduleResult r = jadeSchedule(in, /*dualEnd=*/true);
      out.decision = std::move(r.decision);
      out.counters = r.counters;
      return out;
    }
    case Algorithm::kJadeSingleEnd: {
      ScheduleResult r = jadeSchedule(in, /*dualEnd=*/false);
      out.decision = std::move(r.decision);
      out.counters = r.counters;
      return out;
    }
    case Algorithm::kDase: {
      ScheduleResult r = daseSchedule(in);
      out.decision = std::move(r.decision);
      out.counters = r.counters;
      return out;
    }
    case Algorithm::kDate: {
      ScheduleResult r = dateSchedule(in);
      out.decision = std::move(r.decision);
      out.counters = r.counters;
      return out;
    }
    case Algorithm::kLeap: {
      ScheduleResult r = leapSchedule(in);
      out.decision = std::move(r.decision);
      out.counters = r.counters;
      return out;
    }
    case Algorithm::kType0: {
      Type0Result r = type0Schedule(in);
      out.rbgGrants = std::move(r.grants);
      out.counters = r.counters;
      return out;
    }
    case Algorithm::kOracle: {
      out.decision = bruteForceType1(in);
      return out;
    }
  }
  throw std::logic_error("scheduleOnce: unknown algorithm");
}

}  // namespace fdra
