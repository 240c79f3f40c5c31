// Copyright 2026 The fdrasim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Link adaptation: CQI reports, the spectral-efficiency table, effective-MCS
// reduction over a subband list, and transport block sizing.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fdrasim/core.hpp"

namespace fdra {

// Resource elements usable for data per RB per slot.
inline constexpr int kResourceElementsPerRb = 144;
inline constexpr int kNumCqiLevels = 16;

// Spectral efficiency per CQI/MCS index. Index 0 means "out of range", its
// efficiency is 0 and any TBS computed from it is 0.
class CqiTable {
 public:
  CqiTable() : se_(defaultEfficiencies()) {}

  // Indices 1..15; index 0 is implicitly 0. Values must be positive and
  // strictly increasing.
  static CqiTable fromEfficiencies(std::span<const double> values) {
    if (values.size() != kNumCqiLevels - 1) {
      std::ostringstream os;
      os << "CqiTable: expected " << kNumCqiLevels - 1 << " efficiencies, got "
         << values.size();
      throw std::invalid_argument(os.str());
    }
    std::array<double, kNumCqiLevels> se{};
    for (int i = 1; i < kNumCqiLevels; ++i) {
      const double v = values[i - 1];
      if (!(v > 0.0) || (i > 1 && !(v > se[i - 1]))) {
        std::ostringstream os;
        os << "CqiTable: efficiencies must be positive and strictly "
              "increasing, entry "
           << i - 1 << " is " << v;
        throw std::invalid_argument(os.str());
      }
      se[i] = v;
    }
    CqiTable t;
    t.se_ = se;
    return t;
  }

  double efficiency(int index) const {
    if (index < 0 || index >= kNumCqiLevels) {
      std::ostringstream os;
      os << "CqiTable: index " << index << " outside 0.." << kNumCqiLevels - 1;
      throw std::out_of_range(os.str());
    }
    return se_[index];
  }

 private:
  static std::array<double, kNumCqiLevels> defaultEfficiencies() {
    return {0.0,  0.15, 0.23, 0.38, 0.60, 0.88, 1.18, 1.48,
            1.91, 2.41, 2.73, 3.32, 3.90, 4.52, 5.12, 5.55};
  }
  std::array<double, kNumCqiLevels> se_;
};

// The CQI and MCS index spaces coincide here; the named conversions keep the
// direction of each mapping visible at call sites and range-check once.
inline int cqiToMcs(int cqi) {
  if (cqi < 0 || cqi >= kNumCqiLevels) {
    std::ostringstream os;
    os << "cqiToMcs: CQI " << cqi << " outside 0.." << kNumCqiLevels - 1;
    throw std::out_of_range(os.str());
  }
  return cqi;
}

inline int mcsToCqi(int mcs) {
  if (mcs < 0 || mcs >= kNumCqiLevels) {
    std::ostringstream os;
    os << "mcsToCqi: MCS " << mcs << " outside 0.." << kNumCqiLevels - 1;
    throw std::out_of_range(os.str());
  }
  return mcs;
}

enum class EffMcsReducer { kMedian, kMeanFloor, kMax, kMin };

// Reduces the per-subband MCS list of an allocation to the single MCS the
// transport block is built with. Median is the lower median.
inline int effectiveMcs(std::span<const int> mcs,
                        EffMcsReducer reducer = EffMcsReducer::kMedian) {
  if (mcs.empty()) {
    throw std::invalid_argument("effectiveMcs: empty MCS list");
  }
  switch (reducer) {
    case EffMcsReducer::kMedian: {
      std::vector<int> v(mcs.begin(), mcs.end());
      const auto mid = v.begin() + (v.size() - 1) / 2;
      std::nth_element(v.begin(), mid, v.end());
      return *mid;
    }
    case EffMcsReducer::kMeanFloor: {
      std::int64_t sum = 0;
      for (int m : mcs) sum += m;
      return static_cast<int>(sum / static_cast<std::int64_t>(mcs.size()));
    }
    case EffMcsReducer::kMax:
      return *std::max_element(mcs.begin(), mcs.end());
    case EffMcsReducer::kMin:
      return *std::min_element(mcs.begin(), mcs.end());
  }
  throw std::logic_error("effectiveMcs: unknown reducer");
}

// Transport block size in bits for nRb RBs at the given MCS and rank.
inline std::int64_t tbs(const CqiTable& table, int mcs, int rank, int nRb) {
  if (mcs < 0 || mcs >= kNumCqiLevels) {
    throw std::out_of_range("tbs: MCS outside 0..15");
  }
  if (rank < 1) {
    throw std::invalid_argument("tbs: rank must be >= 1");
  }
  if (nRb < 0) {
    throw std::invalid_argument("tbs: negative RB count");
  }
  if (mcs == 0 || nRb == 0) return 0;
  const double bitsPerLayer =
      table.efficiency(mcs) * kResourceElementsPerRb * nRb;
  return static_cast<std::int64_t>(std::floor(bitsPerLayer)) * rank;
}

// Channel state as the scheduler sees it: one CQI per RB group plus a
// wideband rank, stamped with the slot the measurement was taken in.
struct ChannelReport {
  std::vector<int> sbCqi;
  int wbRank = 1;
  std::int64_t generatedAtSlot = 0;

  bool validFor(const BwpConfig& bwp) const {
    if (static_cast<int>(sbCqi.size()) != bwp.numRbgs() || wbRank < 1) {
      return false;
    }
    for (int c : sbCqi) {
      if (c < 0 || c >= kNumCqiLevels) return false;
    }
    return true;
  }
};

// Achievable rate of a single RB under the report's subband CQI and rank.
inline std::int64_t perRbRate(const BwpConfig& bwp, const CqiTable& table,
                              const ChannelReport& report, int rb) {
  if (rb < 0 || rb >= bwp.numRbs) {
    std::ostringstream os;
    os << "perRbRate: RB " << rb << " outside 0.." << bwp.numRbs - 1;
    throw std::out_of_range(os.str());
  }
  const int rbg = bwp.rbgOf(rb);
  if (rbg >= static_cast<int>(report.sbCqi.size())) {
    throw std::out_of_range("perRbRate: report has too few subbands");
  }
  return tbs(table, cqiToMcs(report.sbCqi[rbg]), report.wbRank, 1);
}

// Single CQI summarizing the whole band, used to size a UE's RB demand
// before any RBs are assigned.
inline int widebandCqi(const ChannelReport& report,
                       EffMcsReducer reducer = EffMcsReducer::kMedian) {
  std::vector<int> mcs;
  mcs.reserve(report.sbCqi.size());
  for (int cqi : report.sbCqi) mcs.push_back(cqiToMcs(cqi));
  return mcsToCqi(effectiveMcs(mcs, reducer));
}

}  // namespace fdra
