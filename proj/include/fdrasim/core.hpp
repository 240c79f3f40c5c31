// Copyright 2026 The fdrasim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Bandwidth-part geometry, contiguous allocations, RIV coding and
// slot-decision validation. Everything downstream builds on these types.

#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace fdra {

// Downlink bandwidth part. RBs are indexed 0..numRbs-1; subband CQI is
// reported per RB group of rbgSize RBs, the last group may be shorter.
struct BwpConfig {
  int numRbs = 270;
  int rbgSize = 4;
  double slotDurationSec = 0.0005;

  bool valid() const {
    return numRbs >= 1 && rbgSize >= 1 && slotDurationSec > 0.0;
  }
  int numRbgs() const { return (numRbs + rbgSize - 1) / rbgSize; }
  int rbgOf(int rb) const { return rb / rbgSize; }
  int rbgLength(int rbg) const {
    const int first = rbg * rbgSize;
    const int left = numRbs - first;
    return left < rbgSize ? left : rbgSize;
  }
};

// One contiguous run of RBs. length == 0 denotes "no allocation" and is not
// RIV-encodable.
struct ContiguousAllocation {
  int startRb = 0;
  int length = 0;

  int lastRb() const { return startRb + length - 1; }
  bool validFor(const BwpConfig& bwp) const {
    return startRb >= 0 && length >= 1 && startRb + length <= bwp.numRbs;
  }
  friend bool operator==(const ContiguousAllocation&,
                         const ContiguousAllocation&) = default;
};

// Packs (startRb, length) into the standard resource indication value. The
// two branches tile the [0, B*(B+1)/2) code space without collision.
inline std::int64_t rivEncode(const BwpConfig& bwp,
                              const ContiguousAllocation& alloc) {
  if (!bwp.valid()) {
    throw std::out_of_range("rivEncode: invalid bandwidth part");
  }
  if (!alloc.validFor(bwp)) {
    std::ostringstream os;
    os << "rivEncode: allocation (start=" << alloc.startRb
       << ", length=" << alloc.length << ") does not fit in " << bwp.numRbs
       << " RBs";
    throw std::out_of_range(os.str());
  }
  const std::int64_t b = bwp.numRbs;
  const std::int64_t s = alloc.startRb;
  const std::int64_t l = alloc.length;
  if (l - 1 <= b / 2) {
    return b * (l - 1) + s;
  }
  return b * (b - l + 1) + (b - 1 - s);
}

// Inverse of rivEncode. Exactly one branch yields an in-range allocation for
// any code in the image; everything else is rejected.
inline ContiguousAllocation rivDecode(const BwpConfig& bwp, std::int64_t riv) {
  if (!bwp.valid()) {
    throw std::invalid_argument("rivDecode: invalid bandwidth part");
  }
  const std::int64_t b = bwp.numRbs;
  if (riv >= 0 && riv < b * b + b) {
    const std::int64_t q = riv / b;
    const std::int64_t r = riv % b;
    // Short-allocation branch: L - 1 = q, S = r. Needs q + r <= b - 1.
    if (q <= b / 2 && r + q + 1 <= b) {
      return ContiguousAllocation{static_cast<int>(r), static_cast<int>(q + 1)};
    }
    // Long-allocation branch: B - L + 1 = q, B - 1 - S = r. Needs q + r >= b,
    // so the branches never overlap.
    const std::int64_t l = b - q + 1;
    const std::int64_t s = b - 1 - r;
    if (l - 1 > b / 2 && s >= 0 && s + l <= b) {
      return ContiguousAllocation{static_cast<int>(s), static_cast<int>(l)};
    }
  }
  std::ostringstream os;
  os << "rivDecode: " << riv << " is not a valid code for " << bwp.numRbs
     << " RBs";
  throw std::invalid_argument(os.str());
}

// Per-UE share of one slot decision. scheduledBits is the transport-block
// payload the grant carries, already capped by the scheduler's stop rule.
struct DecisionEntry {
  int ueId = 0;
  ContiguousAllocation alloc;
  std::int64_t riv = 0;
  int mcs = 0;
  int rank = 1;
  std::int64_t scheduledBits = 0;
};

struct SlotDecision {
  std::int64_t slot = 0;
  std::vector<DecisionEntry> entries;
};

struct Violation {
  enum class Kind {
    kRange,      // allocation outside [0, numRbs)
    kOverlap,    // two entries share an RB
    kDuplicate,  // same UE appears twice
    kRiv,        // stored RIV does not re-encode the allocation
  };
  Kind kind;
  int ueId = 0;
  std::string detail;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks a slot decision against the hard constraints of contiguous
// allocation: in-range, pairwise disjoint, one entry per UE, RIV consistent.
// Collects every violation instead of stopping at the first.
inline ValidationResult validateDecision(const BwpConfig& bwp,
                                         const SlotDecision& decision) {
  ValidationResult result;
  std::unordered_set<int> seen;
  for (const DecisionEntry& e : decision.entries) {
    if (!e.alloc.validFor(bwp)) {
      std::ostringstream os;
      os << "ue " << e.ueId << ": allocation (start=" << e.alloc.startRb
         << ", length=" << e.alloc.length << ") outside 0.." << bwp.numRbs - 1;
      result.violations.push_back({Violation::Kind::kRange, e.ueId, os.str()});
    } else if (rivEncode(bwp, e.alloc) != e.riv) {
      std::ostringstream os;
      os << "ue " << e.ueId << ": riv " << e.riv << " does not encode (start="
         << e.alloc.startRb << ", length=" << e.alloc.length << ")";
      result.violations.push_back({Violation::Kind::kRiv, e.ueId, os.str()});
    }
    if (!seen.insert(e.ueId).second) {
      std::ostringstream os;
      os << "ue " << e.ueId << ": more than one entry";
      result.violations.push_back(
          {Violation::Kind::kDuplicate, e.ueId, os.str()});
    }
  }
  for (std::size_t i = 0; i < decision.entries.size(); ++i) {
    for (std::size_t j = i + 1; j < decision.entries.size(); ++j) {
      const DecisionEntry& a = decision.entries[i];
      const DecisionEntry& b = decision.entries[j];
      if (a.alloc.length == 0 || b.alloc.length == 0) continue;
      const int lo = a.alloc.startRb > b.alloc.startRb ? a.alloc.startRb
                                                       : b.alloc.startRb;
      const int hi =
          a.alloc.lastRb() < b.alloc.lastRb() ? a.alloc.lastRb() : b.alloc.lastRb();
      if (lo <= hi) {
        std::ostringstream os;
        os << "ue " << a.ueId << " and ue " << b.ueId << ": overlap on RBs "
           << lo << ".." << hi;
        result.violations.push_back({Violation::Kind::kOverlap, a.ueId, os.str()});
      }
    }
  }
  return result;
}

}  // namespace fdra
