// Copyright 2026 The fdrasim Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdrasim/core.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"

namespace {

using fdra::BwpConfig;
using fdra::ContiguousAllocation;
using fdra::rivDecode;
using fdra::rivEncode;
using fdra::SlotDecision;
using fdra::validateDecision;
using fdra::Violation;

BwpConfig bwpOf(int numRbs) {
  BwpConfig bwp;
  bwp.numRbs = numRbs;
  return bwp;
}

TEST(Riv, FrozenExamples) {
  // Hand-computed from the two-branch formula.
  EXPECT_EQ(rivEncode(bwpOf(270), {0, 1}), 0);
  EXPECT_EQ(rivEncode(bwpOf(270), {5, 10}), 2435);   // 270 * 9 + 5
  EXPECT_EQ(rivEncode(bwpOf(10), {2, 8}), 37);       // 10 * 3 + (9 - 2)

  EXPECT_EQ(rivDecode(bwpOf(270), 0), (ContiguousAllocation{0, 1}));
  EXPECT_EQ(rivDecode(bwpOf(270), 2435), (ContiguousAllocation{5, 10}));
  EXPECT_EQ(rivDecode(bwpOf(10), 37), (ContiguousAllocation{2, 8}));
}

// Enumerates every valid (start, length) pair and checks that the code is
// collision-free and round-trips. Exhaustive up to 64 RBs.
TEST(Riv, ExhaustiveBijectionSmallBands) {
  for (int b = 1; b <= 64; ++b) {
    const BwpConfig bwp = bwpOf(b);
    std::set<std::int64_t> codes;
    for (int s = 0; s < b; ++s) {
      for (int l = 1; s + l <= b; ++l) {
        const ContiguousAllocation alloc{s, l};
        const std::int64_t riv = rivEncode(bwp, alloc);
        EXPECT_GE(riv, 0);
        EXPECT_TRUE(codes.insert(riv).second)
            << "duplicate code " << riv << " at B=" << b << " S=" << s
            << " L=" << l;
        EXPECT_EQ(rivDecode(bwp, riv), alloc)
            << "round trip failed at B=" << b << " S=" << s << " L=" << l;
      }
    }
    EXPECT_EQ(static_cast<int>(codes.size()), b * (b + 1) / 2);
  }
}

TEST(Riv, RandomizedRoundTripLargeBands) {
  std::mt19937 rng(20260819u);
  for (int trial = 0; trial < 5000; ++trial) {
    const int b = std::uniform_int_distribution<int>(1, 273)(rng);
    const BwpConfig bwp = bwpOf(b);
    const int s = std::uniform_int_distribution<int>(0, b - 1)(rng);
    const int l = std::uniform_int_distribution<int>(1, b - s)(rng);
    const ContiguousAllocation alloc{s, l};
    EXPECT_EQ(rivDecode(bwp, rivEncode(bwp, alloc)), alloc);
  }
}

TEST(Riv, EncodeRejectsInvalidAllocations) {
  const BwpConfig bwp = bwpOf(20);
  EXPECT_THROW(rivEncode(bwp, {0, 0}), std::out_of_range);
  EXPECT_THROW(rivEncode(bwp, {-1, 5}), std::out_of_range);
  EXPECT_THROW(rivEncode(bwp, {16, 5}), std::out_of_range);
  EXPECT_THROW(rivEncode(bwp, {0, 21}), std::out_of_range);
}

TEST(Riv, DecodeRejectsCodesOutsideTheImage) {
  for (int b = 1; b <= 32; ++b) {
    const BwpConfig bwp = bwpOf(b);
    std::set<std::int64_t> codes;
    for (int s = 0; s < b; ++s) {
      for (int l = 1; s + l <= b; ++l) {
        codes.insert(rivEncode(bwp, {s, l}));
      }
    }
    EXPECT_THROW(rivDecode(bwp, -1), std::invalid_argument);
    for (std::int64_t riv = 0; riv < static_cast<std::int64_t>(b) * b + b + 5;
         ++riv) {
      if (codes.count(riv) != 0) continue;
      EXPECT_THROW(rivDecode(bwp, riv), std::invalid_argument)
          << "B=" << b << " riv=" << riv;
    }
  }
}

SlotDecision decisionOf(const BwpConfig& bwp,
                        std::vector<std::pair<int, ContiguousAllocation>> ues) {
  SlotDecision d;
  for (const auto& [ue, alloc] : ues) {
    fdra::DecisionEntry e;
    e.ueId = ue;
    e.alloc = alloc;
    e.riv = rivEncode(bwp, alloc);
    d.entries.push_back(e);
  }
  return d;
}

TEST(ValidateDecision, AcceptsDisjointContiguousEntries) {
  const BwpConfig bwp = bwpOf(270);
  const SlotDecision d = decisionOf(bwp, {{1, {0, 5}}, {2, {5, 5}}, {3, {260, 10}}});
  EXPECT_TRUE(validateDecision(bwp, d).ok());
}

TEST(ValidateDecision, AcceptsEmptyDecision) {
  EXPECT_TRUE(validateDecision(bwpOf(10), SlotDecision{}).ok());
}

TEST(ValidateDecision, FlagsOverlap) {
  const BwpConfig bwp = bwpOf(270);
  const SlotDecision d = decisionOf(bwp, {{1, {0, 5}}, {2, {4, 3}}});
  const auto result = validateDecision(bwp, d);
  ASSERT_EQ(result.violations.size(), 1u);
  EXPECT_EQ(result.violations[0].kind, Violation::Kind::kOverlap);
  EXPECT_NE(result.violations[0].detail.find("RBs 4..4"), std::string::npos);
}

TEST(ValidateDecision, FlagsOutOfRangeAllocation) {
  const BwpConfig bwp = bwpOf(270);
  SlotDecision d;
  fdra::DecisionEntry e;
  e.ueId = 7;
  e.alloc = {268, 5};
  e.riv = 0;
  d.entries.push_back(e);
  const auto result = validateDecision(bwp, d);
  ASSERT_EQ(result.violations.size(), 1u);
  EXPECT_EQ(result.violations[0].kind, Violation::Kind::kRange);
  EXPECT_EQ(result.violations[0].ueId, 7);
}

TEST(ValidateDecision, FlagsDuplicateUe) {
  const BwpConfig bwp = bwpOf(20);
  const SlotDecision d = decisionOf(bwp, {{3, {0, 2}}, {3, {10, 2}}});
  const auto result = validateDecision(bwp, d);
  ASSERT_EQ(result.violations.size(), 1u);
  EXPECT_EQ(result.violations[0].kind, Violation::Kind::kDuplicate);
}

TEST(ValidateDecision, FlagsRivMismatch) {
  const BwpConfig bwp = bwpOf(20);
  SlotDecision d = decisionOf(bwp, {{1, {0, 4}}});
  d.entries[0].riv += 1;
  const auto result = validateDecision(bwp, d);
  ASSERT_EQ(result.violations.size(), 1u);
  EXPECT_EQ(result.violations[0].kind, Violation::Kind::kRiv);
}

TEST(ValidateDecision, CollectsEveryViolation) {
  const BwpConfig bwp = bwpOf(20);
  SlotDecision d = decisionOf(bwp, {{1, {0, 6}}, {1, {4, 4}}});
  d.entries[0].riv += 1;
  const auto result = validateDecision(bwp, d);
  EXPECT_EQ(result.violations.size(), 3u);  // riv, duplicate, overlap
}

TEST(BwpConfig, RbgGeometry) {
  BwpConfig bwp;
  bwp.numRbs = 270;
  bwp.rbgSize = 4;
  EXPECT_EQ(bwp.numRbgs(), 68);
  EXPECT_EQ(bwp.rbgOf(0), 0);
  EXPECT_EQ(bwp.rbgOf(3), 0);
  EXPECT_EQ(bwp.rbgOf(4), 1);
  EXPECT_EQ(bwp.rbgOf(269), 67);
  EXPECT_EQ(bwp.rbgLength(0), 4);
  EXPECT_EQ(bwp.rbgLength(67), 2);  // 270 = 67 * 4 + 2
}

}  // namespace
