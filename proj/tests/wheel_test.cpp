#include "hexwave/wheel.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>

using namespace hexwave;

TEST(Wheel, ValueOfExamples) {
  EXPECT_EQ(value_of({SeqId::SQ1, 0}), 5u);
  EXPECT_EQ(value_of({SeqId::SQ2, 2}), 13u);
  EXPECT_EQ(value_of({SeqId::SQ3, 0}), 3u);
  EXPECT_EQ(value_of({SeqId::SQ1, 5}), 35u);
  EXPECT_EQ(value_of({SeqId::SQ2, 0}), 1u);
}

TEST(Wheel, ValueOfOverflow) {
  const u64 big = std::numeric_limits<u64>::max() / 6;
  EXPECT_THROW(value_of({SeqId::SQ1, big}), std::overflow_error);
}

TEST(Wheel, LocateExamples) {
  EXPECT_EQ(locate(35), (WheelIndex{SeqId::SQ1, 5}));
  EXPECT_EQ(locate(1), (WheelIndex{SeqId::SQ2, 0}));
  EXPECT_EQ(locate(12), std::nullopt);
  EXPECT_EQ(locate(2), std::nullopt);
  EXPECT_EQ(locate(9), (WheelIndex{SeqId::SQ3, 1}));
  EXPECT_EQ(locate(0), std::nullopt);
}

TEST(Wheel, ResidueClassExamples) {
  EXPECT_EQ(residue_class(25).r, 1);
  EXPECT_EQ(residue_class(55).r, 1);
  EXPECT_EQ(residue_class(9).r, 3);
  EXPECT_THROW(residue_class(0), std::domain_error);
}

// Round trip both ways, exhaustively for small values and randomized for
// 64-bit ones.
TEST(Wheel, RoundTrip) {
  for (u64 v = 1; v <= 10000; ++v) {
    auto idx = locate(v);
    if (v % 2 == 0 || v % 6 == 0) {
      if (v % 2 == 0) EXPECT_FALSE(idx.has_value()) << v;
      continue;
    }
    if (v % 2 == 1) {
      ASSERT_TRUE(idx.has_value()) << v;
      EXPECT_EQ(value_of(*idx), v);
    }
  }
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    WheelIndex idx{static_cast<SeqId>(1 + int(rng() % 3)), rng() % ((u64(1) << 60) / 6)};
    auto back = locate(value_of(idx));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, idx);
  }
}

// Every integer >= 1 coprime to 6 lies in exactly one of SQ1, SQ2.
TEST(Wheel, Partition) {
  for (u64 v = 1; v <= 30000; ++v) {
    bool coprime = (v % 2 != 0) && (v % 3 != 0);
    EXPECT_EQ(coprime_to_six(v), coprime) << v;
    if (coprime) {
      SeqId s = seq_of_value(v);
      EXPECT_TRUE(s == SeqId::SQ1 || s == SeqId::SQ2) << v;
    }
  }
}

// The unit residues form a group: this is what decides whether a
// sub-sequence follows the SQ1 or the SQ2 pattern.
TEST(Wheel, ResidueAlgebra) {
  EXPECT_EQ(mul_residue6(5, 5), 1);
  EXPECT_EQ(mul_residue6(5, 1), 5);
  EXPECT_EQ(mul_residue6(1, 1), 1);
  // exhaustive over representatives: residue of product == product of residues
  for (u64 a = 1; a < 60; ++a)
    for (u64 b = 1; b < 60; ++b)
      EXPECT_EQ(int((a * b) % 6), mul_residue6(int(a % 6), int(b % 6)));
}
