#include "hexwave/sieve.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

using namespace hexwave;

namespace {

// Independent primality oracle for the tests: plain trial division.
bool oracle_is_prime(u64 v) {
  if (v < 2) return false;
  for (u64 d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

}  // namespace

TEST(UndertoneWaveTest, ValueExamples) {
  EXPECT_EQ(undertone_value(UndertoneWave(5, 1), 0), 25u);
  EXPECT_EQ(undertone_value(UndertoneWave(5, 2), 1), 35u);
  EXPECT_EQ(undertone_value(UndertoneWave(7, 1), 0), 35u);
}

TEST(UndertoneWaveTest, BranchTwoExcludesNZero) {
  EXPECT_THROW(undertone_value(UndertoneWave(5, 2), 0), std::domain_error);
}

TEST(UndertoneWaveTest, Validation) {
  EXPECT_THROW(UndertoneWave(4, 1), std::domain_error);
  EXPECT_THROW(UndertoneWave(9, 1), std::domain_error);
  EXPECT_THROW(UndertoneWave(5, 3), std::domain_error);
  EXPECT_THROW(undertone_value(UndertoneWave((u64(1) << 62) + 1, 1), u64(1) << 60), std::overflow_error);
}

TEST(MarkRange, PointExamples) {
  auto m25 = mark_range(25, 25);
  ASSERT_EQ(m25.size(), 1u);
  EXPECT_EQ(m25[0], (CompositeMark{25, 5, 5, 1}));

  auto m49 = mark_range(49, 49);
  ASSERT_EQ(m49.size(), 1u);
  EXPECT_EQ(m49[0], (CompositeMark{49, 7, 7, 2}));

  // 5..23 holds no composite coprime to 6 (all of 5,7,11,13,17,19,23 prime).
  for (u64 v = 5; v <= 23; ++v)
    if (coprime_to_six(v)) ASSERT_TRUE(oracle_is_prime(v)) << v;
  EXPECT_TRUE(mark_range(5, 23).empty());
}

TEST(MarkRange, DualMarksAt35) {
  auto m = mark_range(35, 35);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], (CompositeMark{35, 5, 7, 2}));
  EXPECT_EQ(m[1], (CompositeMark{35, 7, 5, 1}));
}

TEST(MarkRange, MarkInvariants) {
  for (const auto& m : mark_range(5, 20000)) {
    EXPECT_EQ(m.value, m.x * m.cofactor);
    if (m.branch == 1) {
      EXPECT_EQ(m.cofactor % 6, 5u);
      EXPECT_GE(m.cofactor, 5u);
    } else {
      EXPECT_EQ(m.cofactor % 6, 1u);
      EXPECT_GE(m.cofactor, 7u);
    }
  }
}

// A wheel value is composite iff it carries at least one mark.
TEST(MarkRange, Completeness) {
  const u64 hi = 20000;
  std::set<u64> marked;
  for (const auto& m : mark_range(5, hi)) marked.insert(m.value);
  for (u64 v = 5; v <= hi; ++v) {
    if (!coprime_to_six(v)) continue;
    EXPECT_EQ(marked.count(v) > 0, !oracle_is_prime(v)) << v;
  }
}

// Within one branch, marks of wave x sit x wheel-index steps apart in
// their host sequence.
TEST(MarkRange, Periodicity) {
  std::map<std::pair<u64, int>, std::vector<u64>> host_indices;
  for (const auto& m : mark_range(5, 50000))
    host_indices[{m.x, m.branch}].push_back(locate(m.value)->n);
  ASSERT_FALSE(host_indices.empty());
  for (const auto& [key, idx] : host_indices)
    for (size_t i = 1; i < idx.size(); ++i)
      EXPECT_EQ(idx[i] - idx[i - 1], key.first);
}

// Prime-only waves mark the same value set as waves for every stretch
// factor in SQ1 u SQ2 \ {1}.
TEST(MarkRange, FullWaveEquivalence) {
  const u64 hi = 10000;
  std::set<u64> prime_only, all;
  for (const auto& m : mark_range(5, hi, WavePolicy::prime_waves)) prime_only.insert(m.value);
  for (const auto& m : mark_range(5, hi, WavePolicy::all_waves)) all.insert(m.value);
  EXPECT_EQ(prime_only, all);
}

TEST(PrimesUpTo, SmallExamples) {
  EXPECT_EQ(primes_up_to(30).primes, (std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
  EXPECT_TRUE(primes_up_to(1).primes.empty());
  EXPECT_EQ(primes_up_to(2).primes, (std::vector<u64>{2}));
  EXPECT_EQ(primes_up_to(100).primes.size(), 25u);  // trial-division count below
  u64 count = 0;
  for (u64 v = 1; v <= 100; ++v) count += oracle_is_prime(v);
  EXPECT_EQ(count, 25u);
}

TEST(PrimesUpTo, MatchesOracle) {
  for (u64 limit : {u64(10), u64(100), u64(1000), u64(10000), u64(100000), u64(1000000)})
    EXPECT_EQ(primes_up_to(limit).primes, oracle_primes_up_to(limit)) << limit;
  std::mt19937_64 rng(7);
  for (int i = 0; i < 25; ++i) {
    u64 limit = rng() % 1000000;
    EXPECT_EQ(primes_up_to(limit).primes, oracle_primes_up_to(limit)) << limit;
  }
}

TEST(PrimesUpTo, SegmentAndScheduleDeterminism) {
  auto ref = primes_up_to(100000, 1u << 16, 1);
  for (u64 seg : {u64(4096), u64(65536), u64(1) << 20}) {
    for (unsigned threads : {1u, 2u, 4u}) {
      auto r = primes_up_to(100000, seg, threads);
      EXPECT_EQ(r.primes, ref.primes) << seg << " x" << threads;
      EXPECT_EQ(r.marks, ref.marks) << seg << " x" << threads;
    }
  }
}

TEST(PrimesUpTo, MarkRetentionCap) {
  EXPECT_TRUE(primes_up_to(1000).stats.marks_retained);
  auto big = primes_up_to(1500000);
  EXPECT_FALSE(big.stats.marks_retained);
  EXPECT_TRUE(big.marks.empty());
}

TEST(OraclePrimes, Examples) {
  EXPECT_EQ(oracle_primes_up_to(10), (std::vector<u64>{2, 3, 5, 7}));
  EXPECT_EQ(oracle_primes_up_to(2), (std::vector<u64>{2}));
  EXPECT_EQ(oracle_primes_up_to(1000000).size(), 78498u);
  EXPECT_THROW(oracle_primes_up_to(oracle_limit_cap + 1), std::domain_error);
}

TEST(FirstOccurrenceTest, Examples) {
  auto f11 = first_occurrence(11);
  EXPECT_EQ(f11.value, 55u);
  EXPECT_EQ(f11.companion, 5u);
  EXPECT_EQ(f11.seq, SeqId::SQ2);

  auto f5 = first_occurrence(5);
  EXPECT_EQ(f5.value, 25u);
  EXPECT_EQ(f5.companion, 5u);
  EXPECT_EQ(f5.seq, SeqId::SQ2);

  auto f13 = first_occurrence(13);
  EXPECT_EQ(f13.value, 65u);
  EXPECT_EQ(f13.companion, 5u);
  EXPECT_EQ(f13.seq, SeqId::SQ1);

  EXPECT_THROW(first_occurrence(9), std::domain_error);
  EXPECT_THROW(first_occurrence(3), std::domain_error);
}

// New prime factors always arrive in company of the factor 5: the smallest
// composite wheel multiple of p is 5p. Checked against a direct scan.
TEST(FirstOccurrenceTest, LawUpTo10000) {
  for (u64 p : primes_up_to(10000).primes) {
    if (p < 5) continue;
    // direct scan oracle: smallest composite multiple of p coprime to 6
    u64 smallest = 0;
    for (u64 k = 2; smallest == 0; ++k)
      if (coprime_to_six(p * k)) smallest = p * k;
    auto f = first_occurrence(p);
    EXPECT_EQ(f.value, smallest);
    EXPECT_EQ(f.value, 5 * p);
    EXPECT_EQ(f.companion, 5u);
  }
}

TEST(CompanionSequence, Examples) {
  EXPECT_EQ(companion_sequence(5, 7), (std::vector<u64>{5, 7, 11, 13, 17, 19, 23}));
  EXPECT_EQ(companion_sequence(7, 5), (std::vector<u64>{5, 7, 11, 13, 17}));
  EXPECT_EQ(companion_sequence(11, 5), (std::vector<u64>{5, 7, 11, 13, 17}));
}

// Brute-force oracle: cofactors of the wheel multiples of x, ascending.
TEST(CompanionSequence, MatchesFactorScan) {
  for (u64 x : {u64(11), u64(25), u64(101)}) {
    std::vector<u64> expect;
    for (u64 k = 2; expect.size() < 50; ++k)
      if (coprime_to_six(x * k)) expect.push_back(k);
    EXPECT_EQ(companion_sequence(x, 50), expect) << x;
  }
}

// Universality: the merged companion stream is SQ1 u SQ2 minus {1},
// independent of x.
TEST(CompanionSequence, Universality) {
  std::vector<u64> wheel;
  for (u64 v = 5; wheel.size() < 200; v += 1)
    if (coprime_to_six(v)) wheel.push_back(v);
  for (u64 x : {u64(5), u64(7), u64(35), u64(997)})
    EXPECT_EQ(companion_sequence(x, 200), wheel) << x;
}
