#pragma once

// Composite generation on the mod-6 wheel as "undertone" arithmetic
// progressions. One wave with stretch factor x marks
//   branch 1 : x*(5 + 6n), n >= 0
//   branch 2 : x*(1 + 6n), n >= 1         (x*1 is not composite evidence)
// Primes are the wheel values no wave ever marks, plus {2, 3}. The module
// keeps two code paths: a mark-table generator (mark_range) used for table
// reproduction and cross-checks, and a segmented bitmap sieve
// (primes_up_to) for large limits. A textbook Eratosthenes sieve over all
// integers (oracle_primes_up_to) shares nothing with either path and is
// the verification oracle.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hexwave/wheel.hpp"

namespace hexwave {

struct UndertoneWave {
  u64 x;       // stretch factor, >= 5, coprime to 6
  int branch;  // 1 or 2

  UndertoneWave(u64 x_, int branch_) : x(x_), branch(branch_) {
    if (x < 5 || !coprime_to_six(x))
      throw std::domain_error("UndertoneWave: stretch factor must be >= 5 and coprime to 6");
    if (branch != 1 && branch != 2)
      throw std::domain_error("UndertoneWave: branch must be 1 or 2");
  }
};

struct CompositeMark {
  u64 value;
  u64 x;
  u64 cofactor;
  int branch;
  friend bool operator==(const CompositeMark&, const CompositeMark&) = default;
};

struct SieveStats {
  u64 limit = 0;
  u64 prime_count = 0;
  u64 mark_count = 0;
  u64 segment_size = 0;
  unsigned threads = 1;
  bool marks_retained = false;
  double seconds = 0.0;
};

struct SieveResult {
  u64 limit = 0;
  std::vector<u64> primes;
  std::vector<CompositeMark> marks;  // retained only for limit <= mark_retention_cap
  SieveStats stats;
};

inline constexpr u64 mark_retention_cap = 1000000;
inline constexpr u64 oracle_limit_cap = 100000000;

enum class WavePolicy { prime_waves, all_waves };

/// n-th mark of one wave branch.
inline u64 undertone_value(const UndertoneWave& wave, u64 n) {
  if (wave.branch == 2 && n == 0)
    throw std::domain_error("undertone_value: branch 2 starts at n = 1");
  u64 base = detail::checked_add(detail::checked_mul(6, n), wave.branch == 1 ? 5 : 1);
  return detail::checked_mul(wave.x, base);
}

namespace detail {

/// Next value coprime to 6 after v (v itself coprime to 6).
inline u64 next_wheel(u64 v) { return v % 6 == 1 ? v + 4 : v + 2; }

inline bool is_prime_trial(u64 v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  if (v % 3 == 0) return v == 3;
  for (u64 d = 5; d <= v / d; d = next_wheel(d))
    if (v % d == 0) return false;
  return true;
}

/// Primes up to `limit` by direct in-memory wheel marking. Used to
/// bootstrap base primes for the segmented sieve.
inline std::vector<u64> small_wheel_primes(u64 limit) {
  std::vector<u64> primes;
  if (limit >= 2) primes.push_back(2);
  if (limit >= 3) primes.push_back(3);
  if (limit < 5) return primes;
  u64 positions = limit / 6 + 1;
  std::vector<bool> row1(positions, false), row5(positions, false);  // true = marked composite
  for (u64 x = 5; x * x <= limit; x = next_wheel(x)) {
    bool x_marked = (x % 6 == 1) ? row1[(x - 1) / 6] : row5[(x - 5) / 6];
    if (x_marked) continue;
    for (u64 c = x; ; c = next_wheel(c)) {
      u64 v;
      if (__builtin_mul_overflow(x, c, &v) || v > limit) break;
      if (v % 6 == 1) row1[(v - 1) / 6] = true;
      else row5[(v - 5) / 6] = true;
    }
  }
  for (u64 n = 0; 6 * n + 1 <= limit; ++n) {
    u64 v1 = 6 * n + 1, v5 = 6 * n + 5;
    if (n >= 1 && !row1[n]) primes.push_back(v1);
    if (v5 <= limit && !row5[n]) primes.push_back(v5);
  }
  return primes;
}

inline u64 mod_inverse(u64 a, u64 m) {
  // extended Euclid; a coprime to m
  long long x0 = 1, x1 = 0, y0 = (long long)(a % m), y1 = (long long)m;
  while (y1 != 0) {
    long long q = y0 / y1;
    long long t = x0 - q * x1; x0 = x1; x1 = t;
    t = y0 - q * y1; y0 = y1; y1 = t;
  }
  long long r = x0 % (long long)m;
  return (u64)(r < 0 ? r + (long long)m : r);
}

struct SegmentBits {
  u64 n0, n1;                     // wheel-index range [n0, n1)
  std::vector<u64> row1, row5;    // bit per index, 1 = composite
};

/// Mark one segment with every base prime. Start offsets solve
/// 6n + r == 0 (mod x) via the inverse of 6 mod x; marking begins at x*x
/// (smaller multiples carry a smaller prime factor).
inline void mark_segment(SegmentBits& seg, const std::vector<u64>& base_primes, u64 limit) {
  const u64 words = (seg.n1 - seg.n0 + 63) / 64;
  seg.row1.assign(words, 0);
  seg.row5.assign(words, 0);
  const u64 seg_max_value = 6 * (seg.n1 - 1) + 5;
  for (u64 x : base_primes) {
    if (x < 5) continue;
    if (x * x > seg_max_value && x * x > limit) break;
    const u64 inv6 = mod_inverse(6, x);
    for (int r : {1, 5}) {
      // first wheel index with 6n + r divisible by x
      u64 a = (x - (r % x) * inv6 % x) % x;
      // first multiple with cofactor >= x in this residue row
      int cr = int((u64(r) * (x % 6)) % 6);  // cofactor residue: r * x^{-1} mod 6
      u64 c0 = x % 6 == u64(cr) ? x : x + ((cr + 6 - int(x % 6)) % 6);
      u64 n_min = (x * c0 - r) / 6;
      u64 lo = std::max(seg.n0, n_min);
      if (lo >= seg.n1) continue;
      u64 n = lo + ((a + x - lo % x) % x);
      auto& row = (r == 1) ? seg.row1 : seg.row5;
      for (; n < seg.n1; n += x) {
        u64 i = n - seg.n0;
        row[i / 64] |= (u64(1) << (i % 64));
      }
    }
  }
}

inline void collect_segment_primes(const SegmentBits& seg, u64 limit, std::vector<u64>& out) {
  for (u64 n = seg.n0; n < seg.n1; ++n) {
    u64 i = n - seg.n0;
    bool m1 = seg.row1[i / 64] >> (i % 64) & 1;
    bool m5 = seg.row5[i / 64] >> (i % 64) & 1;
    u64 v1 = 6 * n + 1, v5 = 6 * n + 5;
    if (n >= 1 && v1 <= limit && !m1) out.push_back(v1);
    if (v5 >= 5 && v5 <= limit && !m5) out.push_back(v5);
  }
}

}  // namespace detail

/// All marks with lo <= value <= hi, every wave with x <= hi/5 under the
/// given policy, ordered by (value, x, branch). Prime-only waves suffice
/// to mark every composite; all_waves exists for the equivalence check.
inline std::vector<CompositeMark> mark_range(u64 lo, u64 hi, WavePolicy policy = WavePolicy::prime_waves) {
  if (lo < 5) throw std::domain_error("mark_range: lo must be >= 5");
  std::vector<CompositeMark> marks;
  if (lo > hi) return marks;
  std::vector<u64> xs;
  if (policy == WavePolicy::prime_waves) {
    for (u64 p : detail::small_wheel_primes(hi / 5))
      if (p >= 5) xs.push_back(p);
  } else {
    for (u64 x = 5; x <= hi / 5; x = detail::next_wheel(x)) xs.push_back(x);
  }
  for (u64 x : xs) {
    for (int branch : {1, 2}) {
      u64 c = (branch == 1) ? 5 : 7;
      for (; ; c += 6) {
        u64 v;
        if (__builtin_mul_overflow(x, c, &v) || v > hi) break;
        if (v >= lo) marks.push_back({v, x, c, branch});
      }
    }
  }
  std::sort(marks.begin(), marks.end(), [](const CompositeMark& a, const CompositeMark& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.x != b.x) return a.x < b.x;
    return a.branch < b.branch;
  });
  return marks;
}

/// Segmented wave sieve. Result is identical for any segment size and
/// thread count: segments are marked independently and merged in order.
inline SieveResult primes_up_to(u64 limit, u64 segment_size = 1u << 16, unsigned threads = 1) {
  if (segment_size == 0) throw std::domain_error("primes_up_to: segment size must be positive");
  if (limit > (std::numeric_limits<u64>::max() - 5) / 6 * 6)
    throw std::overflow_error("primes_up_to: limit too close to the 64-bit range");
  auto t0 = std::chrono::steady_clock::now();
  SieveResult res;
  res.limit = limit;
  if (limit >= 2) res.primes.push_back(2);
  if (limit >= 3) res.primes.push_back(3);
  if (limit >= 5) {
    u64 sqrt_limit = (u64)std::sqrt((double)limit);
    while (sqrt_limit > 0 && sqrt_limit > limit / sqrt_limit) --sqrt_limit;
    while (sqrt_limit + 1 <= limit / (sqrt_limit + 1)) ++sqrt_limit;
    const std::vector<u64> base = detail::small_wheel_primes(sqrt_limit);

    const u64 n_end = limit / 6 + 1;  // wheel indices [0, n_end)
    const u64 n_segments = (n_end + segment_size - 1) / segment_size;
    std::vector<std::vector<u64>> per_segment(n_segments);
    auto work = [&](u64 si) {
      detail::SegmentBits seg;
      seg.n0 = si * segment_size;
      seg.n1 = std::min(n_end, seg.n0 + segment_size);
      detail::mark_segment(seg, base, limit);
      detail::collect_segment_primes(seg, limit, per_segment[si]);
    };
    if (threads <= 1) {
      for (u64 si = 0; si < n_segments; ++si) work(si);
    } else {
      std::vector<std::future<void>> futs;
      std::atomic<u64> next{0};
      for (unsigned t = 0; t < threads; ++t)
        futs.push_back(std::async(std::launch::async, [&] {
          for (u64 si = next.fetch_add(1); si < n_segments; si = next.fetch_add(1)) work(si);
        }));
      for (auto& f : futs) f.get();
    }
    for (auto& chunk : per_segment)
      res.primes.insert(res.primes.end(), chunk.begin(), chunk.end());
  }
  if (limit >= 25 && limit <= mark_retention_cap) {
    res.marks = mark_range(5, limit, WavePolicy::prime_waves);
    res.stats.marks_retained = true;
  }
  res.stats.limit = limit;
  res.stats.prime_count = res.primes.size();
  res.stats.mark_count = res.marks.size();
  res.stats.segment_size = segment_size;
  res.stats.threads = threads;
  res.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

/// Verification oracle: classic sieve of Eratosthenes over all integers.
/// Deliberately unrelated to the wheel machinery above.
inline std::vector<u64> oracle_primes_up_to(u64 limit) {
  if (limit > oracle_limit_cap)
    throw std::domain_error("oracle_primes_up_to: limit above oracle cap 10^8");
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 p = 2; p * p <= limit; ++p)
    if (!composite[p])
      for (u64 m = p * p; m <= limit; m += p) composite[m] = true;
  for (u64 v = 2; v <= limit; ++v)
    if (!composite[v]) primes.push_back(v);
  return primes;
}

struct FirstOccurrence {
  u64 value;      // smallest composite in SQ1 u SQ2 divisible by p
  u64 companion;  // value / p
  SeqId seq;
};

/// Where a prime first shows up as a factor of a composite on the wheel.
/// Scans multipliers from 2 upward; the first coprime-to-6 multiplier is 5.
inline FirstOccurrence first_occurrence(u64 p) {
  if (p < 5 || !detail::is_prime_trial(p))
    throw std::domain_error("first_occurrence: p must be a prime >= 5");
  for (u64 k = 2;; ++k) {
    if (!coprime_to_six(k)) continue;
    u64 v = detail::checked_mul(p, k);
    return FirstOccurrence{v, k, seq_of_value(v)};
  }
}

/// First `count` cofactors of wave x, both branches merged ascending by
/// mark value. Lands on 5, 7, 11, 13, ... regardless of x.
inline std::vector<u64> companion_sequence(u64 x, u64 count) {
  if (x < 5 || !coprime_to_six(x))
    throw std::domain_error("companion_sequence: x must be >= 5 and coprime to 6");
  std::vector<u64> out;
  out.reserve(count);
  u64 n1 = 0, n2 = 1;  // branch cursors; branch 2 starts at n = 1
  while (out.size() < count) {
    u64 c1 = 5 + 6 * n1, c2 = 1 + 6 * n2;
    if (c1 < c2) { out.push_back(c1); ++n1; }
    else { out.push_back(c2); ++n2; }
  }
  return out;
}

}  // namespace hexwave
