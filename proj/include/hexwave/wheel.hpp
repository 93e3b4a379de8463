#pragma once

// Exact integer arithmetic on the mod-6 wheel: the three residue sequences
//   SQ1 : 5, 11, 17, 23, ...   (5 + 6n)
//   SQ2 : 1,  7, 13, 19, ...   (1 + 6n)
//   SQ3 : 3,  9, 15, 21, ...   (3 + 6n)
// SQ1 and SQ2 together hold every integer coprime to 6; SQ3 holds the odd
// multiples of 3. All values are unsigned 64-bit and overflow is detected,
// never wrapped.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hexwave {

using u64 = std::uint64_t;

enum class SeqId : int { SQ1 = 1, SQ2 = 2, SQ3 = 3 };

inline const char* to_string(SeqId s) {
  switch (s) {
    case SeqId::SQ1: return "SQ1";
    case SeqId::SQ2: return "SQ2";
    case SeqId::SQ3: return "SQ3";
  }
  return "?";
}

/// First element of the sequence, which is also its residue mod 6.
inline u64 seq_residue(SeqId s) {
  switch (s) {
    case SeqId::SQ1: return 5;
    case SeqId::SQ2: return 1;
    case SeqId::SQ3: return 3;
  }
  throw std::invalid_argument("seq_residue: bad SeqId");
}

/// Position on the wheel: n-th element of one residue sequence.
struct WheelIndex {
  SeqId seq;
  u64 n;
  friend bool operator==(const WheelIndex&, const WheelIndex&) = default;
};

/// A residue mod 6, kept as its own type so callers cannot confuse it
/// with a value or an index.
struct Residue6 {
  int r;  // 0..5
  friend bool operator==(const Residue6&, const Residue6&) = default;
};

namespace detail {

inline u64 checked_add(u64 a, u64 b) {
  u64 r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("hexwave: 64-bit value overflow");
  return r;
}

inline u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("hexwave: 64-bit value overflow");
  return r;
}

}  // namespace detail

/// Value at a wheel position: 5+6n, 1+6n or 3+6n.
inline u64 value_of(WheelIndex idx) {
  return detail::checked_add(detail::checked_mul(6, idx.n), seq_residue(idx.seq));
}

/// Inverse of value_of. Returns nullopt for values not on the wheel
/// (even numbers and 0).
inline std::optional<WheelIndex> locate(u64 v) {
  if (v == 0) return std::nullopt;
  switch (v % 6) {
    case 1: return WheelIndex{SeqId::SQ2, (v - 1) / 6};
    case 3: return WheelIndex{SeqId::SQ3, (v - 3) / 6};
    case 5: return WheelIndex{SeqId::SQ1, (v - 5) / 6};
    default: return std::nullopt;
  }
}

inline Residue6 residue_class(u64 v) {
  if (v == 0) throw std::domain_error("residue_class: v must be >= 1");
  return Residue6{static_cast<int>(v % 6)};
}

/// True for values in SQ1 or SQ2, i.e. coprime to 6.
inline bool coprime_to_six(u64 v) {
  u64 r = v % 6;
  return r == 1 || r == 5;
}

/// Sequence holding a residue-1/3/5 value.
inline SeqId seq_of_value(u64 v) {
  auto idx = locate(v);
  if (!idx) throw std::domain_error("seq_of_value: " + std::to_string(v) + " is not on the wheel");
  return idx->seq;
}

/// Residue of a product, using only the factors' residues. On the units
/// {1,5} this is the two-element group: 5*5=1, 5*1=5, 1*1=1 (mod 6).
inline int mul_residue6(int a, int b) { return (a * b) % 6; }

}  // namespace hexwave
