#pragma once

// The sub-sequence algebra. A stretched copy of a base sequence,
//   SQ 1-X : X*(5 + 6n)      SQ 2-X : X*(7 + 6n)
// collects the occurrences of the factor X inside one host sequence; the
// base pattern (1 or 2) is fixed by residue algebra. Stretch factors are
// products of primes >= 5, so a node of the derivation graph is a
// nondecreasing prime chain. Classes:
//   main      chain {5} or {7}: the two spawning sub-sequences of a host
//   direct    chain {p}, p >= 11, hung off the main where p first occurs
//   internal  chain {m, q} with m in {5,7}: a recurrence inside a main,
//             every member still divisible by m
//   nondirect everything deeper or rooted at a prime >= 11
// Every composite of the host is a member of some main or direct node;
// that is the coverage theorem checked by coverage_check.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hexwave/sieve.hpp"
#include "hexwave/wheel.hpp"

namespace hexwave {

struct SubseqName {
  int base;     // 1 or 2
  u64 stretch;  // X >= 5, coprime to 6 (products of primes allowed)
  friend auto operator<=>(const SubseqName&, const SubseqName&) = default;
};

inline std::string to_string(const SubseqName& n) {
  return "SQ " + std::to_string(n.base) + "-" + std::to_string(n.stretch);
}

/// Residue of the cofactors of stretch X inside host h.
inline int cofactor_residue(SeqId host, u64 stretch) {
  return mul_residue6(int(seq_residue(host)), int(stretch % 6));
}

/// Smallest cofactor of X in host h: 5 on the SQ1 pattern, 7 on the SQ2
/// pattern (the cofactor 1 is never composite evidence).
inline u64 first_cofactor(SeqId host, u64 stretch) {
  return cofactor_residue(host, stretch) == 5 ? 5 : 7;
}

inline SubseqName name_for(SeqId host, u64 stretch) {
  if (stretch < 5 || !coprime_to_six(stretch))
    throw std::domain_error("name_for: stretch must be >= 5 and coprime to 6");
  if (host == SeqId::SQ3) throw std::domain_error("name_for: host must be SQ1 or SQ2");
  return SubseqName{cofactor_residue(host, stretch) == 5 ? 1 : 2, stretch};
}

/// Host sequence of a named sub-sequence (where its member values live).
inline SeqId host_of(const SubseqName& n) {
  int r = mul_residue6(int(n.stretch % 6), n.base == 1 ? 5 : 1);
  return r == 5 ? SeqId::SQ1 : SeqId::SQ2;
}

/// n-th member value (0-based over actual members).
inline u64 subsequence_member(const SubseqName& name, u64 n) {
  u64 c = detail::checked_add(detail::checked_mul(6, n), name.base == 1 ? 5 : 7);
  return detail::checked_mul(name.stretch, c);
}

/// First member, i.e. the value whose factorization spawns the node.
inline u64 origin_of(SeqId host, u64 stretch) {
  return detail::checked_mul(stretch, first_cofactor(host, stretch));
}

enum class NodeClass { main, direct, internal, nondirect };

inline const char* to_string(NodeClass c) {
  switch (c) {
    case NodeClass::main: return "main";
    case NodeClass::direct: return "direct";
    case NodeClass::internal: return "internal";
    case NodeClass::nondirect: return "nondirect";
  }
  return "?";
}

struct DerivationNode {
  SubseqName name;
  NodeClass cls = NodeClass::main;
  std::optional<SubseqName> parent;  // nullopt for the two mains
  u64 origin_value = 0;
  std::vector<u64> chain;  // nondecreasing prime factors of the stretch
  bool truncated = false;  // children beyond value_limit were cut
};

struct DerivationGraph {
  SeqId host;
  u64 value_limit = 0;
  std::vector<DerivationNode> nodes;  // ordered by (origin_value, stretch)
};

namespace detail {

inline u64 chain_product(const std::vector<u64>& chain) {
  u64 x = 1;
  for (u64 p : chain) x = checked_mul(x, p);
  return x;
}

inline NodeClass class_of_chain(const std::vector<u64>& chain) {
  if (chain.size() == 1) return (chain[0] == 5 || chain[0] == 7) ? NodeClass::main : NodeClass::direct;
  if (chain.size() == 2 && (chain[0] == 5 || chain[0] == 7)) return NodeClass::internal;
  return NodeClass::nondirect;
}

inline DerivationNode make_node(SeqId host, std::vector<u64> chain, std::optional<SubseqName> parent) {
  DerivationNode n;
  n.chain = std::move(chain);
  u64 stretch = chain_product(n.chain);
  n.name = name_for(host, stretch);
  n.cls = class_of_chain(n.chain);
  n.parent = std::move(parent);
  n.origin_value = origin_of(host, stretch);
  return n;
}

inline void sort_nodes(std::vector<DerivationNode>& nodes) {
  std::sort(nodes.begin(), nodes.end(), [](const DerivationNode& a, const DerivationNode& b) {
    if (a.origin_value != b.origin_value) return a.origin_value < b.origin_value;
    if (a.name.stretch != b.name.stretch) return a.name.stretch < b.name.stretch;
    return int(a.cls) < int(b.cls);
  });
}

}  // namespace detail

namespace detail {

/// True when the cheapest possible child of the node lies past the limit.
inline bool is_truncated(SeqId host, const DerivationNode& node, u64 value_limit) {
  u64 pmax = node.chain.empty() ? 5 : node.chain.back();
  u64 cheapest;
  if (__builtin_mul_overflow(node.name.stretch, pmax, &cheapest)) return true;
  if (cheapest > value_limit) return true;
  return origin_of(host, cheapest) > value_limit;
}

inline std::vector<DerivationNode> derive_children_impl(const DerivationNode& node,
                                                        int depth_limit, u64 value_limit,
                                                        const std::vector<u64>& primes) {
  std::vector<DerivationNode> out;
  if (depth_limit <= 0) return out;
  const SeqId host = host_of(node.name);
  const u64 stretch = node.name.stretch;

  if (node.cls == NodeClass::main) {
    for (u64 p : primes) {
      if (p < 11) continue;
      if (origin_of(host, p) > value_limit) continue;
      if (first_cofactor(host, p) != stretch) continue;  // first occurrence in the other main
      out.push_back(make_node(host, {p}, node.name));
    }
  }
  // chain extensions: append a prime >= the current largest factor
  const u64 pmax = node.chain.empty() ? 5 : node.chain.back();
  for (u64 f : primes) {
    if (f < pmax || f < 5) continue;
    u64 child_stretch;
    if (__builtin_mul_overflow(stretch, f, &child_stretch)) break;
    if (child_stretch > value_limit) break;
    if (origin_of(host, child_stretch) > value_limit) continue;
    auto chain = node.chain;
    chain.push_back(f);
    out.push_back(make_node(host, std::move(chain), node.name));
  }
  std::vector<DerivationNode> deeper;
  for (auto& child : out) {
    child.truncated = is_truncated(host, child, value_limit);
    auto grand = derive_children_impl(child, depth_limit - 1, value_limit, primes);
    deeper.insert(deeper.end(), grand.begin(), grand.end());
  }
  out.insert(out.end(), deeper.begin(), deeper.end());
  sort_nodes(out);
  return out;
}

}  // namespace detail

/// Children of one node, expanded to depth_limit generations, every child
/// origin <= value_limit. A main node spawns the direct nodes of the
/// primes whose first host occurrence falls inside it, plus its internal
/// recurrences; any other node spawns chain extensions only.
inline std::vector<DerivationNode> derive_children(const DerivationNode& node, int depth_limit,
                                                   u64 value_limit) {
  if (value_limit < 25) throw std::domain_error("derive_children: value_limit must be >= 25");
  const auto primes = detail::small_wheel_primes(value_limit / 5);
  return detail::derive_children_impl(node, depth_limit, value_limit, primes);
}

/// Full derivation graph of one host sequence, bounded by value_limit.
inline DerivationGraph build_derivation_graph(SeqId host, u64 value_limit) {
  if (host == SeqId::SQ3)
    throw std::domain_error("build_derivation_graph: host must be SQ1 or SQ2");
  DerivationGraph g;
  g.host = host;
  g.value_limit = value_limit;
  const auto primes = detail::small_wheel_primes(std::max<u64>(value_limit, 25) / 5);
  for (u64 m : {u64(5), u64(7)}) {
    DerivationNode main = detail::make_node(host, {m}, std::nullopt);
    main.truncated = detail::is_truncated(host, main, value_limit);
    auto kids = detail::derive_children_impl(main, 64, std::max<u64>(value_limit, 25), primes);
    g.nodes.push_back(main);
    g.nodes.insert(g.nodes.end(), kids.begin(), kids.end());
  }
  detail::sort_nodes(g.nodes);
  return g;
}

struct CoverageReport {
  SeqId host;
  u64 value_limit = 0;
  u64 members_checked = 0;
  u64 composites = 0;
  std::vector<u64> uncovered;           // members of no main or direct node
  std::vector<u64> covered_only_deeper; // composites seen only by internal/nondirect nodes
};

/// Checks the coverage claim: every composite member of the host belongs
/// to a main or direct node; what is left uncovered must be exactly the
/// primes (plus the unit 1 in SQ2).
inline CoverageReport coverage_check(SeqId host, u64 value_limit) {
  if (host == SeqId::SQ3) throw std::domain_error("coverage_check: host must be SQ1 or SQ2");
  CoverageReport rep;
  rep.host = host;
  rep.value_limit = value_limit;
  if (value_limit < 1) return rep;
  // smallest-prime-factor table for factorization
  std::vector<uint32_t> spf(value_limit + 1, 0);
  for (u64 p = 2; p <= value_limit; ++p) {
    if (spf[p] != 0) continue;
    for (u64 m = p; m <= value_limit; m += p)
      if (spf[m] == 0) spf[m] = uint32_t(p);
  }
  const u64 r = seq_residue(host);
  for (u64 v = r; v <= value_limit; v += 6) {
    if (v < 1) continue;
    ++rep.members_checked;
    if (v == 1 || spf[v] == v) {  // unit or prime: expected uncovered
      rep.uncovered.push_back(v);
      continue;
    }
    ++rep.composites;
    bool main_or_direct = false;
    u64 rest = v;
    u64 prev = 0;
    while (rest > 1 && !main_or_direct) {
      u64 p = spf[rest];
      if (p != prev && v / p >= 5 && origin_of(host, p) <= value_limit) main_or_direct = true;
      prev = p;
      rest /= p;
    }
    if (!main_or_direct) {
      // is it at least a member of some deeper node? (composite stretch)
      bool deeper = false;
      for (u64 d = 25; d * d <= v && !deeper; d = detail::next_wheel(d))
        if (v % d == 0 && v / d >= 5) deeper = true;
      if (deeper) rep.covered_only_deeper.push_back(v);
      else rep.uncovered.push_back(v);
    }
  }
  return rep;
}

enum class TableKind { table1, table3, table4, table5, table7 };

struct TableParams {
  SeqId host = SeqId::SQ1;
  u64 factor = 5;       // periodic factor, table4/5/7
  u64 value_limit = 0;  // bound on emitted values
};

struct AtlasRow {
  u64 value;
  SeqId host;
  std::string path;   // "5x 5x 7x 7" style factor chain, tail bare
  std::string label;  // sub-sequence owning the chain prefix
  std::string cls;
};

struct AtlasTable {
  TableKind kind;
  std::vector<AtlasRow> rows;
};

namespace detail {

inline std::vector<u64> prime_factors_ascending(u64 v) {
  std::vector<u64> out;
  for (u64 p = 2; p * p <= v; ++p)
    while (v % p == 0) {
      out.push_back(p);
      v /= p;
    }
  if (v > 1) out.push_back(v);
  return out;
}

/// Nondecreasing prime chains of C: prefixes (p1 <= ... <= pk) with every
/// intermediate cofactor >= max(pk, 5). Mirrors the appendix tables'
/// column scheme.
inline void chains_of(u64 c, u64 pmin, std::vector<u64>& prefix,
                      std::vector<std::vector<u64>>& out) {
  auto fs = prime_factors_ascending(c);
  u64 last = 0;
  for (u64 p : fs) {
    if (p == last || p < pmin || p < 5) { last = p; continue; }
    last = p;
    u64 tail = c / p;
    if (tail < 5 || tail < p) continue;
    prefix.push_back(p);
    out.push_back(prefix);
    chains_of(tail, p, prefix, out);
    prefix.pop_back();
  }
}

inline std::string path_string(const std::vector<u64>& factors, u64 tail) {
  std::string s;
  for (u64 f : factors) s += std::to_string(f) + "x ";
  s += std::to_string(tail);
  return s;
}

}  // namespace detail

/// Reproduces the appendix table structure as flat rows: one row per
/// (value, decomposition chain).
inline AtlasTable emit_table(TableKind kind, const TableParams& params) {
  AtlasTable table{kind, {}};
  const u64 limit = params.value_limit;
  auto emit_factor_table = [&](SeqId host, u64 factor) {
    if (factor < 5 || !coprime_to_six(factor))
      throw std::domain_error("emit_table: factor must be >= 5 and coprime to 6");
    const u64 c0 = first_cofactor(host, factor);
    for (u64 c = c0; factor * c <= limit; c += 6) {
      const u64 v = factor * c;
      const auto base_name = name_for(host, factor);
      table.rows.push_back({v, host, detail::path_string({factor}, c), to_string(base_name),
                            to_string(detail::class_of_chain({factor}))});
      std::vector<u64> prefix;
      std::vector<std::vector<u64>> chains;
      detail::chains_of(c, 2, prefix, chains);
      for (const auto& ch : chains) {
        u64 prod = factor;
        for (u64 p : ch) prod *= p;
        u64 tail = v / prod;
        std::vector<u64> full = {factor};
        full.insert(full.end(), ch.begin(), ch.end());
        std::vector<u64> cls_chain = full;
        std::sort(cls_chain.begin(), cls_chain.end());
        table.rows.push_back({v, host, detail::path_string(full, tail),
                              to_string(name_for(host, prod)),
                              to_string(detail::class_of_chain(cls_chain))});
      }
    }
  };
  switch (kind) {
    case TableKind::table1: {
      for (u64 v = 1; v <= limit; ++v) {
        if (!coprime_to_six(v) || v < 5) continue;
        auto fs = detail::prime_factors_ascending(v);
        std::string path;
        if (fs.size() > 1) {
          u64 tail = fs.back();
          fs.pop_back();
          path = detail::path_string(fs, tail);
        }
        table.rows.push_back({v, seq_of_value(v), path, "", fs.empty() || path.empty() ? "prime" : "composite"});
      }
      break;
    }
    case TableKind::table3: {
      for (SeqId host : {SeqId::SQ1, SeqId::SQ2})
        for (u64 f : {u64(5), u64(7)}) {
          auto nm = name_for(host, f);
          for (u64 c = first_cofactor(host, f); f * c <= limit; c += 6)
            table.rows.push_back({f * c, host, detail::path_string({f}, c), to_string(nm), "main"});
        }
      break;
    }
    case TableKind::table4:
      emit_factor_table(SeqId::SQ1, 7);
      break;
    case TableKind::table5:
      emit_factor_table(SeqId::SQ2, 11);
      break;
    case TableKind::table7:
      emit_factor_table(params.host, params.factor);
      break;
    default:
      throw std::domain_error("emit_table: unknown table kind");
  }
  return table;
}

}  // namespace hexwave
