#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treefair/caps.hpp"
#include "treefair/matrix.hpp"

namespace treefair {

// Labeling of row n of the k-tree: one byte per site (values 1..d),
// sites in lexicographic order; length k^n.
using RowConfiguration = std::string;

// Text form: bare digit string for d <= 9 ("12"), comma-separated above.
std::string render_config(const RowConfiguration& xi, int d);
RowConfiguration parse_config(const std::string& text, int d);

// base^exp, or absent when it exceeds limit.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp,
                                         std::uint64_t limit);

// The set of root symbols from which xi is reachable on row n, computed
// bottom-up: Poss(leaf) = {its symbol}; Poss(x) = {s : for every child g,
// S(s) meets Poss(xg)}. Independent of the round algorithm.
SymbolSet poss_root(const TransitionMatrix& A, int k, int n, const RowConfiguration& xi);

// Q_n: every value poss_root takes over the d^(k^n) row configurations.
// sets is sorted and duplicate-free; may contain the empty set (a
// configuration reachable from no root) and at most 2^d members.
struct PossFamily {
    int n = 0;
    std::vector<SymbolSet> sets;

    bool contains(SymbolSet s) const;
    friend bool operator==(const PossFamily&, const PossFamily&) = default;
};

// Levels Q_0..Q_n via the recursion Q_0 = {{1},..,{d}},
// Q_{m+1} = { pred(P_1) ∩ .. ∩ pred(P_k) : P_g in Q_m } with
// pred(P) = {s : S(s) meets P}. Intersection is idempotent, so multisets
// of k factors reduce to 1..k distinct ones; computed by fixed-point-free
// level DP. Never exponential in n.
std::vector<PossFamily> poss_family_levels(const TransitionMatrix& A, int k, int n,
                                           const Caps& caps = default_caps());
PossFamily poss_family(const TransitionMatrix& A, int k, int n,
                       const Caps& caps = default_caps());

// All ordered pairs (i,j) whose row-n follower sets satisfy
// F_n(i) subset of F_n(j); reflexive and transitive, and pairs only
// accumulate as n grows. Derived from Q_n: i => j iff no P in Q_n
// contains i but not j.
struct OracleRelationSet {
    int n = 0;
    int d = 0;
    std::vector<std::pair<int, int>> pairs; // sorted

    bool contains(int i, int j) const;
    std::size_t size() const { return pairs.size(); }
    friend bool operator==(const OracleRelationSet&, const OracleRelationSet&) = default;
};

OracleRelationSet relations_from_family(const PossFamily& fam, int d);
OracleRelationSet oracle_relations_at(const TransitionMatrix& A, int k, int n,
                                      const Caps& caps = default_caps());

struct Membership {
    bool in_p = false;      // all Poss sets empty or full: every root sees
                            // the same reachable configurations
    bool in_p_star = false; // all Poss sets full: every configuration
                            // reachable from every root
    friend bool operator==(const Membership&, const Membership&) = default;
};

Membership membership_from_family(const PossFamily& fam, int d);

// Requires nonzero rows and n >= 1.
Membership oracle_membership(const TransitionMatrix& A, int k, int n,
                             const Caps& caps = default_caps());

// Least n <= n_max with (i,j) related at depth n; degree 0 means S-free
// reflexivity (i == j). Absent when no depth <= n_max witnesses it.
std::optional<int> relation_degree(const TransitionMatrix& A, int k, int i, int j,
                                   int n_max, const Caps& caps = default_caps());

// Exactly F_n(root), by memoized depth-first generation of valid labelings
// of the first n rows, projected to row n. Sorted. Work is metered against
// caps.leaf_guard (CapacityError beyond it).
std::vector<RowConfiguration> enumerate_labelings_naive(const TransitionMatrix& A,
                                                        int k, int n, int root,
                                                        const Caps& caps = default_caps());

// d x d^(k^n) 0/1 table: entry (i, xi) = 1 iff xi in F_n(i), computed as
// the boolean product of the per-level transfer matrices B_0 .. B_{n-1},
// where B_m maps row-m configurations to row-(m+1) configurations
// (B_0 is d x d^k). Columns are in lexicographic configuration order.
struct LevelTable {
    int d = 0, k = 0, n = 0;
    std::uint64_t columns = 0;
    std::vector<std::vector<bool>> row_bits; // row_bits[i-1][column]

    RowConfiguration config_at(std::uint64_t col) const;
    std::uint64_t index_of(const RowConfiguration& xi) const;
    bool at(int i, const RowConfiguration& xi) const;
};

LevelTable level_matrix_supports(const TransitionMatrix& A, int k, int n,
                                 const Caps& caps = default_caps());

} // namespace treefair
