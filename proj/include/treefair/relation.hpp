#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treefair/matrix.hpp"

namespace treefair {

// d x d table of discovery rounds for replacement relations i => j
// ("every row-n configuration reachable from root i is reachable from j").
// Entry (i,j) = round at which the relation was discovered (its height),
// 0 = not (yet) known. Diagonal entries are fixed at 1 by convention even
// though i => i conceptually has height 0. Nonzero entries are never
// overwritten, and no entry exceeds d^2.
struct RelationMatrix {
    int d = 0;
    std::vector<int> e; // row-major, e[(i-1)*d + (j-1)]

    static RelationMatrix identity(int d);

    int at(int i, int j) const { return e[static_cast<std::size_t>((i - 1) * d + (j - 1))]; }
    int& at(int i, int j) { return e[static_cast<std::size_t>((i - 1) * d + (j - 1))]; }

    bool all_positive() const; // every off-diagonal entry nonzero
    int max_entry() const;
    int max_offdiag() const;   // 0 when d == 1 or nothing discovered

    friend bool operator==(const RelationMatrix&, const RelationMatrix&) = default;
};

// Rows joined by '|'; entries concatenated as digits when all fit in one
// digit ("143|212|141"), comma-separated otherwise.
std::string render_relation(const RelationMatrix& R);

// Inverse of render_relation for the digit form (test and fixture helper).
RelationMatrix parse_relation(const std::string& text);

// One discovery i => j with its witness map: for every a in S(i) the
// chosen b(a) in S(j) whose relation a => b(a) was already known on entry
// to the round (smallest such b; pairs listed with a ascending).
struct Discovery {
    int i = 0, j = 0;
    std::vector<std::pair<int, int>> witness;

    friend bool operator==(const Discovery&, const Discovery&) = default;
};

struct RoundTrace {
    int round = 0;
    std::vector<Discovery> discoveries;

    friend bool operator==(const RoundTrace&, const RoundTrace&) = default;
};

struct AlgorithmResult {
    RelationMatrix R;
    std::vector<RoundTrace> rounds; // discovery rounds only, in order
    int stalled_at = 0;             // first round that added nothing; <= d^2 + 1
    bool all_positive = false;
    std::optional<int> max_height;  // largest entry of R when all_positive
};

// Removes every a and inserts every b, simultaneously: the result is
// (row minus all a's) union (all b's), so the order of moves is irrelevant.
// Preconditions (else DomainError): each a in row, a != b, a's pairwise
// distinct.
SymbolSet apply_moves(SymbolSet row, const std::vector<std::pair<int, int>>& moves);

// One round. For each unknown pair (i,j): discover it iff for every
// a in S(i) there is b in S(j) with R(a,b) > 0, using the INPUT R only;
// discoveries within a round cannot feed the same round. The round number
// is 1 + the largest off-diagonal entry of the input R.
std::pair<RelationMatrix, RoundTrace> round_step(const TransitionMatrix& A,
                                                 const RelationMatrix& R);

// Iterates round_step from R_0 = I until a round adds nothing.
AlgorithmResult run_algorithm(const TransitionMatrix& A);

enum class Status { FAIR, NOT_FAIR, INCONCLUSIVE };

std::string to_string(Status s);

// FAIR: the matrix is in P(k,n) for all n >= n_min. n_min_exact marks
// whether n_min is also minimal (guaranteed when k >= s_A).
// NOT_FAIR: not in P(k,n) for any n (requires k >= s_A).
// INCONCLUSIVE: k < s_A and the discovery stalled; the oracle may refine.
struct Verdict {
    Status status = Status::INCONCLUSIVE;
    std::optional<int> n_min;
    bool n_min_exact = false;
    std::string provenance; // "complete-discovery", "sound-discovery",
                            // "oracle-direct"; empty for INCONCLUSIVE
};

Verdict classify_fairness(const TransitionMatrix& A, int k);
Verdict classify_fairness(const TransitionMatrix& A, int k, const AlgorithmResult& res);

} // namespace treefair
