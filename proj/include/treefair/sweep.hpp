#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treefair/caps.hpp"
#include "treefair/oracle.hpp"
#include "treefair/relation.hpp"

namespace treefair {

// What to enumerate and how deep to cross-check.
struct SweepSpec {
    int d = 2;
    int k = 2;
    int n_max = 4;
    bool require_nonzero_rows = true;
    std::optional<int> max_s_A;  // keep only s_A <= this
    bool s_A_le_k = false;       // keep only s_A <= k
    int sample = 0;              // d = 5 only: number of sampled matrices
    std::uint64_t seed = 1;
    Caps caps = default_caps();
};

// All d x d matrices passing the filters, ordered by the numeric encoding
// of the row-major bit pattern. Exhaustive for d <= 4; d = 5 requires
// sample > 0 (deterministic given seed); d >= 6 is a capacity error.
std::vector<TransitionMatrix> enumerate_matrices(const SweepSpec& spec);

// One observed mismatch (or informational note), replayable from its
// stored fields alone.
struct Discrepancy {
    std::string kind;    // "soundness", "completeness", "unchecked",
                         // or a structural-property token
    std::string matrix;  // canonical text
    int k = 0;
    int i = 0, j = 0;    // 0 when not pair-specific
    int n = 0;           // height/degree/depth involved; 0 when n/a
    std::string detail;
    bool asserted = true; // false: informational only ("completeness" when
                          // k < s_A, where undiscovered relations are
                          // expected; "unchecked" heights beyond n_max)

    friend bool operator==(const Discrepancy&, const Discrepancy&) = default;
};

// Runs the round algorithm and the oracle side by side.
// Soundness (all k): every discovery (i,j) at height h <= n_max must be an
// oracle relation at depth h. Heights beyond n_max are reported as
// "unchecked", never as failures.
// Completeness (meaningful only when k >= s_A): every oracle relation of
// degree g <= n_max must be discovered with height = degree; such entries
// carry asserted = (k >= s_A).
std::vector<Discrepancy> cross_validate(const TransitionMatrix& A, int k, int n_max,
                                        const Caps& caps = default_caps());

// Oracle-backed structural checks over a sweep. All returned entries are
// asserted. Matrices with a zero row are skipped (no labelings to compare).
// Checks per matrix:
//  - complete-implies-fair
//  - fair-implies-positive-power / fair-implies-primitive (for matrices
//    with no zero column; a symbol that never occurs below the root makes
//    the power claim vacuously false on an effectively smaller alphabet)
//  - fair-antitone-in-k, fair-monotone-in-n
//  - complete-iff-fair-and-common-predecessor
//  - positive-row-fair-after-exponent (primitive with a positive row is
//    fair one level past the exponent)
//  - positive-row-criterion (d = k+1 primitive: complete for some n iff a
//    positive row exists; n searched up to exponent + 2, both directions)
//  - stall-proves-unfair-for-all-n (for [011|100|010] at k = 2: the stalled
//    round algorithm concludes for all n, which the depth-bounded oracle
//    alone cannot)
std::vector<Discrepancy> verify_observations(const SweepSpec& spec);

struct SweepRow {
    std::string matrix;
    int s_A = 0;
    Verdict verdict;
    int stalled_at = 0;
    std::optional<int> oracle_fair_n; // least n <= n_max in P, recorded as
                                      // data when the verdict is INCONCLUSIVE
    std::vector<Discrepancy> discrepancies;
};

struct SweepReport {
    SweepSpec spec;
    std::vector<SweepRow> rows;
    std::vector<Discrepancy> observation_discrepancies; // when requested
    bool with_observations = false;
    std::size_t asserted_count = 0;
    std::size_t info_count = 0;
    int max_stall = 0; // never exceeds d^2 + 1
};

// Rows are computed in parallel (workers share nothing mutable) and merged
// in enumeration order, so reports are deterministic.
SweepReport run_sweep(const SweepSpec& spec, bool with_observations = false);

} // namespace treefair
