#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "treefair/caps.hpp"
#include "treefair/oracle.hpp"
#include "treefair/relation.hpp"
#include "treefair/sweep.hpp"

namespace treefair {

// Machine reports use ordered JSON so that parse + re-render is
// byte-identical (golden-file friendly).
using ojson = nlohmann::ordered_json;

struct AnalyzeOptions {
    bool trace = false;
    int oracle_depth = 0; // 0 = skip the oracle section
    Caps caps = default_caps();
};

// For d = k+1 primitive matrices, complete-for-some-n is equivalent to
// having a positive row; this side conclusion holds for ALL n, which the
// depth-bounded oracle cannot state.
struct PStarCriterion {
    bool positive_row = false;
    int witnessed_at = 0; // exponent + 1 when positive_row
};

struct AnalysisReport {
    TransitionMatrix A;
    int k = 0;
    int s_A = 0;
    std::optional<int> exponent;
    bool positive_row = false;
    AlgorithmResult algo;
    Verdict verdict; // oracle-upgraded when the oracle settles INCONCLUSIVE

    std::optional<PStarCriterion> p_star_criterion;

    int oracle_depth = 0; // 0 = no oracle section below
    std::vector<Membership> memberships; // index m = membership at n = m+1
    std::optional<int> oracle_fair_n;
    std::optional<int> oracle_complete_n;
    OracleRelationSet relations_at_depth;
    std::vector<std::vector<std::optional<int>>> degree_table; // [i-1][j-1]
};

AnalysisReport analyze(const TransitionMatrix& A, int k, const AnalyzeOptions& opt);

// Paper-style round trace:
//   Round 2:
//     s_{31}(A_2) = s_{31}([001]) = [100] = A_2^* <= A_1 = [110]  =>  2 => 1
//     s_{31}(A_2) = s_{31}([001]) = [100] = A_2^* <= A_3 = [100]  =>  2 => 3
//     R_2 = [100|212|101]
std::string render_trace(const TransitionMatrix& A, const AlgorithmResult& res);

ojson to_json(const AnalysisReport& r);
std::string to_text(const AnalysisReport& r, bool with_trace);

struct OracleReport {
    TransitionMatrix A;
    int k = 0;
    int n = 0;
    PossFamily family;
    Membership membership;
    OracleRelationSet relations;
    bool with_degrees = false;
    std::vector<std::vector<std::optional<int>>> degree_table;
    std::optional<RowConfiguration> xi;
    SymbolSet xi_poss;
};

OracleReport oracle_query(const TransitionMatrix& A, int k, int n,
                          const std::optional<RowConfiguration>& xi,
                          bool with_degrees, const Caps& caps);

ojson to_json(const OracleReport& r);
std::string to_text(const OracleReport& r);

ojson to_json(const SweepReport& r);
std::string to_text(const SweepReport& r);

// FAIR -> 0, NOT_FAIR -> 1, INCONCLUSIVE -> 2 (errors exit 3 at the CLI).
int exit_code(const Verdict& v);

} // namespace treefair
