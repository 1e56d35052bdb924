// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion carries a wall-clock budget; exceeding it fails the line
// even if the checks themselves pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "treefair/oracle.hpp"
#include "treefair/relation.hpp"
#include "treefair/report.hpp"
#include "treefair/sweep.hpp"

using namespace treefair;

namespace {

struct Checker {
    bool ok = true;
    std::string why;

    void expect(bool cond, const std::string& message) {
        if (!cond && ok) {
            ok = false;
            why = message;
        }
    }
};

std::vector<std::pair<int, int>> pairs_of(const RoundTrace& t) {
    std::vector<std::pair<int, int>> out;
    for (const Discovery& d : t.discoveries) out.emplace_back(d.i, d.j);
    return out;
}

// Termination bookkeeping: every algorithm run in any criterion lands here.
std::map<int, int> g_max_rounds_by_d;
std::map<int, long> g_runs_by_d;

void record_run(int d, const AlgorithmResult& res) {
    g_max_rounds_by_d[d] =
        std::max(g_max_rounds_by_d[d], static_cast<int>(res.rounds.size()));
    g_runs_by_d[d] += 1;
}

std::vector<TransitionMatrix> all_matrices(int d, bool nonzero_rows) {
    SweepSpec spec;
    spec.d = d;
    spec.require_nonzero_rows = nonzero_rows;
    return enumerate_matrices(spec);
}

TransitionMatrix matrix_from_bits(int d, int code) {
    std::vector<SymbolSet> rows(static_cast<std::size_t>(d));
    const int bits = d * d;
    for (int b = 0; b < bits; ++b)
        if ((code >> (bits - 1 - b)) & 1) rows[static_cast<std::size_t>(b / d)].insert(b % d + 1);
    return {d, std::move(rows)};
}

} // namespace

int main() {
    int failures = 0;
    const Caps caps = default_caps();

    auto run = [&](int id, const std::string& title, double budget_s, auto&& body) {
        const auto t0 = std::chrono::steady_clock::now();
        Checker c;
        try {
            body(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.ok && secs > budget_s) {
            c.ok = false;
            c.why = "exceeded time budget";
        }
        if (!c.ok) ++failures;
        std::printf("[%s] %2d. %s (%.2fs, budget %.0fs)%s%s\n", c.ok ? "PASS" : "FAIL", id,
                    title.c_str(), secs, budget_s, c.ok ? "" : ": ", c.ok ? "" : c.why.c_str());
        std::fflush(stdout);
    };

    run(1, "golden discovery run on the three-symbol cycle 110|001|100", 1.0, [&](Checker& c) {
        const TransitionMatrix A = parse_matrix("110|001|100");
        const AlgorithmResult res = run_algorithm(A);
        record_run(A.d, res);
        c.expect(render_relation(res.R) == "143|212|141",
                 "final R = " + render_relation(res.R) + ", expected 143|212|141");
        c.expect(res.stalled_at == 5, "stall at " + std::to_string(res.stalled_at));
        c.expect(res.rounds.size() == 4, "discovery round count");
        using P = std::vector<std::pair<int, int>>;
        if (res.rounds.size() == 4) {
            c.expect(pairs_of(res.rounds[0]) == P{{3, 1}}, "round 1 content");
            c.expect(pairs_of(res.rounds[1]) == P{{2, 1}, {2, 3}}, "round 2 content");
            c.expect(pairs_of(res.rounds[2]) == P{{1, 3}}, "round 3 content");
            c.expect(pairs_of(res.rounds[3]) == P{{1, 2}, {3, 2}}, "round 4 content");
        }
        for (int k = 2; k <= 4; ++k) {
            const Verdict v = classify_fairness(A, k, res);
            c.expect(v.status == Status::FAIR && v.n_min == 4 && v.n_min_exact,
                     "verdict for k = " + std::to_string(k));
        }
    });

    run(2, "golden discovery run on the two-cycle matrix 1001|1000|0100|0010", 1.0,
        [&](Checker& c) {
            const TransitionMatrix A = parse_matrix("1001|1000|0100|0010");
            const AlgorithmResult res = run_algorithm(A);
            record_run(A.d, res);
            c.expect(render_relation(res.R) == "1456|1156|2216|3331",
                     "final R = " + render_relation(res.R));
            c.expect(res.stalled_at == 7, "stall at " + std::to_string(res.stalled_at));
            const Verdict v = classify_fairness(A, 2, res);
            c.expect(v.status == Status::FAIR && v.n_min == 6 && v.n_min_exact,
                     "verdict should be FAIR with n_min = 6");
        });

    run(3, "stalling fan matrix 0111|1000|0100|0010 is unfair at k = 3 yet primitive", 1.0,
        [&](Checker& c) {
            const TransitionMatrix A = parse_matrix("0111|1000|0100|0010");
            const AlgorithmResult res = run_algorithm(A);
            record_run(A.d, res);
            c.expect(render_relation(res.R) == "1000|0100|1010|1201",
                     "final R = " + render_relation(res.R));
            c.expect(!res.all_positive, "the discovery must stall");
            const Verdict v = classify_fairness(A, 3, res);
            c.expect(v.status == Status::NOT_FAIR, "verdict for k = 3 = s_A");
            c.expect(power_support(A, 7).all_ones(), "supp(A^7) must be all-ones");
            c.expect(oracle_membership(A, 1, 7, caps).in_p,
                     "one-child trees are fair at row 7 once the power is positive");
        });

    run(4, "complement-of-identity 0111|1011|1101|1110: silent algorithm, complete at n = 2",
        1.0, [&](Checker& c) {
            const TransitionMatrix A = parse_matrix("0111|1011|1101|1110");
            const AlgorithmResult res = run_algorithm(A);
            record_run(A.d, res);
            c.expect(res.rounds.empty() && res.R == RelationMatrix::identity(4),
                     "no off-diagonal discoveries expected");
            const OracleRelationSet r1 = oracle_relations_at(A, 2, 1, caps);
            using P = std::vector<std::pair<int, int>>;
            c.expect(r1.pairs == P{{1, 1}, {2, 2}, {3, 3}, {4, 4}},
                     "depth-1 relations must be the diagonal");
            c.expect(oracle_relations_at(A, 2, 2, caps).size() == 16,
                     "depth-2 relations must be all 16 pairs");
            const Membership m = oracle_membership(A, 2, 2, caps);
            c.expect(m.in_p && m.in_p_star, "P(2,2) and P*(2,2) must both hold");
        });

    run(5, "single-discovery stall on 011|100|010 rules out fairness for every n", 5.0,
        [&](Checker& c) {
            const TransitionMatrix A = parse_matrix("011|100|010");
            const AlgorithmResult res = run_algorithm(A);
            record_run(A.d, res);
            using P = std::vector<std::pair<int, int>>;
            c.expect(res.rounds.size() == 1 && pairs_of(res.rounds[0]) == P{{3, 1}},
                     "only (3,1) may be discovered");
            const Verdict v = classify_fairness(A, 2, res);
            c.expect(v.status == Status::NOT_FAIR, "k = 2 = s_A: stall means unfair for all n");
            const auto levels = poss_family_levels(A, 2, 6, caps);
            for (int n = 1; n <= 6; ++n)
                c.expect(!membership_from_family(levels[static_cast<std::size_t>(n)], 3).in_p,
                         "oracle must refute P(2," + std::to_string(n) + ")");
        });

    run(6, "relation sets and heights match the oracle on all 3x3, s_A <= 2, k = 2, n <= 6",
        120.0, [&](Checker& c) {
            SweepSpec spec;
            spec.d = 3;
            spec.k = 2;
            spec.n_max = 6;
            spec.max_s_A = 2;
            const auto mats = enumerate_matrices(spec);
            c.expect(mats.size() == 216, "expected 216 matrices, got " +
                                             std::to_string(mats.size()));
            for (const TransitionMatrix& A : mats) {
                const auto discs = cross_validate(A, 2, 6, caps);
                c.expect(discs.empty(), render_matrix(A) + ": " +
                                            std::to_string(discs.size()) + " discrepancies");
                const AlgorithmResult res = run_algorithm(A);
                record_run(A.d, res);
                const OracleRelationSet rel = oracle_relations_at(A, 2, 6, caps);
                for (int i = 1; i <= 3; ++i)
                    for (int j = 1; j <= 3; ++j) {
                        c.expect((res.R.at(i, j) > 0) == rel.contains(i, j),
                                 render_matrix(A) + ": relation sets differ at (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
                        if (i != j && res.R.at(i, j) > 0)
                            c.expect(relation_degree(A, 2, i, j, 6, caps) == res.R.at(i, j),
                                     render_matrix(A) + ": height != degree at (" +
                                         std::to_string(i) + "," + std::to_string(j) + ")");
                    }
            }
        });

    run(7, "every discovery on all 3x3 matrices is oracle-confirmed at its height, k in 1..3",
        300.0, [&](Checker& c) {
            const auto mats = all_matrices(3, true);
            c.expect(mats.size() == 343, "expected 343 matrices");
            for (const TransitionMatrix& A : mats) {
                const AlgorithmResult res = run_algorithm(A);
                record_run(A.d, res);
                for (int k = 1; k <= 3; ++k) {
                    for (const Discrepancy& d : cross_validate(A, k, 4, caps)) {
                        c.expect(d.kind != "soundness",
                                 render_matrix(A) + " k=" + std::to_string(k) +
                                     ": unsound discovery (" + std::to_string(d.i) + "," +
                                     std::to_string(d.j) + ") at height " +
                                     std::to_string(d.n));
                        c.expect(d.kind != "unchecked",
                                 render_matrix(A) + ": height beyond 4 contradicts the family");
                        c.expect(!d.asserted, render_matrix(A) + " k=" + std::to_string(k) +
                                                  ": asserted " + d.kind + " discrepancy");
                    }
                }
            }
        });

    run(8, "structural properties hold on every d <= 3 matrix for k in {1,2}, n <= 3", 300.0,
        [&](Checker& c) {
            for (int d = 1; d <= 3; ++d) {
                for (int k = 1; k <= 2; ++k) {
                    SweepSpec spec;
                    spec.d = d;
                    spec.k = k;
                    spec.n_max = 3;
                    const auto viol = verify_observations(spec);
                    c.expect(viol.empty(), "d=" + std::to_string(d) + " k=" +
                                               std::to_string(k) + ": " +
                                               (viol.empty() ? "" : viol.front().kind + " on " +
                                                                        viol.front().matrix));
                }
            }
        });

    run(9, "poss sets, naive enumeration, and level tables agree elementwise", 120.0,
        [&](Checker& c) {
            std::vector<TransitionMatrix> mats;
            for (int code = 0; code < 16; ++code) mats.push_back(matrix_from_bits(2, code));
            std::mt19937 rng(20260814);
            std::uniform_int_distribution<int> dist(0, 511);
            for (int s = 0; s < 200; ++s) mats.push_back(matrix_from_bits(3, dist(rng)));

            for (const TransitionMatrix& A : mats) {
                const auto levels = poss_family_levels(A, 2, 3, caps);
                for (int n = 0; n <= 3; ++n) {
                    const LevelTable t = level_matrix_supports(A, 2, n, caps);
                    std::vector<std::vector<RowConfiguration>> naive;
                    for (int i = 1; i <= A.d; ++i)
                        naive.push_back(enumerate_labelings_naive(A, 2, n, i, caps));
                    std::vector<SymbolSet> seen;
                    bool all_equal = true;
                    for (int i = 2; i <= A.d; ++i)
                        all_equal = all_equal &&
                                    naive[static_cast<std::size_t>(i - 1)] == naive[0];
                    bool all_full = true;
                    for (int i = 1; i <= A.d; ++i)
                        all_full = all_full && naive[static_cast<std::size_t>(i - 1)].size() ==
                                                   t.columns;
                    for (std::uint64_t col = 0; col < t.columns; ++col) {
                        const RowConfiguration xi = t.config_at(col);
                        const SymbolSet roots = poss_root(A, 2, n, xi);
                        seen.push_back(roots);
                        for (int i = 1; i <= A.d; ++i) {
                            const bool via_naive = std::binary_search(
                                naive[static_cast<std::size_t>(i - 1)].begin(),
                                naive[static_cast<std::size_t>(i - 1)].end(), xi);
                            c.expect(t.at(i, xi) == via_naive,
                                     render_matrix(A) + ": table vs naive at n=" +
                                         std::to_string(n));
                            c.expect(t.at(i, xi) == roots.contains(i),
                                     render_matrix(A) + ": table vs poss at n=" +
                                         std::to_string(n));
                        }
                    }
                    std::sort(seen.begin(), seen.end());
                    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
                    c.expect(seen == levels[static_cast<std::size_t>(n)].sets,
                             render_matrix(A) + ": family DP vs enumeration at n=" +
                                 std::to_string(n));
                    if (n >= 1) {
                        const Membership m = membership_from_family(
                            levels[static_cast<std::size_t>(n)], A.d);
                        c.expect(m.in_p == all_equal,
                                 render_matrix(A) + ": fairness disagrees at n=" +
                                     std::to_string(n));
                        c.expect(m.in_p_star == (all_equal && all_full),
                                 render_matrix(A) + ": completeness disagrees at n=" +
                                     std::to_string(n));
                    }
                }
            }
        });

    run(10, "no recorded run exceeds d^2 discovery rounds", 60.0, [&](Checker& c) {
        c.expect(!g_runs_by_d.empty(), "nothing recorded");
        for (const auto& [d, count] : g_runs_by_d) {
            c.expect(count > 0, "no runs for d = " + std::to_string(d));
            c.expect(g_max_rounds_by_d[d] <= d * d,
                     "d = " + std::to_string(d) + ": " +
                         std::to_string(g_max_rounds_by_d[d]) + " rounds exceeds d^2");
        }
        c.expect(g_runs_by_d.count(3) == 1 && g_runs_by_d[3] >= 343 + 216,
                 "the 3x3 sweeps must feed the bound check");
    });

    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
