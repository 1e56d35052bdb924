#include "treefair/report.hpp"

#include <algorithm>
#include <string>

#include "treefair/errors.hpp"

namespace treefair {

namespace {

std::string bracketed(const std::string& inner) { return "[" + inner + "]"; }

std::string move_prefix(const std::vector<std::pair<int, int>>& moves) {
    std::string out;
    for (auto [a, b] : moves) {
        out += "s_{";
        if (a > 9 || b > 9)
            out += std::to_string(a) + "," + std::to_string(b);
        else
            out += std::to_string(a) + std::to_string(b);
        out += "}";
    }
    return out;
}

std::optional<int> table_degree(const std::vector<OracleRelationSet>& rel, int i, int j) {
    for (std::size_t n = 0; n < rel.size(); ++n)
        if (rel[n].contains(i, j)) return static_cast<int>(n);
    return std::nullopt;
}

} // namespace

std::string render_trace(const TransitionMatrix& A, const AlgorithmResult& res) {
    std::string out;
    RelationMatrix R = RelationMatrix::identity(A.d);
    for (const RoundTrace& t : res.rounds) {
        out += "Round " + std::to_string(t.round) + ":\n";
        for (const Discovery& disc : t.discoveries) {
            std::vector<std::pair<int, int>> moves;
            SymbolSet hat;
            for (auto [a, b] : disc.witness) {
                hat.insert(b);
                if (a != b) moves.emplace_back(a, b);
            }
            const std::string row_i = bracketed(to_row_text(A.row(disc.i), A.d));
            const std::string row_j = bracketed(to_row_text(A.row(disc.j), A.d));
            const std::string ai = "A_" + std::to_string(disc.i);
            const std::string aj = "A_" + std::to_string(disc.j);
            out += "  ";
            if (moves.empty()) {
                out += ai + " = " + row_i + " <= " + aj + " = " + row_j;
            } else {
                const std::string pre = move_prefix(moves);
                out += pre + "(" + ai + ") = " + pre + "(" + row_i + ") = " +
                       bracketed(to_row_text(hat, A.d)) + " = " + ai + "^* <= " + aj + " = " +
                       row_j;
            }
            out += "  =>  " + std::to_string(disc.i) + " => " + std::to_string(disc.j) + "\n";
            R.at(disc.i, disc.j) = t.round;
        }
        out += "  R_" + std::to_string(t.round) + " = " + bracketed(render_relation(R)) + "\n";
    }
    out += "Round " + std::to_string(res.stalled_at) + ": no discoveries; stop.\n";
    return out;
}

AnalysisReport analyze(const TransitionMatrix& A, int k, const AnalyzeOptions& opt) {
    require_nonzero_rows(A);
    if (k < 1) throw DomainError("k must be at least 1");
    if (A.d > opt.caps.max_d)
        throw CapacityError("matrix dimension d = " + std::to_string(A.d) +
                            " exceeds the cap " + std::to_string(opt.caps.max_d) +
                            "; raise it via TREEFAIR_CAPS or --caps");
    AnalysisReport r;
    r.A = A;
    r.k = k;
    r.s_A = max_row_sum(A);
    r.exponent = primitivity_exponent(A);
    r.positive_row = has_positive_row(A);
    r.algo = run_algorithm(A);
    r.verdict = classify_fairness(A, k, r.algo);
    if (A.d == k + 1 && r.exponent)
        r.p_star_criterion = PStarCriterion{r.positive_row,
                                            r.positive_row ? *r.exponent + 1 : 0};
    if (opt.oracle_depth > 0) {
        r.oracle_depth = opt.oracle_depth;
        const auto levels = poss_family_levels(A, k, opt.oracle_depth, opt.caps);
        std::vector<OracleRelationSet> rel;
        rel.reserve(levels.size());
        for (const PossFamily& fam : levels) rel.push_back(relations_from_family(fam, A.d));
        for (int n = 1; n <= opt.oracle_depth; ++n) {
            const Membership m =
                membership_from_family(levels[static_cast<std::size_t>(n)], A.d);
            r.memberships.push_back(m);
            if (m.in_p && !r.oracle_fair_n) r.oracle_fair_n = n;
            if (m.in_p_star && !r.oracle_complete_n) r.oracle_complete_n = n;
        }
        r.relations_at_depth = rel.back();
        r.degree_table.assign(static_cast<std::size_t>(A.d),
                              std::vector<std::optional<int>>(static_cast<std::size_t>(A.d)));
        for (int i = 1; i <= A.d; ++i)
            for (int j = 1; j <= A.d; ++j)
                r.degree_table[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                    table_degree(rel, i, j);
        // The bounded oracle can settle what the stalled discovery could
        // not: membership observed at some depth is minimal by
        // monotonicity, so the verdict upgrades with exact n_min.
        if (r.verdict.status == Status::INCONCLUSIVE && r.oracle_fair_n)
            r.verdict = {Status::FAIR, r.oracle_fair_n, true, "oracle-direct"};
    }
    return r;
}

ojson to_json(const AnalysisReport& r) {
    ojson j;
    j["tool"] = "treefair";
    j["command"] = "analyze";
    j["input"] = {{"matrix", render_matrix(r.A)}, {"d", r.A.d}, {"k", r.k}};
    ojson rowsums = ojson::array();
    for (int i = 1; i <= r.A.d; ++i) rowsums.push_back(row_sum(r.A, i));
    j["matrix"] = {{"s_A", r.s_A},
                   {"row_sums", rowsums},
                   {"primitivity_exponent", r.exponent ? ojson(*r.exponent) : ojson(nullptr)},
                   {"has_positive_row", r.positive_row}};
    ojson rounds = ojson::array();
    for (const RoundTrace& t : r.algo.rounds) {
        ojson discs = ojson::array();
        for (const Discovery& d : t.discoveries) {
            ojson w = ojson::array();
            for (auto [a, b] : d.witness) w.push_back(ojson::array({a, b}));
            discs.push_back({{"i", d.i}, {"j", d.j}, {"witness", w}});
        }
        rounds.push_back({{"round", t.round}, {"discoveries", discs}});
    }
    j["algorithm"] = {{"final_R", render_relation(r.algo.R)},
                      {"stalled_at", r.algo.stalled_at},
                      {"all_positive", r.algo.all_positive},
                      {"max_height",
                       r.algo.max_height ? ojson(*r.algo.max_height) : ojson(nullptr)},
                      {"rounds", rounds}};
    j["verdict"] = {{"status", to_string(r.verdict.status)},
                    {"n_min", r.verdict.n_min ? ojson(*r.verdict.n_min) : ojson(nullptr)},
                    {"n_min_exact", r.verdict.n_min_exact},
                    {"provenance", r.verdict.provenance.empty() ? ojson(nullptr)
                                                                : ojson(r.verdict.provenance)}};
    if (r.p_star_criterion) {
        j["p_star_criterion"] = {
            {"positive_row", r.p_star_criterion->positive_row},
            {"complete_for_some_n", r.p_star_criterion->positive_row},
            {"witnessed_at", r.p_star_criterion->positive_row
                                 ? ojson(r.p_star_criterion->witnessed_at)
                                 : ojson(nullptr)},
            {"provenance", "positive-row-criterion"}};
    } else {
        j["p_star_criterion"] = nullptr;
    }
    if (r.oracle_depth > 0) {
        ojson memb = ojson::array();
        for (std::size_t m = 0; m < r.memberships.size(); ++m)
            memb.push_back({{"n", static_cast<int>(m) + 1},
                            {"in_p", r.memberships[m].in_p},
                            {"in_p_star", r.memberships[m].in_p_star}});
        ojson pairs = ojson::array();
        for (auto [i, jj] : r.relations_at_depth.pairs) pairs.push_back(ojson::array({i, jj}));
        ojson degrees = ojson::array();
        for (const auto& row : r.degree_table) {
            ojson jr = ojson::array();
            for (const auto& v : row) jr.push_back(v ? ojson(*v) : ojson(nullptr));
            degrees.push_back(jr);
        }
        j["oracle"] = {{"depth", r.oracle_depth},
                       {"membership", memb},
                       {"fair_at", r.oracle_fair_n ? ojson(*r.oracle_fair_n) : ojson(nullptr)},
                       {"complete_at",
                        r.oracle_complete_n ? ojson(*r.oracle_complete_n) : ojson(nullptr)},
                       {"relations_at_depth", pairs},
                       {"degree_table", degrees}};
    } else {
        j["oracle"] = nullptr;
    }
    return j;
}

std::string to_text(const AnalysisReport& r, bool with_trace) {
    std::string out;
    out += "matrix:  " + render_matrix(r.A) + "  (d = " + std::to_string(r.A.d) + ")\n";
    out += "k:       " + std::to_string(r.k) + "  (s_A = " + std::to_string(r.s_A) + ")\n";
    out += "primitivity exponent: " +
           (r.exponent ? std::to_string(*r.exponent) : std::string("none (not primitive)")) +
           "\n";
    out += "positive row: " + std::string(r.positive_row ? "yes" : "no") + "\n";
    out += "rounds: stalled at round " + std::to_string(r.algo.stalled_at) + " after " +
           std::to_string(r.algo.rounds.size()) + " discovery round" +
           (r.algo.rounds.size() == 1 ? "" : "s") + "\n";
    out += "final R: " + bracketed(render_relation(r.algo.R)) + "\n";
    out += "verdict: " + to_string(r.verdict.status);
    if (r.verdict.n_min)
        out += "  n_min = " + std::to_string(*r.verdict.n_min) +
               (r.verdict.n_min_exact ? " (exact)" : " (upper bound)");
    if (!r.verdict.provenance.empty()) out += "  [" + r.verdict.provenance + "]";
    out += "\n";
    if (r.p_star_criterion) {
        out += "complete-for-some-n (d = k+1, primitive): ";
        if (r.p_star_criterion->positive_row)
            out += "yes, witnessed at n = " + std::to_string(r.p_star_criterion->witnessed_at);
        else
            out += "no (no positive row)";
        out += "  [positive-row-criterion]\n";
    }
    if (with_trace) out += "\n" + render_trace(r.A, r.algo);
    if (r.oracle_depth > 0) {
        out += "\noracle (depth " + std::to_string(r.oracle_depth) + "):\n";
        for (std::size_t m = 0; m < r.memberships.size(); ++m)
            out += "  n=" + std::to_string(m + 1) + ": P " +
                   (r.memberships[m].in_p ? "yes" : "no") + ", P* " +
                   (r.memberships[m].in_p_star ? "yes" : "no") + "\n";
        out += "  fair from n = " +
               (r.oracle_fair_n ? std::to_string(*r.oracle_fair_n) : std::string("(none seen)")) +
               "; complete from n = " +
               (r.oracle_complete_n ? std::to_string(*r.oracle_complete_n)
                                    : std::string("(none seen)")) +
               "\n";
        out += "  relations at depth: " + std::to_string(r.relations_at_depth.size()) + "/" +
               std::to_string(r.A.d * r.A.d) + " pairs\n";
        out += "  degree table (rows i, columns j, '-' = beyond depth):\n";
        for (int i = 1; i <= r.A.d; ++i) {
            out += "   ";
            for (int j = 1; j <= r.A.d; ++j) {
                const auto& v =
                    r.degree_table[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
                out += " " + (v ? std::to_string(*v) : std::string("-"));
            }
            out += "\n";
        }
    }
    return out;
}

OracleReport oracle_query(const TransitionMatrix& A, int k, int n,
                          const std::optional<RowConfiguration>& xi, bool with_degrees,
                          const Caps& caps) {
    require_nonzero_rows(A);
    if (n < 1) throw DomainError("oracle queries require n >= 1");
    OracleReport r;
    r.A = A;
    r.k = k;
    r.n = n;
    const auto levels = poss_family_levels(A, k, n, caps);
    r.family = levels.back();
    r.membership = membership_from_family(r.family, A.d);
    r.relations = relations_from_family(r.family, A.d);
    if (with_degrees) {
        std::vector<OracleRelationSet> rel;
        rel.reserve(levels.size());
        for (const PossFamily& fam : levels) rel.push_back(relations_from_family(fam, A.d));
        r.with_degrees = true;
        r.degree_table.assign(static_cast<std::size_t>(A.d),
                              std::vector<std::optional<int>>(static_cast<std::size_t>(A.d)));
        for (int i = 1; i <= A.d; ++i)
            for (int j = 1; j <= A.d; ++j)
                r.degree_table[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                    table_degree(rel, i, j);
    }
    if (xi) {
        r.xi = xi;
        r.xi_poss = poss_root(A, k, n, *xi);
    }
    return r;
}

ojson to_json(const OracleReport& r) {
    ojson j;
    j["tool"] = "treefair";
    j["command"] = "oracle";
    j["input"] = {{"matrix", render_matrix(r.A)}, {"d", r.A.d}, {"k", r.k}, {"n", r.n}};
    ojson sets = ojson::array();
    for (SymbolSet s : r.family.sets) sets.push_back(to_set_text(s));
    j["family"] = {{"n", r.family.n}, {"sets", sets}};
    j["membership"] = {{"in_p", r.membership.in_p}, {"in_p_star", r.membership.in_p_star}};
    ojson pairs = ojson::array();
    for (auto [i, jj] : r.relations.pairs) pairs.push_back(ojson::array({i, jj}));
    j["relations"] = pairs;
    if (r.with_degrees) {
        ojson degrees = ojson::array();
        for (const auto& row : r.degree_table) {
            ojson jr = ojson::array();
            for (const auto& v : row) jr.push_back(v ? ojson(*v) : ojson(nullptr));
            degrees.push_back(jr);
        }
        j["degree_table"] = degrees;
    } else {
        j["degree_table"] = nullptr;
    }
    if (r.xi)
        j["poss_root"] = {{"xi", render_config(*r.xi, r.A.d)},
                          {"symbols", to_set_text(r.xi_poss)}};
    else
        j["poss_root"] = nullptr;
    return j;
}

std::string to_text(const OracleReport& r) {
    std::string out;
    out += "matrix:  " + render_matrix(r.A) + "  (d = " + std::to_string(r.A.d) + ")\n";
    out += "k:       " + std::to_string(r.k) + "   n: " + std::to_string(r.n) + "\n";
    out += "reachable root-sets: ";
    for (std::size_t s = 0; s < r.family.sets.size(); ++s)
        out += (s ? " " : "") + to_set_text(r.family.sets[s]);
    out += "\n";
    out += "membership: P " + std::string(r.membership.in_p ? "yes" : "no") + ", P* " +
           std::string(r.membership.in_p_star ? "yes" : "no") + "\n";
    out += "relations: " + std::to_string(r.relations.size()) + "/" +
           std::to_string(r.A.d * r.A.d) + " pairs\n";
    if (r.with_degrees) {
        out += "degree table (rows i, columns j, '-' = beyond n):\n";
        for (int i = 1; i <= r.A.d; ++i) {
            out += " ";
            for (int j = 1; j <= r.A.d; ++j) {
                const auto& v =
                    r.degree_table[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
                out += " " + (v ? std::to_string(*v) : std::string("-"));
            }
            out += "\n";
        }
    }
    if (r.xi)
        out += "poss_root(" + render_config(*r.xi, r.A.d) + ") = " + to_set_text(r.xi_poss) + "\n";
    return out;
}

namespace {

ojson to_json(const Discrepancy& d) {
    return {{"kind", d.kind},   {"matrix", d.matrix}, {"k", d.k},
            {"i", d.i},         {"j", d.j},           {"n", d.n},
            {"detail", d.detail}, {"asserted", d.asserted}};
}

ojson verdict_json(const Verdict& v) {
    return {{"status", to_string(v.status)},
            {"n_min", v.n_min ? ojson(*v.n_min) : ojson(nullptr)},
            {"n_min_exact", v.n_min_exact},
            {"provenance", v.provenance.empty() ? ojson(nullptr) : ojson(v.provenance)}};
}

} // namespace

ojson to_json(const SweepReport& r) {
    ojson j;
    j["tool"] = "treefair";
    j["command"] = "sweep";
    j["spec"] = {{"d", r.spec.d},
                 {"k", r.spec.k},
                 {"n_max", r.spec.n_max},
                 {"require_nonzero_rows", r.spec.require_nonzero_rows},
                 {"max_s_A", r.spec.max_s_A ? ojson(*r.spec.max_s_A) : ojson(nullptr)},
                 {"s_A_le_k", r.spec.s_A_le_k},
                 {"sample", r.spec.sample},
                 {"seed", r.spec.seed}};
    j["summary"] = {{"matrices", r.rows.size()},
                    {"asserted_discrepancies", r.asserted_count},
                    {"informational", r.info_count},
                    {"max_stall", r.max_stall},
                    {"stall_bound", r.spec.d * r.spec.d + 1},
                    {"observations_checked", r.with_observations}};
    ojson rows = ojson::array();
    for (const SweepRow& row : r.rows) {
        ojson discs = ojson::array();
        for (const Discrepancy& d : row.discrepancies) discs.push_back(to_json(d));
        rows.push_back({{"matrix", row.matrix},
                        {"s_A", row.s_A},
                        {"verdict", verdict_json(row.verdict)},
                        {"stalled_at", row.stalled_at},
                        {"oracle_fair_n",
                         row.oracle_fair_n ? ojson(*row.oracle_fair_n) : ojson(nullptr)},
                        {"discrepancies", discs}});
    }
    j["rows"] = rows;
    ojson obs = ojson::array();
    for (const Discrepancy& d : r.observation_discrepancies) obs.push_back(to_json(d));
    j["observation_discrepancies"] = obs;
    return j;
}

std::string to_text(const SweepReport& r) {
    std::string filters = "nonzero-rows=" + std::string(r.spec.require_nonzero_rows ? "yes" : "no");
    if (r.spec.max_s_A) filters += " s_A<=" + std::to_string(*r.spec.max_s_A);
    if (r.spec.s_A_le_k) filters += " s_A<=k";
    std::string out;
    out += "sweep: d=" + std::to_string(r.spec.d) + " k=" + std::to_string(r.spec.k) +
           " n_max=" + std::to_string(r.spec.n_max) + " [" + filters + "] -> " +
           std::to_string(r.rows.size()) + " matrices\n";
    out += "asserted discrepancies: " + std::to_string(r.asserted_count) + "\n";
    out += "informational notes:    " + std::to_string(r.info_count) +
           " (expected gaps when k < s_A, heights beyond n_max)\n";
    out += "max stall round: " + std::to_string(r.max_stall) + " (bound d^2 + 1 = " +
           std::to_string(r.spec.d * r.spec.d + 1) + ")\n";
    if (r.with_observations)
        out += "structural observation violations: " +
               std::to_string(r.observation_discrepancies.size()) + "\n";
    for (const SweepRow& row : r.rows) {
        const bool oracle_note = row.verdict.status == Status::INCONCLUSIVE && row.oracle_fair_n;
        bool has_asserted = false;
        for (const Discrepancy& d : row.discrepancies) has_asserted = has_asserted || d.asserted;
        if (!has_asserted && !oracle_note) continue;
        out += "  " + row.matrix + ": " + to_string(row.verdict.status);
        if (oracle_note) out += ", oracle fair at n=" + std::to_string(*row.oracle_fair_n);
        if (has_asserted) {
            out += ", discrepancies:";
            for (const Discrepancy& d : row.discrepancies)
                if (d.asserted)
                    out += " " + d.kind + "(" + std::to_string(d.i) + "," +
                           std::to_string(d.j) + ")@" + std::to_string(d.n);
        }
        out += "\n";
    }
    for (const Discrepancy& d : r.observation_discrepancies)
        out += "  " + d.matrix + ": " + d.kind + " at n=" + std::to_string(d.n) + " (" +
               d.detail + ")\n";
    return out;
}

int exit_code(const Verdict& v) {
    switch (v.status) {
        case Status::FAIR: return 0;
        case Status::NOT_FAIR: return 1;
        default: return 2;
    }
}

} // namespace treefair
