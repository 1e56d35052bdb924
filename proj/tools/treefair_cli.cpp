// treefair: decide whether a 0/1 transition matrix transmits root
// information on the regular k-tree, and at which row.
//
// Exit codes: analyze 0 FAIR / 1 NOT_FAIR / 2 INCONCLUSIVE; oracle 0 when
// the matrix is in P(k,n) / 1 otherwise; sweep 0 clean / 1 asserted
// discrepancies; examples 0 all fixtures pass / 1 mismatch; 3 on parse or
// capacity errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "treefair/errors.hpp"
#include "treefair/report.hpp"

namespace {

using namespace treefair;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string matrix_text(const std::string& inline_text, const std::string& file) {
    if (!inline_text.empty() && !file.empty())
        throw ParseError("give the matrix either inline or via --file, not both");
    if (!inline_text.empty()) return inline_text;
    if (!file.empty()) return slurp(file);
    throw ParseError("missing matrix: pass it as an argument or via --file");
}

Caps resolve_caps(const std::string& overrides) {
    Caps caps = default_caps();
    if (!overrides.empty()) caps = parse_caps(overrides, caps);
    return caps;
}

void emit(const ojson& j, const std::string& text, const std::string& format) {
    if (format == "machine")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

int run_analyze(const std::string& mtext, int k, bool trace, int depth,
                const std::string& format, const std::string& caps_text) {
    const TransitionMatrix A = parse_matrix(mtext);
    AnalyzeOptions opt;
    opt.trace = trace;
    opt.oracle_depth = depth;
    opt.caps = resolve_caps(caps_text);
    const AnalysisReport r = analyze(A, k, opt);
    emit(to_json(r), to_text(r, trace), format);
    return exit_code(r.verdict);
}

int run_oracle(const std::string& mtext, int k, int n, const std::string& xi_text,
               bool degrees, const std::string& format, const std::string& caps_text) {
    const TransitionMatrix A = parse_matrix(mtext);
    const Caps caps = resolve_caps(caps_text);
    std::optional<RowConfiguration> xi;
    if (!xi_text.empty()) xi = parse_config(xi_text, A.d);
    const OracleReport r = oracle_query(A, k, n, xi, degrees, caps);
    emit(to_json(r), to_text(r), format);
    return r.membership.in_p ? 0 : 1;
}

int run_sweep_cmd(const SweepSpec& spec, bool observations, const std::string& format) {
    const SweepReport r = run_sweep(spec, observations);
    emit(to_json(r), to_text(r), format);
    return r.asserted_count == 0 ? 0 : 1;
}

// ---- built-in fixtures ----------------------------------------------------

struct FixtureRun {
    int checks = 0;
    int failed = 0;

    void check(const std::string& name, const std::string& expected,
               const std::string& actual) {
        ++checks;
        const bool ok = expected == actual;
        if (!ok) ++failed;
        std::cout << (ok ? "[ OK ] " : "[FAIL] ") << name << ": expected " << expected
                  << ", actual " << actual << "\n";
    }
};

std::string rounds_summary(const AlgorithmResult& res) {
    std::string out;
    for (const RoundTrace& t : res.rounds) {
        if (!out.empty()) out += "; ";
        out += std::to_string(t.round) + ":";
        for (const Discovery& d : t.discoveries)
            out += "(" + std::to_string(d.i) + "," + std::to_string(d.j) + ")";
    }
    return out.empty() ? "(none)" : out;
}

std::string verdict_summary(const Verdict& v) {
    std::string out = to_string(v.status);
    if (v.n_min) out += " n_min=" + std::to_string(*v.n_min);
    return out;
}

int run_examples() {
    FixtureRun f;
    const Caps caps = default_caps();

    {
        const TransitionMatrix A = parse_matrix("110|001|100");
        const AlgorithmResult res = run_algorithm(A);
        f.check("three-symbol-cycle final R", "[143|212|141]",
                "[" + render_relation(res.R) + "]");
        f.check("three-symbol-cycle rounds", "1:(3,1); 2:(2,1)(2,3); 3:(1,3); 4:(1,2)(3,2)",
                rounds_summary(res));
        f.check("three-symbol-cycle stall", "5", std::to_string(res.stalled_at));
        f.check("three-symbol-cycle verdict (k=2)", "FAIR n_min=4",
                verdict_summary(classify_fairness(A, 2, res)));
    }
    {
        const TransitionMatrix A = parse_matrix("1001|1000|0100|0010");
        const AlgorithmResult res = run_algorithm(A);
        f.check("two-cycles-shared-symbol final R", "[1456|1156|2216|3331]",
                "[" + render_relation(res.R) + "]");
        f.check("two-cycles-shared-symbol stall", "7", std::to_string(res.stalled_at));
        f.check("two-cycles-shared-symbol verdict (k=2)", "FAIR n_min=6",
                verdict_summary(classify_fairness(A, 2, res)));
    }
    {
        const TransitionMatrix A = parse_matrix("0111|1000|0100|0010");
        const AlgorithmResult res = run_algorithm(A);
        f.check("fan-with-feedback final R", "[1000|0100|1010|1201]",
                "[" + render_relation(res.R) + "]");
        f.check("fan-with-feedback verdict (k=3)", "NOT_FAIR",
                verdict_summary(classify_fairness(A, 3, res)));
        f.check("fan-with-feedback supp(A^7) all ones", "yes",
                power_support(A, 7).all_ones() ? "yes" : "no");
        const auto e = primitivity_exponent(A);
        f.check("fan-with-feedback primitivity exponent", "6",
                e ? std::to_string(*e) : "none");
    }
    {
        const TransitionMatrix A = parse_matrix("0111|1011|1101|1110");
        const AlgorithmResult res = run_algorithm(A);
        f.check("complement-of-identity final R (identity: immediate stall)",
                "[1000|0100|0010|0001]", "[" + render_relation(res.R) + "]");
        f.check("complement-of-identity verdict (k=2)", "INCONCLUSIVE",
                verdict_summary(classify_fairness(A, 2, res)));
        const Membership m = oracle_membership(A, 2, 2, caps);
        f.check("complement-of-identity oracle P(2,2)", "yes", m.in_p ? "yes" : "no");
        f.check("complement-of-identity oracle P*(2,2)", "yes", m.in_p_star ? "yes" : "no");
        f.check("complement-of-identity relations at n=2", "16",
                std::to_string(oracle_relations_at(A, 2, 2, caps).size()));
    }
    {
        const TransitionMatrix A = parse_matrix("011|100|010");
        const AlgorithmResult res = run_algorithm(A);
        f.check("one-relation-then-stall final R", "[100|010|101]",
                "[" + render_relation(res.R) + "]");
        f.check("one-relation-then-stall rounds", "1:(3,1)", rounds_summary(res));
        bool fair_somewhere = false;
        const auto levels = poss_family_levels(A, 2, 6, caps);
        for (int n = 1; n <= 6; ++n)
            fair_somewhere = fair_somewhere ||
                             membership_from_family(levels[static_cast<std::size_t>(n)], 3).in_p;
        f.check("one-relation-then-stall in P(2,n) for some n<=6", "no",
                fair_somewhere ? "yes" : "no");
    }
    {
        const TransitionMatrix A = parse_matrix("11|10");
        const LevelTable t = level_matrix_supports(A, 2, 1, caps);
        std::string rows;
        for (int i = 1; i <= 2; ++i) {
            if (i > 1) rows += "|";
            for (std::uint64_t c = 0; c < t.columns; ++c)
                rows += t.row_bits[static_cast<std::size_t>(i - 1)][c] ? '1' : '0';
        }
        f.check("two-symbol-level-table rows over columns 11,12,21,22", "1111|1000", rows);
        std::string from1;
        for (const RowConfiguration& xi : enumerate_labelings_naive(A, 2, 1, 1, caps))
            from1 += (from1.empty() ? "" : ",") + render_config(xi, 2);
        f.check("two-symbol-level-table row-1 set from root 1", "11,12,21,22", from1);
        std::string from2;
        for (const RowConfiguration& xi : enumerate_labelings_naive(A, 2, 1, 2, caps))
            from2 += (from2.empty() ? "" : ",") + render_config(xi, 2);
        f.check("two-symbol-level-table row-1 set from root 2", "11", from2);
    }

    std::cout << "examples: " << f.checks << " checks, " << f.failed << " failed\n";
    return f.failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"treefair: root-information transmission on regular k-trees"};
    app.require_subcommand(1);

    std::string an_matrix, an_file, an_caps, an_format = "text";
    int an_k = 0, an_depth = 0;
    bool an_trace = false;
    CLI::App* an = app.add_subcommand(
        "analyze", "Run the round algorithm on a matrix and classify it");
    an->add_option("matrix", an_matrix, "matrix text, rows separated by '|'");
    an->add_option("--file", an_file, "read the matrix from a file (one row per line)");
    an->add_option("--k", an_k, "tree dimension (children per site)")->required();
    an->add_flag("--trace", an_trace, "print the discovery rounds");
    an->add_option("--oracle-depth", an_depth,
                   "also query the exact oracle at n = 1..N and report membership");
    an->add_option("--format", an_format, "text or machine")
        ->check(CLI::IsMember({"text", "machine"}));
    an->add_option("--caps", an_caps, "capacity overrides, e.g. d=8,k=4,n=12,leaf=1000000");

    std::string or_matrix, or_file, or_caps, or_xi, or_format = "text";
    int or_k = 0, or_n = 0;
    bool or_degrees = false;
    CLI::App* orc = app.add_subcommand(
        "oracle", "Query the exact follower-set oracle at a fixed depth n");
    orc->add_option("matrix", or_matrix, "matrix text, rows separated by '|'");
    orc->add_option("--file", or_file, "read the matrix from a file (one row per line)");
    orc->add_option("--k", or_k, "tree dimension")->required();
    orc->add_option("--n", or_n, "row depth to query")->required();
    orc->add_option("--xi", or_xi, "row configuration (length k^n) to locate");
    orc->add_flag("--degrees", or_degrees, "include the pairwise first-relation depths");
    orc->add_option("--format", or_format, "text or machine")
        ->check(CLI::IsMember({"text", "machine"}));
    orc->add_option("--caps", or_caps, "capacity overrides");

    SweepSpec spec;
    std::vector<std::string> sw_filters;
    std::string sw_caps, sw_format = "text";
    bool sw_zero_rows = false, sw_obs = false;
    CLI::App* sw = app.add_subcommand(
        "sweep", "Cross-validate the algorithm against the oracle over all small matrices");
    sw->add_option("--d", spec.d, "alphabet size (exhaustive d<=4; d=5 needs --sample)");
    sw->add_option("--k", spec.k, "tree dimension");
    sw->add_option("--n-max", spec.n_max, "depth bound for the oracle comparison");
    sw->add_option("--filter", sw_filters,
                   "row-sum filters: 's_A<=k' or 's_A<=N' (repeatable)");
    sw->add_flag("--include-zero-rows", sw_zero_rows,
                 "also enumerate matrices with empty rows");
    sw->add_flag("--observations", sw_obs, "additionally check structural properties");
    sw->add_option("--sample", spec.sample, "d=5 only: number of sampled matrices");
    sw->add_option("--seed", spec.seed, "sampling seed");
    sw->add_option("--format", sw_format, "text or machine")
        ->check(CLI::IsMember({"text", "machine"}));
    sw->add_option("--caps", sw_caps, "capacity overrides");

    CLI::App* ex = app.add_subcommand(
        "examples", "Run the built-in fixtures and print expected vs actual");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        if (*an)
            return run_analyze(matrix_text(an_matrix, an_file), an_k, an_trace, an_depth,
                               an_format, an_caps);
        if (*orc)
            return run_oracle(matrix_text(or_matrix, or_file), or_k, or_n, or_xi,
                              or_degrees, or_format, or_caps);
        if (*sw) {
            spec.require_nonzero_rows = !sw_zero_rows;
            spec.caps = resolve_caps(sw_caps);
            for (const std::string& fl : sw_filters) {
                if (fl == "s_A<=k") {
                    spec.s_A_le_k = true;
                } else if (fl.rfind("s_A<=", 0) == 0) {
                    try {
                        spec.max_s_A = std::stoi(fl.substr(5));
                    } catch (const std::exception&) {
                        throw ParseError("unknown filter: " + fl +
                                         " (expected 's_A<=k' or 's_A<=N')");
                    }
                } else {
                    throw ParseError("unknown filter: " + fl +
                                     " (expected 's_A<=k' or 's_A<=N')");
                }
            }
            return run_sweep_cmd(spec, sw_obs, sw_format);
        }
        if (*ex) return run_examples();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
