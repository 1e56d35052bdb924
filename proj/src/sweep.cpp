#include "treefair/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <set>
#include <thread>

#include "treefair/errors.hpp"

namespace treefair {

namespace {

TransitionMatrix matrix_from_code(int d, std::uint64_t code) {
    std::vector<SymbolSet> rows(static_cast<std::size_t>(d));
    const int bits = d * d;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if ((code >> (bits - 1 - (i * d + j))) & 1)
                rows[static_cast<std::size_t>(i)].insert(j + 1);
    return {d, std::move(rows)};
}

bool passes_filters(const TransitionMatrix& A, const SweepSpec& spec) {
    if (spec.require_nonzero_rows)
        for (const SymbolSet& r : A.rows)
            if (r.empty()) return false;
    const int s = max_row_sum(A);
    if (spec.max_s_A && s > *spec.max_s_A) return false;
    if (spec.s_A_le_k && s > spec.k) return false;
    return true;
}

} // namespace

std::vector<TransitionMatrix> enumerate_matrices(const SweepSpec& spec) {
    if (spec.d < 1) throw DomainError("sweep alphabet size must be at least 1");
    if (spec.d >= 6)
        throw CapacityError("matrix enumeration cap: d <= 5 (2^(d^2) candidates beyond that)");
    std::vector<TransitionMatrix> out;
    if (spec.d <= 4) {
        const std::uint64_t total = 1ull << (spec.d * spec.d);
        for (std::uint64_t code = 0; code < total; ++code) {
            TransitionMatrix A = matrix_from_code(spec.d, code);
            if (passes_filters(A, spec)) out.push_back(std::move(A));
        }
        return out;
    }
    // d = 5: deterministic sample, reported in ascending code order.
    if (spec.sample <= 0)
        throw DomainError("d = 5 sweeps are sampled; set sample > 0");
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, (1ull << 25) - 1);
    std::set<std::uint64_t> codes;
    std::uint64_t attempts = 0;
    const std::uint64_t attempt_cap =
        static_cast<std::uint64_t>(spec.sample) * 10000ull + 1000000ull;
    while (codes.size() < static_cast<std::size_t>(spec.sample) && attempts < attempt_cap) {
        ++attempts;
        const std::uint64_t code = dist(rng);
        if (codes.count(code)) continue;
        if (passes_filters(matrix_from_code(spec.d, code), spec)) codes.insert(code);
    }
    for (std::uint64_t code : codes) out.push_back(matrix_from_code(spec.d, code));
    return out;
}

std::vector<Discrepancy> cross_validate(const TransitionMatrix& A, int k, int n_max,
                                        const Caps& caps) {
    require_nonzero_rows(A);
    if (k < 1) throw DomainError("k must be at least 1");
    const std::string text = render_matrix(A);
    const bool complete_regime = k >= max_row_sum(A);

    const AlgorithmResult res = run_algorithm(A);
    const auto levels = poss_family_levels(A, k, n_max, caps);
    std::vector<OracleRelationSet> rel;
    rel.reserve(levels.size());
    for (const PossFamily& fam : levels) rel.push_back(relations_from_family(fam, A.d));

    std::vector<Discrepancy> out;
    for (const RoundTrace& t : res.rounds) {
        for (const Discovery& disc : t.discoveries) {
            if (t.round > n_max) {
                out.push_back({"unchecked", text, k, disc.i, disc.j, t.round,
                               "height " + std::to_string(t.round) +
                                   " exceeds checked depth " + std::to_string(n_max),
                               false});
            } else if (!rel[static_cast<std::size_t>(t.round)].contains(disc.i, disc.j)) {
                out.push_back({"soundness", text, k, disc.i, disc.j, t.round,
                               "discovered at round " + std::to_string(t.round) +
                                   " but follower containment fails at that depth",
                               true});
            }
        }
    }
    for (int i = 1; i <= A.d; ++i) {
        for (int j = 1; j <= A.d; ++j) {
            if (i == j) continue;
            int degree = -1;
            for (int n = 0; n <= n_max; ++n)
                if (rel[static_cast<std::size_t>(n)].contains(i, j)) {
                    degree = n;
                    break;
                }
            if (degree < 0) continue;
            const int h = res.R.at(i, j);
            if (h == degree) continue;
            out.push_back({"completeness", text, k, i, j, degree,
                           h == 0 ? "oracle degree " + std::to_string(degree) +
                                        " but never discovered"
                                  : "oracle degree " + std::to_string(degree) + " but height " +
                                        std::to_string(h),
                           complete_regime});
        }
    }
    return out;
}

std::vector<Discrepancy> verify_observations(const SweepSpec& spec) {
    std::vector<Discrepancy> out;
    auto push = [&](std::string kind, const std::string& text, int i, int j, int n,
                    std::string detail) {
        out.push_back({std::move(kind), text, spec.k, i, j, n, std::move(detail), true});
    };
    for (const TransitionMatrix& A : enumerate_matrices(spec)) {
        bool zero_row = false;
        for (const SymbolSet& r : A.rows) zero_row = zero_row || r.empty();
        if (zero_row) continue; // no labelings to compare

        const std::string text = render_matrix(A);
        const int d = A.d, k = spec.k, nm = spec.n_max;
        const auto exp = primitivity_exponent(A);
        const bool posrow = has_positive_row(A);
        const bool ktuple = all_ktuples_have_common_predecessor(A, k);

        bool no_zero_col = true;
        for (int j = 1; j <= d && no_zero_col; ++j) {
            bool hit = false;
            for (int i = 1; i <= d && !hit; ++i) hit = A.row(i).contains(j);
            no_zero_col = hit;
        }

        int depth = nm + 1;
        if (exp) depth = std::max(depth, *exp + 2);
        const auto levels_k = poss_family_levels(A, k, depth, spec.caps);
        const auto levels_k1 = poss_family_levels(A, k + 1, nm, spec.caps);
        auto memb = [&](const std::vector<PossFamily>& lv, int n) {
            return membership_from_family(lv[static_cast<std::size_t>(n)], d);
        };

        for (int n = 1; n <= nm; ++n) {
            const Membership mk = memb(levels_k, n);
            if (mk.in_p_star && !mk.in_p)
                push("complete-implies-fair", text, 0, 0, n, "complete without being fair");
            if (no_zero_col && mk.in_p) {
                // Fairness shares every reachable row configuration across
                // all roots; with every column nonzero, every symbol is
                // n-step reachable, forcing supp(A^n) all-ones.
                if (!power_support(A, n).all_ones())
                    push("fair-implies-positive-power", text, 0, 0, n,
                         "fair at n but supp(A^n) has a zero");
                if (!exp)
                    push("fair-implies-primitive", text, 0, 0, n,
                         "fair at n but no power has all-positive support");
            }
            if (memb(levels_k1, n).in_p && !mk.in_p)
                push("fair-antitone-in-k", text, 0, 0, n,
                     "fair on the (k+1)-tree but not the k-tree");
            if (mk.in_p && !memb(levels_k, n + 1).in_p)
                push("fair-monotone-in-n", text, 0, 0, n,
                     "fair at row n but not at row n+1");
            if (mk.in_p_star != (mk.in_p && ktuple))
                push("complete-iff-fair-and-common-predecessor", text, 0, 0, n,
                     "completeness disagrees with fair + common-predecessor");
        }
        if (exp && posrow && !memb(levels_k, *exp + 1).in_p)
            push("positive-row-fair-after-exponent", text, 0, 0, *exp + 1,
                 "primitive with a positive row but unfair one row past the exponent");
        if (d == k + 1 && exp) {
            bool star = false;
            for (int n = 1; n <= *exp + 2 && !star; ++n) star = memb(levels_k, n).in_p_star;
            if (star != posrow)
                push("positive-row-criterion", text, 0, 0, *exp + 2,
                     star ? "complete without a positive row"
                          : "positive row but never complete up to exponent + 2");
        }
        if (text == "011|100|010" && k == 2) {
            const Verdict v = classify_fairness(A, k);
            bool oracle_unfair = true;
            for (int n = 1; n <= nm && oracle_unfair; ++n)
                oracle_unfair = !memb(levels_k, n).in_p;
            if (v.status != Status::NOT_FAIR || !oracle_unfair)
                push("stall-proves-unfair-for-all-n", text, 0, 0, nm,
                     "stalled discovery must rule this matrix out for every n");
        }
    }
    return out;
}

SweepReport run_sweep(const SweepSpec& spec, bool with_observations) {
    SweepReport rep;
    rep.spec = spec;
    rep.with_observations = with_observations;
    const std::vector<TransitionMatrix> mats = enumerate_matrices(spec);
    rep.rows.resize(mats.size());

    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto work = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= mats.size()) return;
            try {
                const TransitionMatrix& A = mats[idx];
                SweepRow row;
                row.matrix = render_matrix(A);
                row.s_A = max_row_sum(A);
                const AlgorithmResult res = run_algorithm(A);
                row.verdict = classify_fairness(A, spec.k, res);
                row.stalled_at = res.stalled_at;
                row.discrepancies = cross_validate(A, spec.k, spec.n_max, spec.caps);
                if (row.verdict.status == Status::INCONCLUSIVE) {
                    const auto levels = poss_family_levels(A, spec.k, spec.n_max, spec.caps);
                    for (int n = 1; n <= spec.n_max; ++n)
                        if (membership_from_family(levels[static_cast<std::size_t>(n)], A.d).in_p) {
                            row.oracle_fair_n = n;
                            break;
                        }
                }
                rep.rows[idx] = std::move(row);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    const std::size_t nthreads = std::min<std::size_t>(std::max(1u, hw), 16);
    if (nthreads <= 1 || mats.size() <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    for (const SweepRow& row : rep.rows) {
        rep.max_stall = std::max(rep.max_stall, row.stalled_at);
        for (const Discrepancy& disc : row.discrepancies)
            (disc.asserted ? rep.asserted_count : rep.info_count) += 1;
    }
    if (with_observations) {
        rep.observation_discrepancies = verify_observations(spec);
        rep.asserted_count += rep.observation_discrepancies.size();
    }
    return rep;
}

} // namespace treefair
