#include "treefair/relation.hpp"

#include <algorithm>
#include <stdexcept>

#include "treefair/errors.hpp"

namespace treefair {

RelationMatrix RelationMatrix::identity(int d) {
    RelationMatrix out{d, std::vector<int>(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0)};
    for (int i = 1; i <= d; ++i) out.at(i, i) = 1;
    return out;
}

bool RelationMatrix::all_positive() const {
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            if (i != j && at(i, j) == 0) return false;
    return true;
}

int RelationMatrix::max_entry() const {
    int best = 0;
    for (int v : e) best = std::max(best, v);
    return best;
}

int RelationMatrix::max_offdiag() const {
    int best = 0;
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            if (i != j) best = std::max(best, at(i, j));
    return best;
}

std::string render_relation(const RelationMatrix& R) {
    const bool wide = R.max_entry() > 9;
    std::string out;
    for (int i = 1; i <= R.d; ++i) {
        if (i > 1) out += "|";
        for (int j = 1; j <= R.d; ++j) {
            if (wide && j > 1) out += ",";
            out += std::to_string(R.at(i, j));
        }
    }
    return out;
}

RelationMatrix parse_relation(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == '|') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    const int d = static_cast<int>(parts.size());
    RelationMatrix out{d, std::vector<int>(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0)};
    for (int i = 1; i <= d; ++i) {
        const std::string& row = parts[static_cast<std::size_t>(i - 1)];
        if (static_cast<int>(row.size()) != d)
            throw ParseError("relation row " + std::to_string(i) + " has wrong length");
        for (int j = 1; j <= d; ++j) {
            char c = row[static_cast<std::size_t>(j - 1)];
            if (c < '0' || c > '9') throw ParseError("relation entries must be digits");
            out.at(i, j) = c - '0';
        }
    }
    return out;
}

SymbolSet apply_moves(SymbolSet row, const std::vector<std::pair<int, int>>& moves) {
    SymbolSet removed, inserted;
    for (auto [a, b] : moves) {
        if (!row.contains(a))
            throw DomainError("move (" + std::to_string(a) + "," + std::to_string(b) +
                              "): " + std::to_string(a) + " is not in the row");
        if (a == b)
            throw DomainError("move (" + std::to_string(a) + "," + std::to_string(b) +
                              "): source and target must differ");
        if (removed.contains(a))
            throw DomainError("moves must have pairwise distinct sources (" +
                              std::to_string(a) + " repeats)");
        removed.insert(a);
        inserted.insert(b);
    }
    // Simultaneous semantics: drop all sources, add all targets. Applying
    // the moves one at a time would depend on their order whenever some
    // target equals a later source.
    return SymbolSet{(row.bits & ~removed.bits) | inserted.bits};
}

std::pair<RelationMatrix, RoundTrace> round_step(const TransitionMatrix& A,
                                                 const RelationMatrix& R) {
    if (R.d != A.d) throw DomainError("relation matrix dimension mismatch");
    require_nonzero_rows(A);
    // R_0 = I carries diagonal 1s, so the round counter must come from the
    // off-diagonal part: entering round n+1, the largest off-diagonal entry
    // is n.
    const int round = R.max_offdiag() + 1;
    RelationMatrix out = R;
    RoundTrace trace{round, {}};
    for (int i = 1; i <= A.d; ++i) {
        for (int j = 1; j <= A.d; ++j) {
            if (R.at(i, j) != 0) continue;
            Discovery disc{i, j, {}};
            bool ok = true;
            for (int a : A.row(i).elements()) {
                int chosen = 0;
                for (int b : A.row(j).elements()) {
                    if (R.at(a, b) > 0) { // input R only: same-round
                        chosen = b;       // discoveries are not usable
                        break;
                    }
                }
                if (chosen == 0) {
                    ok = false;
                    break;
                }
                disc.witness.emplace_back(a, chosen);
            }
            if (ok) {
                out.at(i, j) = round;
                trace.discoveries.push_back(std::move(disc));
            }
        }
    }
    return {std::move(out), std::move(trace)};
}

AlgorithmResult run_algorithm(const TransitionMatrix& A) {
    require_nonzero_rows(A);
    AlgorithmResult res;
    res.R = RelationMatrix::identity(A.d);
    const int limit = A.d * A.d + 1;
    for (;;) {
        auto [next, trace] = round_step(A, res.R);
        if (trace.discoveries.empty()) {
            res.stalled_at = trace.round;
            break;
        }
        if (trace.round > limit)
            throw std::logic_error("round count exceeded d^2 + 1; this cannot happen");
        res.R = std::move(next);
        res.rounds.push_back(std::move(trace));
    }
    res.all_positive = res.R.all_positive();
    if (res.all_positive) res.max_height = res.R.max_entry();
    return res;
}

std::string to_string(Status s) {
    switch (s) {
        case Status::FAIR: return "FAIR";
        case Status::NOT_FAIR: return "NOT_FAIR";
        default: return "INCONCLUSIVE";
    }
}

Verdict classify_fairness(const TransitionMatrix& A, int k, const AlgorithmResult& res) {
    if (k < 1) throw DomainError("k must be at least 1");
    const bool complete = k >= max_row_sum(A);
    if (res.all_positive) {
        // Discovered relations are real at their heights regardless of k,
        // so an all-positive R proves membership for every n >= max height.
        // Minimality of that bound needs k >= s_A.
        return {Status::FAIR, res.max_height, complete,
                complete ? "complete-discovery" : "sound-discovery"};
    }
    if (complete) {
        // With k >= s_A every true relation is eventually discovered, so a
        // stall with a missing pair rules out membership for every n.
        return {Status::NOT_FAIR, std::nullopt, false, "complete-discovery"};
    }
    return {Status::INCONCLUSIVE, std::nullopt, false, ""};
}

Verdict classify_fairness(const TransitionMatrix& A, int k) {
    return classify_fairness(A, k, run_algorithm(A));
}

} // namespace treefair
