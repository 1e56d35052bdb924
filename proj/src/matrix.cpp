#include "treefair/matrix.hpp"

#include <string>

#include "treefair/errors.hpp"

namespace treefair {

TransitionMatrix make_matrix(int d, std::vector<SymbolSet> rows) {
    if (d < 1) throw DomainError("alphabet size must be at least 1");
    if (d > 64) throw CapacityError("alphabet size cap: d <= 64 (got d = " + std::to_string(d) + ")");
    if (static_cast<int>(rows.size()) != d)
        throw DomainError("expected " + std::to_string(d) + " rows, got " +
                          std::to_string(rows.size()));
    const SymbolSet full = SymbolSet::full(d);
    for (int i = 1; i <= d; ++i)
        if (!rows[static_cast<std::size_t>(i - 1)].subset_of(full))
            throw DomainError("row " + std::to_string(i) + " contains a symbol above " +
                              std::to_string(d));
    return {d, std::move(rows)};
}

TransitionMatrix parse_matrix(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == '|' || c == '\n') {
            parts.push_back(cur);
            cur.clear();
        } else if (c != '\r' && c != ' ' && c != '\t') {
            cur += c;
        }
    }
    parts.push_back(cur);
    while (!parts.empty() && parts.back().empty()) parts.pop_back();
    if (parts.empty()) throw ParseError("empty matrix text");

    const std::size_t d = parts.size();
    if (d > 64) throw CapacityError("alphabet size cap: d <= 64 (got d = " + std::to_string(d) + ")");
    std::vector<SymbolSet> rows(d);
    for (std::size_t i = 0; i < d; ++i) {
        const std::string& row = parts[i];
        if (row.size() != d)
            throw ParseError("row " + std::to_string(i + 1) + " has " +
                             std::to_string(row.size()) + " columns, expected " +
                             std::to_string(d) + " (matrix must be square)");
        for (std::size_t j = 0; j < d; ++j) {
            char c = row[j];
            if (c == '1')
                rows[i].insert(static_cast<int>(j + 1));
            else if (c != '0')
                throw ParseError("illegal character '" + std::string(1, c) + "' at row " +
                                 std::to_string(i + 1) + ", column " + std::to_string(j + 1));
        }
    }
    return {static_cast<int>(d), std::move(rows)};
}

std::string render_matrix(const TransitionMatrix& A) {
    std::string out;
    for (int i = 1; i <= A.d; ++i) {
        if (i > 1) out += "|";
        out += to_row_text(A.row(i), A.d);
    }
    return out;
}

void require_nonzero_rows(const TransitionMatrix& A) {
    for (int i = 1; i <= A.d; ++i)
        if (A.row(i).empty())
            throw DomainError("row " + std::to_string(i) +
                              " is zero: symbol " + std::to_string(i) +
                              " has no followers, so no labeling extends past it");
}

int row_sum(const TransitionMatrix& A, int i) { return A.row(i).size(); }

int max_row_sum(const TransitionMatrix& A) {
    int best = 0;
    for (int i = 1; i <= A.d; ++i) best = std::max(best, A.row(i).size());
    return best;
}

bool SupportMatrix::all_ones() const {
    const SymbolSet full = SymbolSet::full(d);
    for (const SymbolSet& r : rows)
        if (r != full) return false;
    return true;
}

std::string render_support(const SupportMatrix& S) {
    std::string out;
    for (int i = 1; i <= S.d; ++i) {
        if (i > 1) out += "|";
        out += to_row_text(S.row(i), S.d);
    }
    return out;
}

SupportMatrix support_product(const SupportMatrix& X, const SupportMatrix& Y) {
    if (X.d != Y.d) throw DomainError("support product requires equal dimensions");
    SupportMatrix out{X.d, std::vector<SymbolSet>(static_cast<std::size_t>(X.d))};
    for (int i = 1; i <= X.d; ++i) {
        SymbolSet acc;
        for (int j : X.row(i).elements()) acc = acc | Y.row(j);
        out.rows[static_cast<std::size_t>(i - 1)] = acc;
    }
    return out;
}

SupportMatrix power_support(const TransitionMatrix& A, int n) {
    if (n < 0) throw DomainError("power_support requires n >= 0");
    SupportMatrix acc{A.d, {}};
    for (int i = 1; i <= A.d; ++i) acc.rows.push_back(SymbolSet::single(i));
    const SupportMatrix base{A.d, A.rows};
    for (int step = 0; step < n; ++step) acc = support_product(acc, base);
    return acc;
}

std::optional<int> primitivity_exponent(const TransitionMatrix& A) {
    const int cap = (A.d - 1) * (A.d - 1) + 1;
    SupportMatrix pw{A.d, {}};
    for (int i = 1; i <= A.d; ++i) pw.rows.push_back(SymbolSet::single(i));
    const SupportMatrix base{A.d, A.rows};
    for (int p = 1; p <= cap; ++p) {
        pw = support_product(pw, base);
        if (pw.all_ones()) return p;
    }
    return std::nullopt;
}

bool has_positive_row(const TransitionMatrix& A) {
    const SymbolSet full = SymbolSet::full(A.d);
    for (int i = 1; i <= A.d; ++i)
        if (A.row(i) == full) return true;
    return false;
}

bool all_ktuples_have_common_predecessor(const TransitionMatrix& A, int k) {
    if (k < 1) throw DomainError("k must be at least 1");
    const int limit = std::min(k, A.d);
    const std::uint64_t top = A.d >= 64 ? ~0ull : (1ull << A.d) - 1;
    for (std::uint64_t bits = 1; bits <= top; ++bits) {
        SymbolSet tuple{bits};
        if (tuple.size() > limit) continue;
        bool covered = false;
        for (int i = 1; i <= A.d && !covered; ++i)
            covered = tuple.subset_of(A.row(i));
        if (!covered) return false;
    }
    return true;
}

} // namespace treefair
