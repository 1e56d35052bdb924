#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treefair/symbol_set.hpp"

namespace treefair {

// d x d 0/1 transition matrix, stored as successor sets: rows[i-1] = S(i).
// A labeling of the k-tree is valid when every child's symbol lies in the
// successor set of its parent's symbol.
struct TransitionMatrix {
    int d = 0;
    std::vector<SymbolSet> rows;

    SymbolSet row(int i) const { return rows[static_cast<std::size_t>(i - 1)]; }
    friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;
};

// Validates 1 <= d <= 64 and rows[i] subset of {1..d}.
TransitionMatrix make_matrix(int d, std::vector<SymbolSet> rows);

// Accepts rows of equal length over {0,1} separated by '|' or newlines,
// e.g. "110|001|100"; the number of rows must equal the row length.
TransitionMatrix parse_matrix(const std::string& text);

// Canonical text: rows joined by '|'. parse_matrix(render_matrix(A)) == A.
std::string render_matrix(const TransitionMatrix& A);

// Throws DomainError naming the first empty row. A zero row means symbol i
// admits no children, so no labeling reaches past it; analysis entry points
// reject such matrices.
void require_nonzero_rows(const TransitionMatrix& A);

int row_sum(const TransitionMatrix& A, int i);
int max_row_sum(const TransitionMatrix& A); // s_A

// Positivity pattern of a matrix power, same row-set representation.
struct SupportMatrix {
    int d = 0;
    std::vector<SymbolSet> rows;

    SymbolSet row(int i) const { return rows[static_cast<std::size_t>(i - 1)]; }
    bool all_ones() const;
    friend bool operator==(const SupportMatrix&, const SupportMatrix&) = default;
};

std::string render_support(const SupportMatrix& S);

// supp(A^n) over the boolean (OR/AND) semiring; n = 0 yields the identity.
SupportMatrix power_support(const TransitionMatrix& A, int n);

// Boolean product of two supports.
SupportMatrix support_product(const SupportMatrix& X, const SupportMatrix& Y);

// Least p >= 1 with supp(A^p) all-ones, searched up to the classical
// bound (d-1)^2 + 1; absent means A is not primitive.
std::optional<int> primitivity_exponent(const TransitionMatrix& A);

// True iff some row equals {1..d}.
bool has_positive_row(const TransitionMatrix& A);

// True iff every k-tuple over {1..d} is contained in some successor set.
// Tuples may repeat symbols, so this reduces to: every nonempty subset of
// size <= min(k,d) lies in some S(i).
bool all_ktuples_have_common_predecessor(const TransitionMatrix& A, int k);

} // namespace treefair
