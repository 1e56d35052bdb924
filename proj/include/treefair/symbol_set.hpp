#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace treefair {

// Subset of the alphabet {1..d}. Bit s-1 stands for symbol s; d <= 64.
struct SymbolSet {
    std::uint64_t bits = 0;

    static SymbolSet full(int d) {
        return {d >= 64 ? ~0ull : (1ull << d) - 1};
    }
    static SymbolSet single(int s) { return {1ull << (s - 1)}; }

    bool contains(int s) const { return (bits >> (s - 1)) & 1; }
    void insert(int s) { bits |= 1ull << (s - 1); }
    void erase(int s) { bits &= ~(1ull << (s - 1)); }

    bool empty() const { return bits == 0; }
    int size() const { return std::popcount(bits); }
    bool subset_of(SymbolSet o) const { return (bits & ~o.bits) == 0; }
    bool intersects(SymbolSet o) const { return (bits & o.bits) != 0; }

    friend SymbolSet operator&(SymbolSet a, SymbolSet b) { return {a.bits & b.bits}; }
    friend SymbolSet operator|(SymbolSet a, SymbolSet b) { return {a.bits | b.bits}; }
    friend bool operator==(SymbolSet, SymbolSet) = default;
    friend auto operator<=>(SymbolSet, SymbolSet) = default;

    std::vector<int> elements() const {
        std::vector<int> out;
        for (std::uint64_t m = bits; m; m &= m - 1)
            out.push_back(std::countr_zero(m) + 1);
        return out;
    }
};

// "{1,3}"; "{}" for the empty set.
inline std::string to_set_text(SymbolSet s) {
    std::string out = "{";
    bool first = true;
    for (int e : s.elements()) {
        if (!first) out += ",";
        out += std::to_string(e);
        first = false;
    }
    return out + "}";
}

// 0/1 string of length d, e.g. "101".
inline std::string to_row_text(SymbolSet s, int d) {
    std::string out(static_cast<std::size_t>(d), '0');
    for (int j = 1; j <= d; ++j)
        if (s.contains(j)) out[static_cast<std::size_t>(j - 1)] = '1';
    return out;
}

} // namespace treefair
