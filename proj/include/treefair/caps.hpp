#pragma once

#include <cstdint>
#include <string>

namespace treefair {

// Capacity knobs for the oracle and enumeration paths. Defaults are sized so
// every bundled analysis finishes in seconds; raise them explicitly (or via
// the TREEFAIR_CAPS environment variable) for bigger experiments.
struct Caps {
    int max_d = 8;                      // alphabet size for oracle computations
    int max_k = 4;                      // tree dimension for oracle computations
    int max_n = 12;                     // depth for membership / degree queries
    std::uint64_t leaf_guard = 1000000; // max enumerated row configurations

    friend bool operator==(const Caps&, const Caps&) = default;
};

// Built-in defaults with TREEFAIR_CAPS (if set) applied on top.
Caps default_caps();

// Applies overrides in "d=8,k=4,n=12,leaf=1000000" form (any subset of keys)
// on top of base. Unknown keys or non-positive values throw DomainError.
Caps parse_caps(const std::string& text, Caps base);

} // namespace treefair
