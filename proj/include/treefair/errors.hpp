#pragma once

#include <stdexcept>

namespace treefair {

// Malformed matrix or row-configuration text.
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Structurally valid input outside an operation's domain
// (zero row where labelings must exist, n = 0 fairness query, illegal move).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A configured work or size bound was exceeded; the message names the cap.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace treefair
