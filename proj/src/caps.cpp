#include "treefair/caps.hpp"

#include <cstdlib>
#include <string>
#include <vector>

#include "treefair/errors.hpp"

namespace treefair {

namespace {

std::uint64_t parse_positive(const std::string& key, const std::string& value) {
    if (value.empty()) throw DomainError("caps: empty value for '" + key + "'");
    std::uint64_t out = 0;
    for (char c : value) {
        if (c < '0' || c > '9')
            throw DomainError("caps: non-numeric value '" + value + "' for '" + key + "'");
        out = out * 10 + static_cast<std::uint64_t>(c - '0');
        if (out > 1000000000000ull) throw DomainError("caps: value too large for '" + key + "'");
    }
    if (out == 0) throw DomainError("caps: '" + key + "' must be positive");
    return out;
}

} // namespace

Caps parse_caps(const std::string& text, Caps base) {
    Caps out = base;
    std::string cur;
    std::vector<std::string> items;
    for (char c : text) {
        if (c == ',') {
            items.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    items.push_back(cur);
    for (const std::string& item : items) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw DomainError("caps: expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::uint64_t value = parse_positive(key, item.substr(eq + 1));
        if (key == "d")
            out.max_d = static_cast<int>(value);
        else if (key == "k")
            out.max_k = static_cast<int>(value);
        else if (key == "n")
            out.max_n = static_cast<int>(value);
        else if (key == "leaf")
            out.leaf_guard = value;
        else
            throw DomainError("caps: unknown key '" + key + "' (known: d, k, n, leaf)");
    }
    return out;
}

Caps default_caps() {
    Caps out;
    if (const char* env = std::getenv("TREEFAIR_CAPS"))
        out = parse_caps(env, out);
    return out;
}

} // namespace treefair
