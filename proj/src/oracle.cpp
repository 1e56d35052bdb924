#include "treefair/oracle.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "treefair/errors.hpp"

namespace treefair {

namespace {

constexpr std::uint64_t kLengthLimit = 1000000000000000000ull;

void check_oracle_caps(const TransitionMatrix& A, int k, int n, const Caps& caps) {
    if (k < 1) throw DomainError("k must be at least 1");
    if (n < 0) throw DomainError("depth must be nonnegative");
    if (A.d > caps.max_d)
        throw CapacityError("oracle alphabet cap d <= " + std::to_string(caps.max_d) +
                            " exceeded (d = " + std::to_string(A.d) +
                            "); raise with TREEFAIR_CAPS or --caps");
    if (k > caps.max_k)
        throw CapacityError("oracle dimension cap k <= " + std::to_string(caps.max_k) +
                            " exceeded (k = " + std::to_string(k) +
                            "); raise with TREEFAIR_CAPS or --caps");
    if (n > caps.max_n)
        throw CapacityError("oracle depth cap n <= " + std::to_string(caps.max_n) +
                            " exceeded (n = " + std::to_string(n) +
                            "); raise with TREEFAIR_CAPS or --caps");
}

SymbolSet predecessors(const TransitionMatrix& A, SymbolSet P) {
    SymbolSet out;
    for (int s = 1; s <= A.d; ++s)
        if (A.row(s).intersects(P)) out.insert(s);
    return out;
}

void sort_unique(std::vector<SymbolSet>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp,
                                         std::uint64_t limit) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && out > limit / base) return std::nullopt;
        out *= base;
        if (out > limit) return std::nullopt;
    }
    return out;
}

std::string render_config(const RowConfiguration& xi, int d) {
    std::string out;
    for (std::size_t s = 0; s < xi.size(); ++s) {
        int sym = static_cast<unsigned char>(xi[s]);
        if (d <= 9) {
            out += static_cast<char>('0' + sym);
        } else {
            if (s > 0) out += ",";
            out += std::to_string(sym);
        }
    }
    return out;
}

RowConfiguration parse_config(const std::string& text, int d) {
    RowConfiguration out;
    if (text.empty()) throw ParseError("empty row configuration");
    auto push = [&](int sym, std::size_t site) {
        if (sym < 1 || sym > d)
            throw ParseError("configuration symbol " + std::to_string(sym) + " at site " +
                             std::to_string(site + 1) + " is outside 1.." + std::to_string(d));
        out += static_cast<char>(sym);
    };
    if (d <= 9) {
        for (std::size_t s = 0; s < text.size(); ++s) {
            char c = text[s];
            if (c < '0' || c > '9')
                throw ParseError("configuration must be digits for d <= 9, got '" +
                                 std::string(1, c) + "'");
            push(c - '0', s);
        }
    } else {
        std::string cur;
        std::size_t site = 0;
        for (std::size_t idx = 0; idx <= text.size(); ++idx) {
            if (idx == text.size() || text[idx] == ',') {
                if (cur.empty()) throw ParseError("empty symbol in configuration");
                push(std::stoi(cur), site++);
                cur.clear();
            } else {
                cur += text[idx];
            }
        }
    }
    return out;
}

SymbolSet poss_root(const TransitionMatrix& A, int k, int n, const RowConfiguration& xi) {
    if (k < 1) throw DomainError("k must be at least 1");
    if (n < 0) throw DomainError("depth must be nonnegative");
    auto expected = checked_pow(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n),
                                kLengthLimit);
    if (!expected || *expected != xi.size())
        throw DomainError("configuration has " + std::to_string(xi.size()) +
                          " sites, expected k^n");
    std::vector<SymbolSet> cur;
    cur.reserve(xi.size());
    for (char c : xi) {
        int sym = static_cast<unsigned char>(c);
        if (sym < 1 || sym > A.d)
            throw DomainError("configuration symbol outside 1.." + std::to_string(A.d));
        cur.push_back(SymbolSet::single(sym));
    }
    while (cur.size() > 1) {
        std::vector<SymbolSet> up(cur.size() / static_cast<std::size_t>(k));
        for (std::size_t p = 0; p < up.size(); ++p) {
            SymbolSet acc = predecessors(A, cur[p * static_cast<std::size_t>(k)]);
            for (int g = 1; g < k; ++g)
                acc = acc & predecessors(A, cur[p * static_cast<std::size_t>(k) +
                                                static_cast<std::size_t>(g)]);
            up[p] = acc;
        }
        cur = std::move(up);
    }
    return cur[0];
}

bool PossFamily::contains(SymbolSet s) const {
    return std::binary_search(sets.begin(), sets.end(), s);
}

std::vector<PossFamily> poss_family_levels(const TransitionMatrix& A, int k, int n,
                                           const Caps& caps) {
    check_oracle_caps(A, k, n, caps);
    std::vector<PossFamily> levels;
    levels.reserve(static_cast<std::size_t>(n) + 1);
    PossFamily q0{0, {}};
    for (int s = 1; s <= A.d; ++s) q0.sets.push_back(SymbolSet::single(s));
    sort_unique(q0.sets);
    levels.push_back(std::move(q0));
    for (int m = 1; m <= n; ++m) {
        std::vector<SymbolSet> preds;
        preds.reserve(levels.back().sets.size());
        for (SymbolSet P : levels.back().sets) preds.push_back(predecessors(A, P));
        sort_unique(preds);
        // Intersections of 1..k predecessor sets; repeats collapse, so a
        // layered product over distinct values covers every k-multiset.
        std::vector<SymbolSet> acc = preds;
        std::vector<SymbolSet> frontier = preds;
        for (int t = 2; t <= k; ++t) {
            std::vector<SymbolSet> next;
            next.reserve(frontier.size());
            for (SymbolSet x : frontier)
                for (SymbolSet p : preds) next.push_back(x & p);
            sort_unique(next);
            std::size_t before = acc.size();
            acc.insert(acc.end(), next.begin(), next.end());
            sort_unique(acc);
            if (acc.size() == before) break; // layer added nothing; later layers cannot either
            frontier = std::move(next);
        }
        levels.push_back(PossFamily{m, std::move(acc)});
    }
    return levels;
}

PossFamily poss_family(const TransitionMatrix& A, int k, int n, const Caps& caps) {
    return poss_family_levels(A, k, n, caps).back();
}

bool OracleRelationSet::contains(int i, int j) const {
    return std::binary_search(pairs.begin(), pairs.end(), std::pair<int, int>{i, j});
}

OracleRelationSet relations_from_family(const PossFamily& fam, int d) {
    OracleRelationSet out{fam.n, d, {}};
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            bool separated = false;
            for (SymbolSet P : fam.sets)
                if (P.contains(i) && !P.contains(j)) {
                    separated = true;
                    break;
                }
            if (!separated) out.pairs.emplace_back(i, j);
        }
    return out;
}

OracleRelationSet oracle_relations_at(const TransitionMatrix& A, int k, int n,
                                      const Caps& caps) {
    return relations_from_family(poss_family(A, k, n, caps), A.d);
}

Membership membership_from_family(const PossFamily& fam, int d) {
    const SymbolSet full = SymbolSet::full(d);
    Membership out{true, true};
    for (SymbolSet P : fam.sets) {
        if (P != full) out.in_p_star = false;
        if (P != full && !P.empty()) out.in_p = false;
    }
    return out;
}

Membership oracle_membership(const TransitionMatrix& A, int k, int n, const Caps& caps) {
    require_nonzero_rows(A);
    if (n < 1) throw DomainError("membership requires n >= 1; row 0 is the root itself");
    return membership_from_family(poss_family(A, k, n, caps), A.d);
}

std::optional<int> relation_degree(const TransitionMatrix& A, int k, int i, int j,
                                   int n_max, const Caps& caps) {
    if (i < 1 || i > A.d || j < 1 || j > A.d)
        throw DomainError("symbols must lie in 1.." + std::to_string(A.d));
    auto levels = poss_family_levels(A, k, n_max, caps);
    for (int n = 0; n <= n_max; ++n) {
        bool separated = false;
        for (SymbolSet P : levels[static_cast<std::size_t>(n)].sets)
            if (P.contains(i) && !P.contains(j)) {
                separated = true;
                break;
            }
        if (!separated) return n;
    }
    return std::nullopt;
}

std::vector<RowConfiguration> enumerate_labelings_naive(const TransitionMatrix& A, int k,
                                                        int n, int root, const Caps& caps) {
    if (k < 1) throw DomainError("k must be at least 1");
    if (n < 0) throw DomainError("depth must be nonnegative");
    if (root < 1 || root > A.d)
        throw DomainError("root symbol must lie in 1.." + std::to_string(A.d));
    if (!checked_pow(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n),
                     caps.leaf_guard))
        throw CapacityError("row has more than leaf=" + std::to_string(caps.leaf_guard) +
                            " sites; raise with TREEFAIR_CAPS or --caps");

    std::uint64_t produced = 0;
    std::map<std::pair<int, int>, std::vector<RowConfiguration>> memo;

    auto spend = [&](std::uint64_t count) {
        produced += count;
        if (produced > caps.leaf_guard)
            throw CapacityError("labeling enumeration budget leaf=" +
                                std::to_string(caps.leaf_guard) +
                                " exceeded; raise with TREEFAIR_CAPS or --caps");
    };

    // follower(c, m) = row-m configurations below a vertex labeled c. Each
    // child independently picks a label in S(c) and a configuration below
    // it, so the result is the k-fold product of the merged child sets.
    auto follower = [&](auto&& self, int c, int m) -> const std::vector<RowConfiguration>& {
        auto key = std::make_pair(c, m);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::vector<RowConfiguration> result;
        if (m == 0) {
            spend(1);
            result.push_back(RowConfiguration(1, static_cast<char>(c)));
        } else {
            std::vector<RowConfiguration> child;
            for (int b : A.row(c).elements()) {
                const auto& sub = self(self, b, m - 1);
                child.insert(child.end(), sub.begin(), sub.end());
            }
            std::sort(child.begin(), child.end());
            child.erase(std::unique(child.begin(), child.end()), child.end());
            if (!child.empty()) {
                auto total = checked_pow(child.size(), static_cast<std::uint64_t>(k),
                                         caps.leaf_guard);
                if (!total)
                    throw CapacityError("labeling enumeration budget leaf=" +
                                        std::to_string(caps.leaf_guard) +
                                        " exceeded; raise with TREEFAIR_CAPS or --caps");
                spend(*total);
                std::vector<std::size_t> odo(static_cast<std::size_t>(k), 0);
                for (;;) {
                    RowConfiguration cfg;
                    for (std::size_t g = 0; g < odo.size(); ++g) cfg += child[odo[g]];
                    result.push_back(std::move(cfg));
                    std::size_t slot = odo.size();
                    while (slot > 0 && ++odo[slot - 1] == child.size()) odo[--slot] = 0;
                    if (slot == 0) break;
                }
            }
        }
        auto [it, inserted] = memo.emplace(key, std::move(result));
        (void)inserted;
        return it->second;
    };

    return follower(follower, root, n); // sorted: product of sorted equal-length parts
}

RowConfiguration LevelTable::config_at(std::uint64_t col) const {
    auto sites = checked_pow(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n),
                             kLengthLimit);
    RowConfiguration out(static_cast<std::size_t>(*sites), static_cast<char>(1));
    for (std::size_t pos = out.size(); pos-- > 0;) {
        out[pos] = static_cast<char>(1 + col % static_cast<std::uint64_t>(d));
        col /= static_cast<std::uint64_t>(d);
    }
    return out;
}

std::uint64_t LevelTable::index_of(const RowConfiguration& xi) const {
    std::uint64_t acc = 0;
    for (char c : xi) acc = acc * static_cast<std::uint64_t>(d) +
                            static_cast<std::uint64_t>(static_cast<unsigned char>(c) - 1);
    return acc;
}

bool LevelTable::at(int i, const RowConfiguration& xi) const {
    return row_bits[static_cast<std::size_t>(i - 1)][index_of(xi)];
}

LevelTable level_matrix_supports(const TransitionMatrix& A, int k, int n, const Caps& caps) {
    if (k < 1) throw DomainError("k must be at least 1");
    if (n < 0) throw DomainError("depth must be nonnegative");
    auto sites = checked_pow(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n),
                             caps.leaf_guard);
    if (!sites)
        throw CapacityError("row has more than leaf=" + std::to_string(caps.leaf_guard) +
                            " sites; raise with TREEFAIR_CAPS or --caps");
    auto final_width = checked_pow(static_cast<std::uint64_t>(A.d), *sites, caps.leaf_guard);
    if (!final_width)
        throw CapacityError("d^(k^n) row configurations exceed leaf=" +
                            std::to_string(caps.leaf_guard) +
                            "; raise with TREEFAIR_CAPS or --caps");

    LevelTable out{A.d, k, n, *final_width, {}};
    if (A.d == 1) {
        // One symbol: the single column is reachable iff the loop exists
        // (or trivially at n = 0).
        out.row_bits.assign(1, std::vector<bool>(1, n == 0 || !A.row(1).empty()));
        return out;
    }

    std::vector<std::vector<bool>> cur(static_cast<std::size_t>(A.d),
                                       std::vector<bool>(static_cast<std::size_t>(A.d), false));
    for (int i = 1; i <= A.d; ++i) cur[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)] = true;

    std::uint64_t width = static_cast<std::uint64_t>(A.d); // d^(k^m), level 0
    std::uint64_t level_sites = 1;                         // k^m
    for (int m = 0; m < n; ++m) {
        const std::uint64_t next_sites = level_sites * static_cast<std::uint64_t>(k);
        const std::uint64_t next_width = *checked_pow(static_cast<std::uint64_t>(A.d),
                                                      next_sites, caps.leaf_guard);
        std::vector<int> digits(static_cast<std::size_t>(level_sites));
        std::vector<std::vector<bool>> next(static_cast<std::size_t>(A.d),
                                            std::vector<bool>(static_cast<std::size_t>(next_width), false));
        for (int i = 0; i < A.d; ++i) {
            for (std::uint64_t u = 0; u < width; ++u) {
                if (!cur[static_cast<std::size_t>(i)][static_cast<std::size_t>(u)]) continue;
                std::uint64_t rem = u;
                for (std::size_t pos = digits.size(); pos-- > 0;) {
                    digits[pos] = static_cast<int>(rem % static_cast<std::uint64_t>(A.d));
                    rem /= static_cast<std::uint64_t>(A.d);
                }
                // Expand one row-m configuration: every site's k children
                // range over the site symbol's successors.
                auto expand = [&](auto&& self, std::size_t slot, std::uint64_t acc) -> void {
                    if (slot == next_sites) {
                        next[static_cast<std::size_t>(i)][static_cast<std::size_t>(acc)] = true;
                        return;
                    }
                    const int parent = digits[slot / static_cast<std::size_t>(k)] + 1;
                    for (int b : A.row(parent).elements())
                        self(self, slot + 1,
                             acc * static_cast<std::uint64_t>(A.d) +
                                 static_cast<std::uint64_t>(b - 1));
                };
                expand(expand, 0, 0);
            }
        }
        cur = std::move(next);
        width = next_width;
        level_sites = next_sites;
    }
    out.row_bits = std::move(cur);
    return out;
}

} // namespace treefair
