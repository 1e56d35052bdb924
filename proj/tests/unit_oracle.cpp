#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "treefair/errors.hpp"
#include "treefair/oracle.hpp"

using namespace treefair;

namespace {

RowConfiguration bytes(std::initializer_list<int> symbols) {
    RowConfiguration out;
    for (int s : symbols) out += static_cast<char>(s);
    return out;
}

std::string family_text(const PossFamily& fam) {
    std::string out;
    for (std::size_t i = 0; i < fam.sets.size(); ++i)
        out += (i ? " " : "") + to_set_text(fam.sets[i]);
    return out;
}

// Q_n recomputed the expensive way: poss_root over every configuration.
PossFamily family_by_enumeration(const TransitionMatrix& A, int k, int n) {
    const LevelTable t = level_matrix_supports(A, k, n);
    std::vector<SymbolSet> sets;
    for (std::uint64_t c = 0; c < t.columns; ++c)
        sets.push_back(poss_root(A, k, n, t.config_at(c)));
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    return {n, std::move(sets)};
}

} // namespace

TEST_CASE("row configurations render and parse") {
    CHECK(render_config(bytes({1, 2}), 3) == "12");
    CHECK(parse_config("12", 3) == bytes({1, 2}));
    CHECK(parse_config("3", 3) == bytes({3}));
    CHECK(render_config(bytes({10, 2, 12}), 12) == "10,2,12");
    CHECK(parse_config("10,2,12", 12) == bytes({10, 2, 12}));
    CHECK_THROWS_AS(parse_config("", 3), ParseError);
    CHECK_THROWS_AS(parse_config("14", 3), ParseError);
    CHECK_THROWS_AS(parse_config("0", 3), ParseError);
    CHECK_THROWS_AS(parse_config("1a", 3), ParseError);
    CHECK_THROWS_AS(parse_config("1,,2", 12), ParseError);
    CHECK_THROWS_AS(parse_config("13,2", 12), ParseError);
}

TEST_CASE("checked_pow saturates against the limit") {
    CHECK(checked_pow(2, 10, 1024) == 1024);
    CHECK(!checked_pow(2, 10, 1023));
    CHECK(checked_pow(7, 0, 1) == 1);
    CHECK(checked_pow(0, 5, 10) == 0);
    CHECK(checked_pow(1, 1000, 1) == 1);
    CHECK(!checked_pow(10, 30, 1000000000000000000ull));
}

TEST_CASE("poss_root computes reachable roots bottom-up") {
    const TransitionMatrix A = parse_matrix("110|001|100");
    // pred({1}) = {1,3} meets pred({2}) = {1} in {1}
    CHECK(to_set_text(poss_root(A, 2, 1, bytes({1, 2}))) == "{1}");
    CHECK(to_set_text(poss_root(A, 2, 1, bytes({3, 3}))) == "{2}");
    CHECK(to_set_text(poss_root(A, 2, 1, bytes({1, 3}))) == "{}");
    CHECK(to_set_text(poss_root(A, 2, 2, bytes({1, 2, 1, 2}))) == "{1,3}");
    // row 0 is the root itself
    CHECK(to_set_text(poss_root(A, 2, 0, bytes({2}))) == "{2}");
    CHECK_THROWS_AS(poss_root(A, 2, 1, bytes({1})), DomainError);
    CHECK_THROWS_AS(poss_root(A, 2, 1, bytes({1, 4})), DomainError);
    CHECK_THROWS_AS(poss_root(A, 0, 1, bytes({1})), DomainError);
}

TEST_CASE("poss families match direct enumeration") {
    const TransitionMatrix A = parse_matrix("110|001|100");
    const auto levels = poss_family_levels(A, 2, 2);
    REQUIRE(levels.size() == 3);
    CHECK(family_text(levels[0]) == "{1} {2} {3}");
    CHECK(family_text(levels[1]) == "{} {1} {2} {1,3}");
    for (const TransitionMatrix& M :
         {A, parse_matrix("11|10"), parse_matrix("011|100|010"),
          parse_matrix("0111|1011|1101|1110")}) {
        for (int n = 0; n <= 2; ++n)
            CHECK(poss_family(M, 2, n) == family_by_enumeration(M, 2, n));
    }
    CHECK(poss_family(A, 2, 1).contains(SymbolSet{}));
    CHECK(!poss_family(A, 2, 1).contains(SymbolSet::full(3)));
}

TEST_CASE("oracle relations: reflexive, transitive, and monotone in n") {
    for (const TransitionMatrix& M :
         {parse_matrix("110|001|100"), parse_matrix("11|10"), parse_matrix("011|100|010"),
          parse_matrix("010|001|011")}) {
        const auto levels = poss_family_levels(M, 2, 4);
        OracleRelationSet prev;
        for (int n = 0; n <= 4; ++n) {
            const OracleRelationSet rel =
                relations_from_family(levels[static_cast<std::size_t>(n)], M.d);
            for (int i = 1; i <= M.d; ++i) CHECK(rel.contains(i, i));
            for (auto [i, j] : rel.pairs)
                for (auto [j2, l] : rel.pairs)
                    if (j == j2) CHECK(rel.contains(i, l));
            if (n > 0)
                for (auto [i, j] : prev.pairs) CHECK(rel.contains(i, j));
            prev = rel;
        }
    }
}

TEST_CASE("relation goldens for the three-symbol cycle") {
    const TransitionMatrix A = parse_matrix("110|001|100");
    CHECK(relation_degree(A, 2, 1, 2, 6) == 4);
    CHECK(relation_degree(A, 2, 3, 1, 6) == 1);
    CHECK(relation_degree(A, 2, 2, 2, 6) == 0);
    CHECK(oracle_relations_at(A, 2, 4).size() == 9);
    CHECK_THROWS_AS(relation_degree(A, 2, 0, 1, 6), DomainError);
    // heights equal degrees here (k = s_A = 2)
    CHECK(relation_degree(A, 2, 2, 1, 6) == 2);
    CHECK(relation_degree(A, 2, 2, 3, 6) == 2);
    CHECK(relation_degree(A, 2, 1, 3, 6) == 3);
    CHECK(relation_degree(A, 2, 3, 2, 6) == 4);
}

TEST_CASE("membership goldens") {
    const TransitionMatrix A = parse_matrix("110|001|100");
    CHECK(!oracle_membership(A, 2, 3).in_p);
    CHECK(oracle_membership(A, 2, 4).in_p);
    CHECK(oracle_membership(A, 2, 5).in_p);
    CHECK(!oracle_membership(A, 2, 4).in_p_star); // no positive row, d = k+1
    const TransitionMatrix C = parse_matrix("0111|1011|1101|1110");
    CHECK(!oracle_membership(C, 2, 1).in_p);
    CHECK(oracle_membership(C, 2, 2).in_p);
    CHECK(oracle_membership(C, 2, 2).in_p_star);
    CHECK(oracle_relations_at(C, 2, 1).pairs ==
          std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {3, 3}, {4, 4}});
    CHECK(oracle_relations_at(C, 2, 2).size() == 16);
    const TransitionMatrix O = parse_matrix("011|100|010");
    for (int n = 1; n <= 6; ++n) CHECK(!oracle_membership(O, 2, n).in_p);
    CHECK_THROWS_AS(oracle_membership(A, 2, 0), DomainError);
    CHECK_THROWS_AS(oracle_membership(parse_matrix("10|00"), 2, 1), DomainError);
}

TEST_CASE("naive enumeration lists follower sets exactly") {
    const TransitionMatrix G = parse_matrix("11|10");
    auto from1 = enumerate_labelings_naive(G, 2, 1, 1);
    REQUIRE(from1.size() == 4);
    CHECK(render_config(from1[0], 2) == "11");
    CHECK(render_config(from1[3], 2) == "22");
    CHECK(enumerate_labelings_naive(G, 2, 1, 2) ==
          std::vector<RowConfiguration>{bytes({1, 1})});
    // two levels down from 2: both children are 1, each expanding freely
    CHECK(enumerate_labelings_naive(G, 2, 2, 2).size() == 16);
    CHECK(enumerate_labelings_naive(G, 2, 0, 2) ==
          std::vector<RowConfiguration>{bytes({2})});
    auto sorted_unique = [](std::vector<RowConfiguration> v) {
        return std::is_sorted(v.begin(), v.end()) &&
               std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    CHECK(sorted_unique(enumerate_labelings_naive(G, 2, 3, 1)));
    CHECK(sorted_unique(enumerate_labelings_naive(parse_matrix("110|001|100"), 2, 2, 1)));
    CHECK_THROWS_AS(enumerate_labelings_naive(G, 2, 1, 3), DomainError);
    CHECK_THROWS_AS(enumerate_labelings_naive(G, 0, 1, 1), DomainError);
}

TEST_CASE("level tables agree with poss_root and naive enumeration") {
    const TransitionMatrix G = parse_matrix("11|10");
    const LevelTable t = level_matrix_supports(G, 2, 1);
    CHECK(t.columns == 4);
    std::string rows;
    for (int i = 1; i <= 2; ++i) {
        if (i > 1) rows += "|";
        for (std::uint64_t c = 0; c < t.columns; ++c)
            rows += t.row_bits[static_cast<std::size_t>(i - 1)][c] ? '1' : '0';
    }
    CHECK(rows == "1111|1000");
    CHECK(render_config(t.config_at(1), 2) == "12");
    CHECK(t.index_of(t.config_at(3)) == 3);
    CHECK(t.at(1, bytes({2, 1})));
    CHECK(!t.at(2, bytes({2, 1})));

    for (const TransitionMatrix& M :
         {G, parse_matrix("110|001|100"), parse_matrix("011|100|010")}) {
        for (int n = 0; n <= 2; ++n) {
            const LevelTable lt = level_matrix_supports(M, 2, n);
            std::vector<std::vector<RowConfiguration>> naive;
            for (int i = 1; i <= M.d; ++i)
                naive.push_back(enumerate_labelings_naive(M, 2, n, i));
            for (std::uint64_t c = 0; c < lt.columns; ++c) {
                const RowConfiguration xi = lt.config_at(c);
                const SymbolSet roots = poss_root(M, 2, n, xi);
                for (int i = 1; i <= M.d; ++i) {
                    const bool via_table = lt.at(i, xi);
                    const bool via_naive = std::binary_search(
                        naive[static_cast<std::size_t>(i - 1)].begin(),
                        naive[static_cast<std::size_t>(i - 1)].end(), xi);
                    CHECK(via_table == via_naive);
                    CHECK(via_table == roots.contains(i));
                }
            }
        }
    }
}

TEST_CASE("one-symbol alphabet level tables") {
    const LevelTable loop = level_matrix_supports(parse_matrix("1"), 2, 3);
    CHECK(loop.columns == 1);
    CHECK(loop.row_bits[0][0]);
    const LevelTable dead = level_matrix_supports(parse_matrix("0"), 2, 3);
    CHECK(!dead.row_bits[0][0]);
    CHECK(level_matrix_supports(parse_matrix("0"), 2, 0).row_bits[0][0]);
}

TEST_CASE("capacity caps cut off oversized queries with named knobs") {
    Caps tight;
    tight.max_d = 2;
    CHECK_THROWS_AS(poss_family(parse_matrix("110|001|100"), 2, 1, tight), CapacityError);
    Caps low_k;
    low_k.max_k = 1;
    CHECK_THROWS_AS(poss_family(parse_matrix("11|10"), 2, 1, low_k), CapacityError);
    Caps low_n;
    low_n.max_n = 3;
    CHECK_THROWS_AS(poss_family(parse_matrix("11|10"), 2, 4, low_n), CapacityError);
    Caps small;
    small.leaf_guard = 10;
    CHECK_THROWS_AS(enumerate_labelings_naive(parse_matrix("11|11"), 2, 3, 1, small),
                    CapacityError);
    CHECK_THROWS_AS(level_matrix_supports(parse_matrix("11|11"), 2, 3, small),
                    CapacityError);
    try {
        poss_family(parse_matrix("11|10"), 2, 4, low_n);
    } catch (const CapacityError& e) {
        CHECK(std::string(e.what()).find("TREEFAIR_CAPS") != std::string::npos);
    }
}
