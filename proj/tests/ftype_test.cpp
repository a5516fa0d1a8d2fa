#include "doctest.h"

#include <algorithm>
#include <random>

#include "tft/errors.hpp"
#include "tft/ftype.hpp"

using namespace tft;

namespace {

// u = 2 convenience: one entry per letter, "*" for the marker.
FType ft2(const GrowthRef& growth, const std::vector<std::string>& letters) {
    std::vector<Label> entries;
    entries.reserve(letters.size());
    for (const auto& l : letters) entries.push_back(Label::parse(l));
    return FType::from_entries(growth, static_cast<Level>(letters.size()), std::move(entries));
}

Label random_entry(std::mt19937_64& rng, const GrowthRef& f, Level position) {
    if (rng() % 3 == 0) return Label::star();
    BigInt bound = f->value(position);
    if (bound > 50) bound = 50;
    return Label::of(BigInt(rng() % bound.convert_to<std::uint64_t>()));
}

FType random_type(std::mt19937_64& rng, const GrowthRef& f, Level max_level) {
    const Level level = static_cast<Level>(rng() % (max_level + 1));
    const std::uint32_t u = f->uniformity();
    std::vector<Label> entries;
    for (Level i = 0; i < level; ++i) {
        const std::uint64_t count = entries_at_position(u, i);
        for (std::uint64_t s = 0; s < count; ++s) entries.push_back(random_entry(rng, f, i));
    }
    return FType::from_entries(f, level, std::move(entries));
}

// A sibling biased toward sharing a prefix, so meets land at all depths.
FType correlated_type(std::mt19937_64& rng, const GrowthRef& f, const FType& base) {
    if (base.level() == 0 || rng() % 4 == 0) return random_type(rng, f, base.level() + 1);
    const Level cut = static_cast<Level>(rng() % base.level());
    const std::uint32_t u = f->uniformity();
    std::vector<Label> entries(base.entries().begin(),
                               base.entries().begin() + entry_offset(u, cut));
    const Level level = static_cast<Level>(cut + rng() % 3);
    for (Level i = cut; i < level; ++i) {
        const std::uint64_t count = entries_at_position(u, i);
        for (std::uint64_t s = 0; s < count; ++s) entries.push_back(random_entry(rng, f, i));
    }
    return FType::from_entries(f, level, std::move(entries));
}

} // namespace

TEST_CASE("type construction validates the letter bounds") {
    const auto f = GrowthFunction::minimal(2, 8);
    CHECK_NOTHROW(ft2(f, {"*", "1", "5"}));
    CHECK_THROWS_AS(ft2(f, {"1"}), std::invalid_argument);      // 1 >= f(0)
    CHECK_THROWS_AS(ft2(f, {"0", "2"}), std::invalid_argument); // 2 >= f(1)
    CHECK_THROWS_AS(FType::from_entries(f, 2, {Label::star()}), std::invalid_argument);
    CHECK(FType::root(f).level() == 0);
}

TEST_CASE("restrict truncates letters") {
    const auto f = GrowthFunction::minimal(2, 8);
    const auto x = ft2(f, {"0", "1", "5"});
    CHECK(x.restrict_to(3) == x);
    CHECK(x.restrict_to(0) == FType::root(f));
    CHECK(x.restrict_to(2) == ft2(f, {"0", "1"}));
    CHECK_THROWS_AS(x.restrict_to(4), std::invalid_argument);
}

TEST_CASE("meet is the longest common prefix") {
    const auto f = GrowthFunction::minimal(2, 8);
    const auto x = ft2(f, {"0", "0", "3", "0"});
    const auto y = ft2(f, {"0", "0", "4", "0"});
    CHECK(meet(x, y) == ft2(f, {"0", "0"}));
    CHECK(meet(x, x) == x);
    CHECK(meet(x, FType::root(f)) == FType::root(f));

    const auto g = GrowthFunction::minimal(2, 9);
    CHECK_THROWS_AS(meet(x, FType::root(g)), std::invalid_argument);
}

TEST_CASE("prefix order") {
    const auto f = GrowthFunction::minimal(2, 8);
    const auto x = ft2(f, {"0", "1"});
    const auto y = ft2(f, {"0", "0", "4"});
    CHECK(is_prefix(FType::root(f), y));
    CHECK(is_prefix(x, x));
    CHECK_FALSE(is_prefix(x, y));
    CHECK(is_prefix(ft2(f, {"0", "0"}), y));
    CHECK_FALSE(is_prefix(y, ft2(f, {"0", "0"})));
}

TEST_CASE("enumeration matches the counting formulas") {
    SUBCASE("level zero is the root") {
        const auto f = GrowthFunction::minimal(2, 4);
        const auto types = enumerate_level(f, 0);
        REQUIRE(types.size() == 1);
        CHECK(types[0] == FType::root(f));
    }
    SUBCASE("u=2 level 1 is star then zero") {
        const auto f = GrowthFunction::minimal(2, 4);
        const auto types = enumerate_level(f, 1);
        REQUIRE(types.size() == 2);
        CHECK(types[0] == ft2(f, {"*"}));
        CHECK(types[1] == ft2(f, {"0"}));
    }
    SUBCASE("counts agree with level_count and all types are distinct and ordered") {
        for (std::uint32_t u : {2u, 3u}) {
            const auto f = GrowthFunction::minimal(u, 8);
            const Level top = u == 2 ? 4 : 3;
            for (Level l = 0; l <= top; ++l) {
                CAPTURE(u);
                CAPTURE(l);
                const auto types = enumerate_level(f, l);
                CHECK(BigInt(types.size()) == f->level_count(l));
                for (std::size_t i = 1; i < types.size(); ++i) {
                    CHECK(FType::compare(types[i - 1], types[i]) < 0);
                }
            }
        }
    }
    SUBCASE("the guard fails loudly") {
        const auto f = GrowthFunction::minimal(2, 8);
        CHECK_THROWS_AS(enumerate_level(f, 4, 1000), GuardError);
    }
}

TEST_CASE("immediate successors extend by one letter") {
    const auto f2 = GrowthFunction::minimal(2, 8);
    const auto x = ft2(f2, {"0", "1", "5"}); // level 3, so f(3) = 42 values + star
    const auto succ = immediate_successors(x);
    CHECK(BigInt(succ.size()) == f2->successor_count(3));
    CHECK(succ.size() == 43);
    for (const auto& z : succ) {
        CHECK(z.level() == x.level() + 1);
        CHECK(is_prefix(x, z));
    }

    const auto f3 = GrowthFunction::minimal(3, 8);
    const auto root_succ = immediate_successors(FType::root(f3));
    REQUIRE(root_succ.size() == 1); // the level-1 letter has no entries
    CHECK(root_succ[0].level() == 1);

    const auto two = enumerate_level(f2, 2);
    CHECK(immediate_successors(two[0]).size() == 7);

    CHECK_THROWS_AS(immediate_successors(ft2(f2, {"0", "1", "5"}), 10), GuardError);
}

TEST_CASE("rank and unrank invert each other") {
    std::mt19937_64 rng(99);
    for (std::uint32_t u : {2u, 3u}) {
        const auto f = GrowthFunction::minimal(u, 8);
        const Level l = u == 2 ? 4 : 3;
        const auto types = enumerate_level(f, l);
        for (std::uint64_t j = 0; j < types.size(); ++j) {
            CHECK(rank_of(types[j]) == j);
        }
        for (int round = 0; round < 50; ++round) {
            const BigInt idx = BigInt(rng() % types.size());
            CHECK(rank_of(type_at(f, l, idx)) == idx);
        }
        CHECK_THROWS_AS(type_at(f, l, f->level_count(l)), std::invalid_argument);
    }
}

TEST_CASE("type of a vertex truncates against f") {
    const auto f = GrowthFunction::minimal(2, 8);

    // e(03)=2, e(13)=1, e(23)=5, rest 0
    FiniteHypergraph h(2, 4, [](std::span<const Vertex> e) {
        if (e[1] == 3) {
            if (e[0] == 0) return BigInt(2);
            if (e[0] == 1) return BigInt(1);
            return BigInt(5);
        }
        return BigInt(0);
    });
    const auto oracle = HypergraphOracle::table(h);
    CHECK(type_of_vertex(oracle, f, 0) == FType::root(f));
    CHECK(type_of_vertex(oracle, f, 3) == ft2(f, {"*", "1", "5"}));

    // e(02)=0, e(12)=1
    FiniteHypergraph h2(2, 3, [](std::span<const Vertex> e) {
        return BigInt(e[0] == 1 && e[1] == 2 ? 1 : 0);
    });
    CHECK(type_of_vertex(HypergraphOracle::table(h2), f, 2) == ft2(f, {"0", "1"}));

    CHECK_THROWS_AS(type_of_vertex(oracle, GrowthFunction::minimal(2, 2), 3),
                    std::invalid_argument);
}

TEST_CASE("vertex types are valid at every position") {
    const auto oracle = HypergraphOracle::random(2, 5);
    const auto f = GrowthFunction::minimal(2, 64);
    for (Vertex v : {1, 5, 30, 64}) {
        const auto tp = type_of_vertex(oracle, f, v);
        CHECK(tp.level() == v);
        for (Level i = 0; i < tp.level(); ++i) {
            for (const Label& entry : tp.letter(i)) {
                if (!entry.is_star()) CHECK_FALSE(f->truncates(i, entry.value()));
            }
        }
    }
}

TEST_CASE("text format") {
    const auto f2 = GrowthFunction::minimal(2, 8);
    const auto x = ft2(f2, {"*", "1", "5"});
    CHECK(x.to_string() == "*|1|5");
    CHECK(FType::from_string(f2, 3, "*|1|5") == x);
    CHECK(FType::root(f2).to_string() == "");
    CHECK(FType::from_string(f2, 0, "") == FType::root(f2));

    const auto f3 = GrowthFunction::minimal(3, 8);
    const auto lvl1 = enumerate_level(f3, 1)[0];
    CHECK(lvl1.to_string() == ""); // the level-1 letter is empty for u = 3
    CHECK(FType::from_string(f3, 1, "") == lvl1);
    const auto lvl3 = enumerate_level(f3, 3);
    for (const auto& t : lvl3) {
        CHECK(FType::from_string(f3, 3, t.to_string()) == t);
    }

    CHECK_THROWS_AS(FType::from_string(f2, 2, "*|1|5"), FormatError);
    CHECK_THROWS_AS(FType::from_string(f2, 1, "7"), std::invalid_argument);
    CHECK_THROWS_AS(FType::from_string(f2, 0, "*"), FormatError);
    CHECK_THROWS_AS(FType::from_string(f2, 1, "star"), FormatError);
}

TEST_CASE("meet semilattice laws on random samples") {
    for (std::uint32_t u : {2u, 3u}) {
        CAPTURE(u);
        const auto f = GrowthFunction::minimal(u, 8);
        std::mt19937_64 rng(1000 + u);
        for (int round = 0; round < 800; ++round) {
            const auto x = random_type(rng, f, 6);
            const auto y = correlated_type(rng, f, x);
            const auto z = correlated_type(rng, f, x);

            const auto m = meet(x, y);
            CHECK(m == meet(y, x));                       // commutative
            CHECK(meet(meet(x, y), z) == meet(x, meet(y, z))); // associative
            CHECK(meet(x, x) == x);                       // idempotent
            CHECK(is_prefix(m, x));
            CHECK(is_prefix(m, y));
            // greatest: no deeper common prefix exists
            if (m.level() < std::min(x.level(), y.level())) {
                const auto xl = x.letter(m.level());
                const auto yl = y.letter(m.level());
                CHECK_FALSE(std::equal(xl.begin(), xl.end(), yl.begin(), yl.end()));
            } else {
                CHECK(m.level() == std::min(x.level(), y.level()));
            }
        }
    }
}

TEST_CASE("meet maximality by literal letter extension") {
    // Small radix slice (u = 3, shallow levels) where every feasible next
    // letter can be tried directly.
    const auto f = GrowthFunction::minimal(3, 8);
    std::mt19937_64 rng(77);
    for (int round = 0; round < 60; ++round) {
        const auto x = random_type(rng, f, 4);
        const auto y = correlated_type(rng, f, x);
        const auto m = meet(x, y);
        if (m.level() >= std::min(x.level(), y.level())) continue;
        for (const auto& extension : immediate_successors(m)) {
            const bool common = is_prefix(extension, x) && is_prefix(extension, y);
            CHECK_FALSE(common);
        }
    }
}
