#include "doctest.h"

#include "tft/errors.hpp"
#include "tft/ftype.hpp"
#include "tft/growth.hpp"

using namespace tft;

TEST_CASE("minimal growth values") {
    SUBCASE("u = 2") {
        const auto f = GrowthFunction::minimal(2, 8);
        const std::vector<std::uint64_t> expected{1, 2, 6, 42, 1806, 3263442};
        for (std::size_t i = 0; i < expected.size(); ++i) {
            CHECK(f->value(static_cast<std::uint32_t>(i)) == expected[i]);
        }
        CHECK(f->value(6) == BigInt(3263442) * 3263443);
    }
    SUBCASE("u = 3") {
        const auto f = GrowthFunction::minimal(3, 6);
        const std::vector<std::uint64_t> expected{1, 1, 2, 18, 123462};
        for (std::size_t i = 0; i < expected.size(); ++i) {
            CHECK(f->value(static_cast<std::uint32_t>(i)) == expected[i]);
        }
    }
    SUBCASE("empty products below u - 2") {
        for (std::uint32_t u : {2u, 3u, 4u, 7u}) {
            const auto f = GrowthFunction::minimal(u, u);
            for (std::uint32_t l = 0; l + 2 <= u; ++l) CHECK(f->value(l) == 1);
        }
    }
}

TEST_CASE("level and successor counts") {
    const auto f2 = GrowthFunction::minimal(2, 8);
    CHECK(f2->level_count(0) == 1);
    for (std::uint32_t l = 0; l <= 6; ++l) {
        CHECK(f2->level_count(l) == f2->value(l)); // minimal-f coincidence
    }
    CHECK(f2->successor_count(2) == 7);

    const auto f3 = GrowthFunction::minimal(3, 8);
    CHECK(f3->level_count(0) == 1);
    CHECK(f3->level_count(1) == 1);
    CHECK(f3->successor_count(0) == 1); // C(l, u-2) = 0 below u - 2
    CHECK(f3->successor_count(3) == 6859);

    SUBCASE("enumeration cross-check") {
        std::uint64_t count = 0;
        for_each_type_at_level(f2, 4, 10'000'000, [&](const FType&) { ++count; });
        CHECK(count == 1806);
    }
}

TEST_CASE("branching dominance under the growth inequality") {
    for (std::uint32_t u : {2u, 3u}) {
        const auto f = GrowthFunction::minimal(u, 8);
        for (std::uint32_t l = 0; l <= 6; ++l) {
            CAPTURE(u);
            CAPTURE(l);
            if (l + 2 >= u) {
                CHECK(f->successor_count(l) > f->level_count(l));
            } else {
                CHECK(f->successor_count(l) == 1);
                CHECK(f->level_count(l) == 1);
            }
        }
    }
}

TEST_CASE("custom growth validation") {
    SUBCASE("a valid sequence passes") {
        const auto f = GrowthFunction::custom(2, {BigInt(1), BigInt(2), BigInt(6), BigInt(50)});
        CHECK(f->valid());
        CHECK(f->lmax() == 3);
    }
    SUBCASE("a violating sequence is rejected without the override") {
        const std::vector<BigInt> bad{BigInt(1), BigInt(1), BigInt(1)};
        CHECK_THROWS_AS(GrowthFunction::custom(2, bad), std::invalid_argument);
        const auto f = GrowthFunction::custom(2, bad, true);
        CHECK_FALSE(f->valid());
        // dominance breaks: 2 successors vs 4 nodes at level 2
        CHECK(f->successor_count(2) == 2);
        CHECK(f->level_count(2) == 4);
        CHECK(f->successor_count(2) < f->level_count(2));
    }
    SUBCASE("values must be positive") {
        CHECK_THROWS_AS(GrowthFunction::custom(2, {BigInt(0)}, true), std::invalid_argument);
        CHECK_THROWS_AS(GrowthFunction::custom(2, {}, true), std::invalid_argument);
    }
}

TEST_CASE("the minimal sequence materializes lazily but answers truncation everywhere") {
    const auto f = GrowthFunction::minimal(2, 2000);
    CHECK(f->lmax() == 2000);
    CHECK(f->materialized_max() < 2000);
    CHECK(f->materialized_max() >= 10);
    CHECK(bit_length(f->value(f->materialized_max())) > GrowthFunction::kValueBitCap);

    // beyond the materialized range: small labels never truncate
    CHECK_FALSE(f->truncates(1999, BigInt(63)));
    CHECK_FALSE(f->truncates(1999, f->value(10)));
    CHECK(f->truncates(0, BigInt(1)));
    CHECK(f->truncates(1, BigInt(2)));
    CHECK_FALSE(f->truncates(1, BigInt(1)));

    // exact values and counts past the range fail loudly
    CHECK_THROWS_AS(f->value(1999), GuardError);
    CHECK_THROWS_AS(f->level_count(1999), GuardError);
    const BigInt monster = f->value(f->materialized_max());
    CHECK_THROWS_AS(f->truncates(1999, monster), GuardError);

    CHECK_THROWS_AS(f->value(2001), std::invalid_argument);
    CHECK_THROWS_AS(f->truncates(2001, BigInt(0)), std::invalid_argument);
}

TEST_CASE("growth JSON round-trips") {
    const auto f = GrowthFunction::custom(3, {BigInt(1), BigInt(1), BigInt(2), BigInt(20)});
    const auto g = GrowthFunction::from_json(f->to_json());
    CHECK(GrowthFunction::same_function(*f, *g));
    CHECK(g->uniformity() == 3);
    CHECK(g->value(3) == 20);

    CHECK_THROWS_AS(GrowthFunction::from_json("[]"), FormatError);
    CHECK_THROWS_AS(GrowthFunction::from_json(R"({"u":2,"values":[2]})"), FormatError);
    CHECK_THROWS_AS(GrowthFunction::from_json(R"({"u":2,"values":["1","1","1"]})"), FormatError);
    CHECK_NOTHROW(GrowthFunction::from_json(R"({"u":2,"values":["1","1","1"]})", true));
}

TEST_CASE("same_function distinguishes sequences") {
    const auto a = GrowthFunction::minimal(2, 6);
    const auto b = GrowthFunction::minimal(2, 6);
    const auto c = GrowthFunction::minimal(2, 7);
    const auto d = GrowthFunction::minimal(3, 6);
    CHECK(GrowthFunction::same_function(*a, *b));
    CHECK_FALSE(GrowthFunction::same_function(*a, *c));
    CHECK_FALSE(GrowthFunction::same_function(*a, *d));
    const auto e = GrowthFunction::custom(2, {BigInt(1), BigInt(2), BigInt(6)});
    CHECK_FALSE(GrowthFunction::same_function(*a, *e)); // minimal vs custom, different lmax
}
