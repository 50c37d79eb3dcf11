#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latwalk/formulas.hpp"
#include "oracle.hpp"

using namespace latwalk;

TEST_CASE("pochhammer") {
    CHECK(pochhammer(Rat(1, 2), 0) == 1);
    CHECK(pochhammer(Rat(1, 2), 2) == Rat(3, 4));
    CHECK(pochhammer(Rat(4, 3), 1) * pochhammer(Rat(5, 3), 1) == Rat(20, 9));
    CHECK(pochhammer(Rat(3), 4) == 3 * 4 * 5 * 6);
    CHECK_THROWS_AS(pochhammer(Rat(1), -1), UsageError);
}

TEST_CASE("catalog loads with the expected shape") {
    Catalog cat = load_catalog();
    CHECK(cat.version == 1);
    CHECK(cat.entries.size() == 13);  // rows 1..11 plus kreweras and gessel
    for (const char* z : {"1", "3", "10", "11"}) CHECK(cat.at(z).form.zero);
    CHECK(cat.at("kreweras").form.binomial);
    CHECK(cat.at("5").steps.steps == cat.at("kreweras").steps.steps);
    CHECK_THROWS_AS(cat.at("12"), UsageError);
}

TEST_CASE("closed form evaluation matches known spot values") {
    Catalog cat = load_catalog();
    CHECK(eval_closed_form(cat.at("kreweras").form, 2) == 16);
    CHECK(eval_closed_form(cat.at("5").form, 2) == 16);
    CHECK(eval_closed_form(cat.at("gessel").form, 1) == 2);
    CHECK(eval_closed_form(cat.at("2").form, 2) == 2);  // Catalan C_2
    CHECK(eval_closed_form(cat.at("8").form, 1) == 2);
    // shifted rows define n=0 as the empty walk
    CHECK(eval_closed_form(cat.at("5").form, 0) == 1);
}

TEST_CASE("catalog integrity: nonzero rows evaluate to positive integers") {
    Catalog cat = load_catalog();
    for (const auto& [key, e] : cat.entries) {
        if (e.form.zero) continue;
        for (long n = 0; n <= 12; ++n) CHECK(eval_closed_form(e.form, n) > 0);
    }
}

TEST_CASE("rows 5/6 and 8/9 coincide; binomial Kreweras equals row 5") {
    Catalog cat = load_catalog();
    for (long n = 0; n <= 12; ++n) {
        CHECK(eval_closed_form(cat.at("5").form, n) == eval_closed_form(cat.at("6").form, n));
        CHECK(eval_closed_form(cat.at("8").form, n) == eval_closed_form(cat.at("9").form, n));
        CHECK(eval_closed_form(cat.at("kreweras").form, n) ==
              eval_closed_form(cat.at("5").form, n));
    }
}

TEST_CASE("verify_entry against enumeration") {
    Catalog cat = load_catalog();

    // row 2: Catalan
    {
        const auto& e = cat.at("2");
        WalkTable t = enumerate_walks(e.steps, e.region, 16);
        auto rep = verify_entry(e, t, 8);
        CHECK(rep.ok());
        CHECK(t.return_counts()[2] == 1);
        CHECK(t.return_counts()[4] == 2);
        CHECK(t.return_counts()[8] == 14);
    }

    // row 1: identically zero for m >= 1
    {
        const auto& e = cat.at("1");
        WalkTable t = enumerate_walks(e.steps, e.region, 24);
        CHECK(verify_entry(e, t, 24).ok());
    }

    // row 8 at n=1 against exhaustive enumeration of the 3^4 sequences
    {
        const auto& e = cat.at("8");
        auto oracle = testing::brute_force_counts(e.steps, e.region, 4);
        std::vector<long> origin{0, 0};
        CHECK(oracle[4][origin] == 2);
        WalkTable t = enumerate_walks(e.steps, e.region, 8);
        CHECK(verify_entry(e, t, 2).ok());
    }

    // a mismatch is reported, not thrown
    {
        CatalogEntry wrong = cat.at("2");
        wrong.form.prefactor = 3;
        WalkTable t = enumerate_walks(wrong.steps, wrong.region, 8);
        auto rep = verify_entry(wrong, t, 4);
        CHECK_FALSE(rep.ok());
        CHECK(rep.mismatches[0].expected != rep.mismatches[0].actual);
    }
}

TEST_CASE("ballot formula") {
    CHECK(ballot_count({1, 1}) == 1);
    CHECK(ballot_count({2, 1}) == 2);
    for (long n = 1; n <= 6; ++n) CHECK(ballot_count({n}) == 1);
    // 2x2 square: standard Young tableaux count
    CHECK(ballot_count({2, 2}) == 2);
    CHECK_THROWS_AS(ballot_count({1, 2}), UsageError);
    CHECK_THROWS_AS(ballot_count({}), UsageError);

    // equals chamber-restricted enumeration with unit positive steps
    StepSet unit2 = parse_steps("1,0;0,1");
    Region chamber2 = parse_region("ballot:2", 2);
    for (long a = 0; a <= 4; ++a) {
        for (long b = 0; b <= a; ++b) {
            WalkTable t = enumerate_walks(unit2, chamber2, static_cast<int>(a + b));
            CHECK(ballot_count({a, b}) == t.cell(static_cast<int>(a + b), {a, b}));
        }
    }
}
