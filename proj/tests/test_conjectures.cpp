#include "tasep/conjectures.hpp"

#include <gtest/gtest.h>

using namespace tasep;

TEST(Compositions, Enumeration)
{
    EXPECT_EQ(compositions(4, 4).size(), 8u);  // 2^(n-1)
    EXPECT_EQ(compositions(4, 2).size(), 4u);  // (4), (1,3), (2,2), (3,1)
    for (const auto& c : compositions(5, 3)) {
        EXPECT_LE(c.size(), 3u);
        EXPECT_EQ(composition_size(c), 5u);
    }
}

TEST(DescendingArrangement, Word)
{
    EXPECT_EQ(descending_arrangement({1, 2, 1}).str(), "3221");
    EXPECT_EQ(distinct_rotations(CardState("3221")).size(), 4u);
    EXPECT_EQ(distinct_rotations(CardState("2222")).size(), 1u);
}

TEST(SReadings, CumulativeReadingsAgree)
{
    // All cumulative readings give the same product; the per-class control
    // is different in general.
    for (const auto& comp : compositions(7, 4)) {
        const auto readings = s_readings(comp);
        ASSERT_EQ(readings.size(), 4u);
        for (const auto& r : readings) {
            if (r.cumulative) {
                EXPECT_EQ(r.predicted, readings[0].predicted) << r.name;
            }
        }
    }
    const auto r = s_readings({1, 2, 1});
    EXPECT_EQ(r[0].s, (std::vector<std::size_t>{4, 3, 1}));
    EXPECT_EQ(r[0].predicted, Rational(1, 16));
    EXPECT_NE(r[3].predicted, r[0].predicted);
}

TEST(Conjectures, DistinctCardsOnFourSites)
{
    const auto rep = check_conjectures(Composition{1, 1, 1, 1});
    EXPECT_EQ(rep.least_likely, Verdict::pass);
    EXPECT_EQ(rep.product_formula, Verdict::pass);
    EXPECT_EQ(rep.integrality, Verdict::pass);
    EXPECT_EQ(rep.min_probability, Rational(1, 96));
    EXPECT_EQ(rep.argmin, (std::vector<std::string>{"1432", "2143", "3214", "4321"}));
}

TEST(Conjectures, UniformLawsAreAmbiguous)
{
    const auto rep = check_conjectures(Composition{2, 3});
    EXPECT_EQ(rep.least_likely, Verdict::ambiguous);
    EXPECT_EQ(rep.product_formula, Verdict::pass);
    EXPECT_EQ(rep.integrality, Verdict::pass);
}

TEST(Conjectures, TiesBeyondTheShiftsAreReportedAsFailures)
{
    // Three classes with two middle cards: "1*0*" has only weight-one
    // segments and is as unlikely as the block state "1**0".
    const auto rep = check_conjectures(Composition{1, 2, 1});
    EXPECT_EQ(rep.least_likely, Verdict::fail);
    EXPECT_EQ(rep.argmin.size(), 8u);
    for (const auto& s : rep.expected_argmin) {
        EXPECT_NE(std::ranges::find(rep.argmin, s), rep.argmin.end()) << s;
    }
    EXPECT_EQ(rep.product_formula, Verdict::pass);
    EXPECT_EQ(rep.integrality, Verdict::pass);
}

TEST(Conjectures, ThreeClassMinimumAndIntegralityMatchTheFormula)
{
    for (std::size_t n = 3; n <= 7; ++n) {
        for (const auto& comp : compositions(n, 3)) {
            if (comp.size() != 3) continue;
            const auto rep = check_conjectures(comp);
            const Rational expected = Rational(1) / Rational(binomial(n, comp[2]) * binomial(n, comp[0]));
            EXPECT_EQ(rep.min_probability, expected);
            EXPECT_EQ(rep.product_formula, Verdict::pass);
            EXPECT_EQ(rep.integrality, Verdict::pass);
            // Exactly the shifts when the middle class is a single card.
            if (comp[1] == 1) {
                EXPECT_EQ(rep.least_likely, Verdict::pass);
            }
        }
    }
}

TEST(NaiveCollapse, AllCandidatesMissTheDistinctCardLaw)
{
    const Composition four{1, 1, 1, 1};
    const auto exact = generator_stationary(four);
    for (auto kind : {NaiveCollapse::independent_fastest_first, NaiveCollapse::independent_slowest_first,
                      NaiveCollapse::nested_rows_slowest_first}) {
        const auto d = naive_collapse_pushforward(four, kind);
        EXPECT_EQ(d.total(), 1) << naive_collapse_name(kind);
        EXPECT_NE(d, exact) << naive_collapse_name(kind);
        EXPECT_FALSE(distribution_diff(d, exact).empty());
    }
}

TEST(NaiveCollapse, ThreeClassesReduceToCollapse)
{
    for (auto kind : {NaiveCollapse::independent_fastest_first, NaiveCollapse::independent_slowest_first,
                      NaiveCollapse::nested_rows_slowest_first}) {
        EXPECT_EQ(naive_collapse_pushforward({2, 2, 2}, kind), generator_stationary(Composition{2, 2, 2}))
            << naive_collapse_name(kind);
    }
}

TEST(NaiveCollapse, Guards)
{
    EXPECT_THROW(naive_collapse_pushforward({2, 2}, NaiveCollapse::independent_fastest_first), std::invalid_argument);
    EXPECT_THROW(naive_collapse_pushforward({5, 5, 5, 5}, NaiveCollapse::nested_rows_slowest_first),
                 std::length_error);
}
