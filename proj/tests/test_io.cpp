#include "tasep/io.hpp"

#include <gtest/gtest.h>

using namespace tasep;

TEST(Json, DistributionShape)
{
    const auto j = to_json(formula_distribution(3, 1, 1));
    EXPECT_EQ(j.at("N"), 3);
    EXPECT_EQ(j.at("composition"), Json::array({1, 1, 1}));
    ASSERT_EQ(j.at("entries").size(), 6u);
    for (const auto& e : j.at("entries")) {
        if (e.at("state") == "1*0") {
            EXPECT_EQ(e.at("p"), "1/9");
        }
    }
}

TEST(Json, DistributionRoundTrip)
{
    for (const auto& d : {formula_distribution(6, 2, 2), generator_stationary(Composition{1, 1, 1, 1})}) {
        EXPECT_EQ(distribution_from_json(Json::parse(to_json(d).dump())), d);
    }
}

TEST(Json, FractionParsing)
{
    EXPECT_EQ(parse_fraction("2/6"), Rational(1, 3));
    EXPECT_EQ(parse_fraction("5"), Rational(5));
    EXPECT_THROW(parse_fraction("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_fraction("x"), std::invalid_argument);
}

TEST(Json, TallyAndLaw)
{
    const Tally t{{"1*0", 3}, {"*10", 4}};
    EXPECT_EQ(to_json(t).at("*10"), 4);
    const Histogram h{{-1, 2}, {3, 5}};
    EXPECT_EQ(to_json(h).at("-1"), 2);
    const auto law = to_json(hitting_time_law(WalkLaw::from(0, 0), 3));
    EXPECT_DOUBLE_EQ(law.at("law").at("1").get<double>(), 1.0);
    EXPECT_DOUBLE_EQ(law.at("residual").get<double>(), 0.0);
}

TEST(Csv, Projections)
{
    const auto csv = to_csv(formula_distribution(3, 1, 1));
    EXPECT_EQ(csv.rfind("state,p,p_float\n", 0), 0u);
    EXPECT_NE(csv.find("1*0,1/9,"), std::string::npos);
    EXPECT_EQ(to_csv(Tally{{"1*0", 3}}), "state,count\n1*0,3\n");
    EXPECT_EQ(to_csv(Histogram{{2, 7}}, "gap"), "gap,count\n2,7\n");
}
