#include "tasep/montecarlo.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tasep;

TEST(Streams, Deterministic)
{
    auto a = make_stream(5, 1), b = make_stream(5, 1), c = make_stream(5, 2);
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
}

TEST(SimulateChain, Deterministic)
{
    const CardState s("332211");
    EXPECT_EQ(simulate_chain(s, 20000, 3), simulate_chain(s, 20000, 3));
    EXPECT_NE(simulate_chain(s, 20000, 3), simulate_chain(s, 20000, 4));
}

TEST(SimulateChain, ConservesComposition)
{
    const CardState s("4332211");
    for (const auto& [state, _] : simulate_chain(s, 50000, kDefaultSeed)) {
        EXPECT_EQ(CardState(state).composition(), s.composition());
    }
}

TEST(SimulateChain, SingleValueStaysPut)
{
    const auto t = simulate_chain(CardState("2222"), 1000, 1);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t.begin()->first, "2222");
    EXPECT_EQ(t.begin()->second, 800u);  // after burn-in
}

TEST(SimulateChain, Guards)
{
    EXPECT_THROW(simulate_chain(CardState("21"), 0, 1), std::invalid_argument);
    EXPECT_THROW(simulate_chain(CardState(std::string(17, '1')), 10, 1), std::invalid_argument);
}

TEST(SimulateChain, ApproachesFormula)
{
    Tally three;
    for (const auto& [s, k] : simulate_chain(to_cards(CycleState("11**00")), 10'000'000, kDefaultSeed)) {
        three[to_cycle_state(CardState(s)).str()] += k;
    }
    EXPECT_LT(total_variation(three, formula_distribution(6, 2, 2)), 0.01);
}

TEST(SampleCollapsed, DeterministicAndTrivialCases)
{
    EXPECT_EQ(sample_collapsed_uniform(6, 2, 1, 5000, 9), sample_collapsed_uniform(6, 2, 1, 5000, 9));
    const auto empty = sample_collapsed_uniform(5, 0, 0, 100, 1);
    ASSERT_EQ(empty.size(), 1u);
    EXPECT_EQ(empty.begin()->first, "*****");
    EXPECT_EQ(tally_total(empty), 100u);
}

TEST(SampleCollapsed, ErrorShrinksWithSamples)
{
    const auto exact = formula_distribution(8, 2, 2);
    const double small = total_variation(sample_collapsed_uniform(8, 2, 2, 10'000, kDefaultSeed), exact);
    const double large = total_variation(sample_collapsed_uniform(8, 2, 2, 1'000'000, kDefaultSeed), exact);
    EXPECT_LT(large, small);
    EXPECT_LT(large, 0.02);
}

TEST(SampleCollapsed, WorkedExampleFrequency)
{
    const std::uint64_t n = 2'000'000;
    const auto t = sample_collapsed_uniform(15, 5, 6, n, kDefaultSeed);
    const double p = formula_probability(CycleState("*10**10100*0101")).get_d();
    const auto it = t.find("*10**10100*0101");
    const double hits = it == t.end() ? 0.0 : static_cast<double>(it->second);
    const double se = std::sqrt(p * (1 - p) / static_cast<double>(n));
    EXPECT_LT(std::abs(hits / static_cast<double>(n) - p), 5 * se);
}

TEST(TotalVariation, CountsMissingStates)
{
    const auto exact = formula_distribution(3, 1, 1);
    EXPECT_DOUBLE_EQ(total_variation({{"1*0", 10}}, exact), 1 - 1.0 / 9);
    EXPECT_DOUBLE_EQ(total_variation({{"1**", 10}}, exact), 1.0);
}

TEST(LineParams, Validation)
{
    LineParams p;
    p.p = 1.5;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p.p = 0.6;
    p.q = 0.5;
    EXPECT_NO_THROW(p.validate());
    EXPECT_THROW(p.require_three_density_regime(), std::invalid_argument);
}

TEST(LineWindow, ReproducibleAndShaped)
{
    LineParams params;
    params.half_width = 50;
    params.margin = 20;
    const auto s = sample_line_window(params, 3);
    EXPECT_EQ(s.central.size(), 101u);
    EXPECT_EQ(s.collapse.state.size(), 141u);
    EXPECT_EQ(s.central.str(), sample_line_window(params, 3).central.str());
    EXPECT_NE(s.central.str(), sample_line_window(params, 4).central.str());
}

TEST(LineWindow, NoSeedsMeansNoParticles)
{
    LineParams params;
    params.p = 0;
    params.q = 0.2;
    params.half_width = 2000;
    const auto d = line_densities(params, 10);
    EXPECT_EQ(d.particle.mean, 0);
    EXPECT_LT(std::abs(d.anti.z(0.2)), 4);
}

TEST(LineWindow, DensitiesAndPairCorrelation)
{
    LineParams params;  // p = 0.3, q = 0.2, L = 5000
    const auto d = line_densities(params, 20);
    EXPECT_LT(std::abs(d.particle.z(0.3)), 3);
    EXPECT_LT(std::abs(d.anti.z(0.2)), 3);
    EXPECT_LT(std::abs(d.empty.z(0.5)), 3);
    EXPECT_LT(std::abs(d.particle_pair.z(0.09)), 3);
}

TEST(Estimate, MeanAndError)
{
    const auto e = estimate({1, 2, 3, 4});
    EXPECT_DOUBLE_EQ(e.mean, 2.5);
    EXPECT_NEAR(e.std_error, std::sqrt(5.0 / 3 / 4), 1e-12);
    EXPECT_DOUBLE_EQ(e.z(2.5), 0);
}

TEST(WalkLaw, StepProbabilities)
{
    const auto w = WalkLaw::from(0.3, 0.2);
    EXPECT_DOUBLE_EQ(w.up, 0.56);
    EXPECT_DOUBLE_EQ(w.down, 0.06);
    EXPECT_NEAR(w.up + w.down + w.stay, 1, 1e-15);
    EXPECT_NEAR(w.mean(), 1 - 0.3 - 0.2, 1e-15);
}

TEST(HittingLaw, BasicProperties)
{
    const auto law = hitting_time_law(WalkLaw::from(0.3, 0.2), 200);
    EXPECT_DOUBLE_EQ(law.prob[0], 0);
    EXPECT_DOUBLE_EQ(law.prob[1], 0.56);
    double total = 0, mean = 0;
    for (std::size_t t = 0; t < law.prob.size(); ++t) {
        EXPECT_GE(law.prob[t], 0);
        total += law.prob[t];
        mean += static_cast<double>(t) * law.prob[t];
    }
    EXPECT_LT(law.residual, 1e-6);
    EXPECT_NEAR(total + law.residual, 1, 1e-12);
    EXPECT_NEAR(mean, 1 / (1 - 0.3 - 0.2), 1e-6);  // Wald: E[T] = 1 / drift
    EXPECT_THROW(hitting_time_law(WalkLaw::from(0.3, 0.2), 0), std::invalid_argument);
}

TEST(HittingLaw, DegenerateWalks)
{
    const auto point = hitting_time_law(WalkLaw::from(0, 0), 10);
    EXPECT_DOUBLE_EQ(point.prob[1], 1);
    EXPECT_DOUBLE_EQ(point.residual, 0);
    // q = 0: geometric, P(T = d) = (1 - p) p^(d - 1).
    const auto geo = hitting_time_law(WalkLaw::from(0.5, 0), 30);
    for (std::size_t d = 1; d <= 30; ++d) EXPECT_NEAR(geo.prob[d], 0.5 * std::pow(0.5, d - 1), 1e-15);
}

TEST(Gaps, MatchHittingLaw)
{
    LineParams params;
    const auto gaps = gap_statistics(params, 100'000);
    EXPECT_EQ(histogram_total(gaps), 100'000u);
    EXPECT_LT(gap_law_distance(gaps, hitting_time_law(params, 400)), 0.02);
}

TEST(Gaps, TrivialAndGeometric)
{
    LineParams params;
    params.p = 0;
    params.q = 0;
    params.half_width = 500;
    const auto ones = gap_statistics(params, 1000);
    ASSERT_EQ(ones.size(), 1u);
    EXPECT_EQ(ones.begin()->first, 1);

    params.p = 0.5;
    params.half_width = 5000;
    const auto geo = gap_statistics(params, 50'000);
    EXPECT_LT(gap_law_distance(geo, hitting_time_law(params, 200)), 0.02);
}

TEST(Displacement, TailDecays)
{
    LineParams params;
    const auto h = displacement_tail(params, 100'000);
    EXPECT_EQ(histogram_total(h), 100'000u);
    EXPECT_GT(h.at(0), 0u);
    EXPECT_EQ(h.begin()->first, 0);  // seeds only move left
    const auto fit = fit_tail(h);
    EXPECT_GE(fit.points, 2u);
    EXPECT_LT(fit.slope, 0);
}

TEST(Displacement, SparseSeedsRarelyMove)
{
    LineParams params;
    params.p = 0.001;
    params.q = 0;
    const auto h = displacement_tail(params, 2000);
    EXPECT_GT(static_cast<double>(h.at(0)) / static_cast<double>(histogram_total(h)), 0.99);
}

TEST(FitTail, ExactExponential)
{
    Histogram h;
    for (std::int64_t d = 0; d < 10; ++d) h[d] = static_cast<std::uint64_t>(std::llround(1e6 * std::pow(0.5, d)));
    const auto fit = fit_tail(h);
    EXPECT_NEAR(fit.slope, std::log(0.5), 1e-4);
    EXPECT_TRUE(fit.monotone);
}

TEST(Factoring, IndependentAcrossAnEmptySite)
{
    LineParams params;
    for (std::size_t w : {1, 2, 3}) {
        const auto rep = factoring_check(params, 100'000, w);
        EXPECT_EQ(rep.samples, 100'000u);
        EXPECT_FALSE(rep.cells.empty());
        EXPECT_LT(rep.max_abs_z, 5) << "width " << w;
    }
    EXPECT_THROW(factoring_check(params, 10, 0), std::invalid_argument);
}

TEST(Factoring, NoSeedsIsTriviallyIndependent)
{
    LineParams params;
    params.p = 0;
    const auto rep = factoring_check(params, 50'000, 1);
    EXPECT_LT(rep.max_abs_z, 5);
}

TEST(Margin, DoublingAgrees)
{
    LineParams params;
    EXPECT_LT(margin_adequacy(params, 20).max_abs_z, 3);
}
