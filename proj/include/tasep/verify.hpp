#pragma once

/**
 * The end-to-end verification suite: every check the library is accepted
 * against, with its tolerances and time limits fixed here. Used by the
 * acceptance test binary and by `tasep verify`.
 */

#include "tasep/collapse.hpp"
#include "tasep/conjectures.hpp"
#include "tasep/montecarlo.hpp"
#include "tasep/seqcomb.hpp"
#include "tasep/stationary.hpp"
#include "tasep/treebij.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace tasep {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool checks_passed = false;
    double seconds = 0;
    double time_limit = 0;
    std::string detail;

    bool passed() const { return checks_passed && seconds <= time_limit; }
};

struct Criterion {
    int id;
    std::string title;
    double time_limit;  // seconds
    std::function<bool(std::ostream& detail)> run;
};

// Tolerances of the Monte Carlo checks.
inline constexpr double kCycleTvTolerance = 0.02;
inline constexpr double kDensitySigmas = 3;
inline constexpr double kGapTvTolerance = 0.02;
inline constexpr double kFactoringSigmas = 5;
inline constexpr std::size_t kLineReplicates = 20;

namespace verify {

// Accumulates failures; reports the first few in the detail text.
class Checker {
public:
    explicit Checker(std::ostream& out) : out_(out) {}

    bool expect(bool ok, const std::string& what)
    {
        ++checks_;
        if (!ok) {
            if (failures_ < 5) out_ << "FAILED: " << what << "; ";
            ++failures_;
        }
        return ok;
    }

    bool finish()
    {
        out_ << checks_ << " checks, " << failures_ << " failed";
        return failures_ == 0;
    }

private:
    std::ostream& out_;
    std::size_t checks_ = 0;
    std::size_t failures_ = 0;
};

inline bool worked_example_constants(std::ostream& out)
{
    Checker c(out);
    c.expect(weight("1010"_seq) == 5, "W(1010) = 5");
    const auto terms = weight_identity_terms("1011010"_seq);
    c.expect(weight("1011010"_seq) == 23, "W(1011010) = 23");
    c.expect(terms.terms() == std::vector<Natural>{7, 9, 5, 2}, "breakdown 7 + 9 + 1*5 + 2*1");
    c.expect(terms.total() == 23, "breakdown sums to 23");
    c.expect(weight("0101"_seq) == 2, "W(0101) = 2");
    c.expect(weight("10100"_seq) == 9, "W(10100) = 9");
    const CycleState x("*10**10100*0101");
    c.expect(mass(x) == 36, "mass(*10**10100*0101) = 36");
    Rational expected{Natural(36), binomial(15, 5) * binomial(15, 6)};
    expected.canonicalize();
    c.expect(formula_probability(x) == expected, "P = 36 / (C(15,5) C(15,6))");

    // Count the seed sets directly: T is forced, S ranges over all 5-subsets.
    SitePair pair;
    for (auto t : x.positions_of(kAnti)) pair.antis.push_back(static_cast<std::int64_t>(t));
    std::size_t preimages = 0;
    for (const auto& s : subsets_of_size(15, 5)) {
        pair.seeds = s;
        preimages += collapse_cycle(pair, 15) == x;
    }
    c.expect(preimages == 36, "36 seed sets collapse to *10**10100*0101");
    out << "; preimages=" << preimages << ", P=" << fraction_string(expected) << "; ";
    return c.finish();
}

inline bool weight_oracle(std::ostream& out)
{
    Checker c(out);
    for (std::size_t n = 0; n <= 12; ++n) {
        for (const auto& a : BinarySequence::all_of_length(n)) {
            c.expect(weight(a) == enumerate_dominated(a).size(), "W(" + a.str() + ") vs enumeration");
        }
    }
    return c.finish();
}

inline bool weight_identity(std::ostream& out)
{
    Checker c(out);
    for (std::size_t n = 1; n <= 14; ++n) {
        for (const auto& a : BinarySequence::all_of_length(n)) {
            c.expect(weight_identity_terms(a).total() == weight(a), "identity for " + a.str());
        }
    }
    return c.finish();
}

inline bool tree_bijection(std::ostream& out)
{
    Checker c(out);
    for (std::size_t e = 0; e <= 9; ++e) {
        const auto trees = enumerate_trees(e);
        std::set<std::pair<std::string, std::string>> images;
        std::map<std::string, std::size_t> encoding_count;
        for (const auto& t : trees) {
            const auto a = f_encode(t), b = g_encode(t);
            c.expect(dominates(a, b), "f(T) dominates g(T) for " + t.str());
            c.expect(decode(a, b) == t, "round trip " + t.str());
            images.emplace(a.str(), b.str());
            ++encoding_count[a.str()];
        }
        c.expect(images.size() == trees.size(), "injective at " + std::to_string(e) + " edges");
        for (const auto& a : BinarySequence::all_of_length(e)) {
            c.expect(encoding_count[a.str()] == weight(a), "#trees encoding " + a.str() + " = W");
            for (const auto& b : enumerate_dominated(a)) {
                c.expect(images.contains({a.str(), b.str()}), "pair " + a.str() + "/" + b.str() + " is hit");
            }
        }
    }
    return c.finish();
}

inline bool cycle_theorem(std::ostream& out)
{
    Checker c(out);
    std::size_t cases = 0;
    for (std::size_t n = 2; n <= 8; ++n) {
        for (std::size_t a = 1; a < n; ++a) {
            for (std::size_t b = 1; a + b <= n; ++b) {
                const auto f = formula_distribution(n, a, b);
                const std::string tag = " N=" + std::to_string(n) + " a=" + std::to_string(a) +
                                        " b=" + std::to_string(b);
                c.expect(f.total() == 1, "formula sums to 1" + tag);
                c.expect(f == generator_stationary(n, a, b), "formula = generator" + tag);
                if (n <= 7) c.expect(f == collapse_pushforward(n, a, b), "formula = pushforward" + tag);
                ++cases;
            }
        }
    }
    out << cases << " (N,a,b) cases; ";
    return c.finish();
}

inline bool stationarity_machinery(std::ostream& out)
{
    Checker c(out);
    std::size_t states = 0;
    for (std::size_t n = 1; n <= 10; ++n) {
        for (std::size_t a = 0; a <= n; ++a) {
            for (std::size_t b = 0; a + b <= n; ++b) {
                for (const auto& x : cycle_states(n, a, b)) {
                    c.expect(sgn(mass_derivative(x)) == 0, "mass derivative at " + x.str());
                    ++states;
                }
            }
        }
    }
    for (std::size_t n = 1; n <= 12; ++n) {
        for (const auto& a : BinarySequence::all_of_length(n)) {
            c.expect(flow_balance_check(a), "flow balance for " + a.str());
        }
    }
    out << states << " states; ";
    return c.finish();
}

inline bool least_likely_states(std::ostream& out)
{
    Checker c(out);
    std::size_t extra_minimizers = 0, shifts_included = 0, single_empty_extra = 0;
    for (std::size_t n = 3; n <= 10; ++n) {
        for (std::size_t a = 1; a + 1 < n; ++a) {
            for (std::size_t b = 1; a + b < n; ++b) {
                const auto d = formula_distribution(n, a, b);
                const Natural scale = binomial(n, a) * binomial(n, b);
                const std::string tag = " N=" + std::to_string(n) + " a=" + std::to_string(a) +
                                        " b=" + std::to_string(b);
                Rational lowest{Natural(1), scale};
                lowest.canonicalize();
                c.expect(d.min_probability() == lowest, "minimum is 1/(C(N,a)C(N,b))" + tag);
                std::set<std::string> argmin;
                for (const auto& [s, p] : d.entries) {
                    if (p == lowest) argmin.insert(s);
                    Rational scaled = p * Rational(scale);
                    c.expect(scaled.get_den() == 1, "integer multiple at " + s);
                }
                const std::string block = std::string(a, kParticle) + std::string(n - a - b, kEmpty) +
                                          std::string(b, kAnti);
                std::set<std::string> shifts;
                for (std::size_t r = 0; r < n; ++r) shifts.insert(block.substr(r) + block.substr(0, r));
                c.expect(shifts.size() == n && argmin == shifts, "argmin is the N shifts" + tag);
                if (argmin != shifts) {
                    ++extra_minimizers;
                    shifts_included += std::ranges::includes(argmin, shifts);
                    single_empty_extra += n - a - b == 1;
                }
            }
        }
    }
    out << "argmin larger than the shifts in " << extra_minimizers << " cases (shifts included in "
        << shifts_included << ", single empty site in " << single_empty_extra << "); ";
    return c.finish();
}

inline bool uniform_marginals(std::ostream& out)
{
    Checker c(out);
    for (std::size_t n = 1; n <= 8; ++n) {
        for (std::size_t a = 0; a <= n; ++a) {
            for (std::size_t b = 0; a + b <= n; ++b) {
                const auto d = formula_distribution(n, a, b);
                const std::string tag = " N=" + std::to_string(n) + " a=" + std::to_string(a) +
                                        " b=" + std::to_string(b);
                auto uniform = [&](const SetLaw& law, std::size_t k) {
                    Rational each{Natural(1), binomial(n, k)};
                    each.canonicalize();
                    if (Natural(static_cast<unsigned long>(law.size())) != binomial(n, k)) return false;
                    for (const auto& [_, p] : law) {
                        if (p != each) return false;
                    }
                    return true;
                };
                c.expect(uniform(particle_marginal(d), a), "particle marginal uniform" + tag);
                c.expect(uniform(anti_marginal(d), b), "anti marginal uniform" + tag);
            }
        }
    }
    return c.finish();
}

inline bool monte_carlo_cycle(std::ostream& out)
{
    Checker c(out);
    const auto exact6 = formula_distribution(6, 2, 2);
    const auto chain = simulate_chain(to_cards(CycleState("11**00")), 10'000'000, kDefaultSeed);
    Tally chain3;
    for (const auto& [s, k] : chain) chain3[to_cycle_state(CardState(s)).str()] += k;
    const double tv_chain = total_variation(chain3, exact6);
    c.expect(tv_chain < kCycleTvTolerance, "simulate_chain TV");

    const auto samples = sample_collapsed_uniform(8, 2, 2, 1'000'000, kDefaultSeed);
    const double tv_sample = total_variation(samples, formula_distribution(8, 2, 2));
    c.expect(tv_sample < kCycleTvTolerance, "sample_collapsed_uniform TV");
    out << "TV chain=" << tv_chain << " sample=" << tv_sample << " (tol " << kCycleTvTolerance << "); ";
    return c.finish();
}

inline bool line_measure(std::ostream& out)
{
    Checker c(out);
    LineParams params;  // p = 0.3, q = 0.2, L = 5000, M = 512
    const auto d = line_densities(params, kLineReplicates);
    const double p = params.p, q = params.q;
    c.expect(std::abs(d.particle.z(p)) < kDensitySigmas, "particle density");
    c.expect(std::abs(d.anti.z(q)) < kDensitySigmas, "anti density");
    c.expect(std::abs(d.empty.z(1 - p - q)) < kDensitySigmas, "empty density");
    c.expect(std::abs(d.particle_pair.z(p * p)) < kDensitySigmas, "pair correlation");
    out << "z: particle=" << d.particle.z(p) << " anti=" << d.anti.z(q) << " empty=" << d.empty.z(1 - p - q)
        << " pair=" << d.particle_pair.z(p * p) << "; ";

    const auto gaps = gap_statistics(params, 100'000);
    const double gap_tv = gap_law_distance(gaps, hitting_time_law(params, 400));
    c.expect(gap_tv < kGapTvTolerance, "gap law TV");
    out << "gap TV=" << gap_tv << "; ";

    const auto fit = fit_tail(displacement_tail(params, 100'000));
    c.expect(fit.points >= 2 && fit.slope < 0, "displacement tail slope");
    out << "tail slope=" << fit.slope << " over " << fit.points << " points; ";

    for (std::size_t w : {1, 2}) {
        const auto f = factoring_check(params, 100'000, w);
        c.expect(f.max_abs_z < kFactoringSigmas, "factoring width " + std::to_string(w));
        out << "factoring w=" << w << " max|z|=" << f.max_abs_z << "; ";
    }

    const auto margin = margin_adequacy(params, kLineReplicates);
    c.expect(margin.max_abs_z < kDensitySigmas, "margin 2M agrees with M");
    out << "margin max|z|=" << margin.max_abs_z << "; ";
    return c.finish();
}

inline bool multiclass(std::ostream& out)
{
    Checker c(out);
    const Composition four{1, 1, 1, 1};
    const auto exact = generator_stationary(four);
    c.expect(exact.probability("1324") != exact.probability("1423"), "mu(1324) != mu(1423)");
    out << "mu(1324)=" << fraction_string(exact.probability("1324"))
        << " mu(1423)=" << fraction_string(exact.probability("1423")) << "; ";
    for (auto kind : {NaiveCollapse::independent_fastest_first, NaiveCollapse::independent_slowest_first,
                      NaiveCollapse::nested_rows_slowest_first}) {
        c.expect(naive_collapse_pushforward(four, kind) != exact,
                 std::string("naive candidate mismatches: ") + naive_collapse_name(kind));
    }

    std::size_t compositions_checked = 0;
    std::map<std::string, std::size_t> least_likely_verdicts;
    for (std::size_t n = 1; n <= 6; ++n) {
        for (const auto& comp : compositions(n, 4)) {
            const auto r = check_conjectures(comp);
            std::string tag = " for {";
            for (auto k : comp) tag += std::to_string(k) + ",";
            tag.back() = '}';
            // With fewer than three classes the law is uniform, so ties are expected.
            if (comp.size() >= 3) {
                c.expect(r.least_likely == Verdict::pass, "conjecture 1" + tag);
            } else {
                c.expect(r.least_likely != Verdict::fail, "conjecture 1 (degenerate)" + tag);
            }
            ++least_likely_verdicts[verdict_name(r.least_likely)];
            c.expect(r.product_formula == Verdict::pass, "conjecture 2" + tag);
            c.expect(r.integrality == Verdict::pass, "conjecture 3" + tag);
            ++compositions_checked;
        }
    }
    out << compositions_checked << " compositions, least likely states:";
    for (const auto& [v, k] : least_likely_verdicts) out << ' ' << v << '=' << k;
    out << "; ";
    return c.finish();
}

} // namespace verify

inline std::vector<Criterion> acceptance_criteria()
{
    return {
        {1, "worked example constants (weights, mass 36, probability)", 1, verify::worked_example_constants},
        {2, "weight DP equals enumeration, length <= 12", 60, verify::weight_oracle},
        {3, "recursive weight identity, length <= 14", 120, verify::weight_identity},
        {4, "tree bijection round trip and tree counts, <= 9 edges", 60, verify::tree_bijection},
        {5, "cycle formula = generator (N <= 8) = pushforward (N <= 7)", 600, verify::cycle_theorem},
        {6, "mass derivative zero (N <= 10), flow balance (length <= 12)", 600, verify::stationarity_machinery},
        {7, "least likely states and integrality, N <= 10", 600, verify::least_likely_states},
        {8, "uniform particle and anti-particle marginals, N <= 8", 600, verify::uniform_marginals},
        {9, "Monte Carlo chain and collapsed sampling within TV 0.02", 600, verify::monte_carlo_cycle},
        {10, "line window densities, gap law, tail, factoring", 600, verify::line_measure},
        {11, "multi-class: mu(1324) != mu(1423), naive collapses, conjectures", 600, verify::multiclass},
    };
}

inline CriterionResult run_criterion(const Criterion& crit)
{
    CriterionResult r;
    r.id = crit.id;
    r.title = crit.title;
    r.time_limit = crit.time_limit;
    std::ostringstream detail;
    const auto start = std::chrono::steady_clock::now();
    try {
        r.checks_passed = crit.run(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
        r.checks_passed = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.detail = detail.str();
    return r;
}

} // namespace tasep
