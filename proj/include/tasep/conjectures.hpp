#pragma once

/**
 * Multi-class checks on small cycles, all exact.
 *
 * For a composition of k card classes the stationary law is solved with the
 * brute-force generator and tested for three properties that hold in the
 * three-class case:
 *   1. the least likely states are exactly the cyclic shifts of the
 *      arrangement with classes in decreasing order of speed;
 *   2. their probability is prod_i C(N, s_i)^{-1}, s_i being a count of
 *      cards of class at least i (several readings of s_i are evaluated);
 *   3. every probability is an integer multiple of that minimum.
 *
 * Also provides naive multi-class generalisations of collapsing, used to
 * show that they do not reproduce the stationary law.
 */

#include "tasep/stationary.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tasep {

/// All compositions of n into between 1 and max_classes positive parts.
inline std::vector<Composition> compositions(std::size_t n, std::size_t max_classes)
{
    std::vector<Composition> out;
    Composition cur;
    auto rec = [&](auto&& self, std::size_t left) -> void {
        if (left == 0) {
            if (!cur.empty()) out.push_back(cur);
            return;
        }
        if (cur.size() == max_classes) return;
        for (std::size_t part = 1; part <= left; ++part) {
            cur.push_back(part);
            self(self, left - part);
            cur.pop_back();
        }
    };
    rec(rec, n);
    return out;
}

/// The word with classes in decreasing order, e.g. {1,2,1} -> "3221".
inline CardState descending_arrangement(const Composition& comp)
{
    std::string w;
    for (std::size_t v = comp.size(); v-- > 0;) w.append(comp[v], static_cast<char>('1' + v));
    return CardState(w);
}

inline std::set<std::string> distinct_rotations(const CardState& s)
{
    std::set<std::string> out;
    const std::string& w = s.str();
    for (std::size_t r = 0; r < w.size(); ++r) out.insert(w.substr(r) + w.substr(0, r));
    return out;
}

struct SReading {
    std::string name;
    bool cumulative;  // false for the per-class control reading
    std::vector<std::size_t> s;
    Rational predicted;  // prod C(N, s_i)^{-1}
    bool matches = false;
};

/// Candidate readings of s_i for a composition over values 1..k.
inline std::vector<SReading> s_readings(const Composition& comp)
{
    const std::size_t n = composition_size(comp), k = comp.size();
    std::vector<std::size_t> at_least(k + 1, 0);  // at_least[i-1]: cards with value >= i
    for (std::size_t i = k; i-- > 0;) at_least[i] = at_least[i + 1] + comp[i];

    std::vector<SReading> out;
    auto add = [&](std::string name, bool cumulative, std::vector<std::size_t> s) {
        Natural denom = 1;
        for (auto si : s) denom *= binomial(n, si);
        out.push_back({std::move(name), cumulative, std::move(s), Rational(Natural(1), denom), false});
        out.back().predicted.canonicalize();
    };
    {
        std::vector<std::size_t> s(at_least.begin(), at_least.begin() + static_cast<long>(k));
        add("at least i, all classes", true, s);
        // Slowest class read as empty sites rather than a particle class.
        add("at least i, empty class excluded", true, std::vector<std::size_t>(s.begin() + 1, s.end()));
    }
    {
        std::vector<std::size_t> s;
        std::size_t acc = 0;
        for (auto c : comp) s.push_back(acc += c);
        add("at most i (reversed class index)", true, s);
    }
    add("exactly i (non-cumulative control)", false, comp);
    return out;
}

enum class Verdict { pass, fail, ambiguous };

inline const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::ambiguous: return "AMBIGUOUS";
    }
    return "?";
}

struct ConjectureReport {
    Composition composition;
    std::size_t n = 0;
    Rational min_probability;
    std::vector<std::string> argmin;
    std::set<std::string> expected_argmin;
    std::vector<SReading> readings;
    std::vector<std::string> non_integral;  // states whose ratio to the minimum is fractional
    Verdict least_likely = Verdict::fail;   // conjecture 1
    Verdict product_formula = Verdict::fail;  // conjecture 2
    Verdict integrality = Verdict::fail;    // conjecture 3
};

inline ConjectureReport check_conjectures(const ExactDistribution& pi)
{
    ConjectureReport r;
    r.composition = pi.composition;
    r.n = pi.n;
    r.min_probability = pi.min_probability();
    for (const auto& [s, p] : pi.entries) {
        if (p == r.min_probability) r.argmin.push_back(s);
        Rational ratio = p / r.min_probability;
        if (ratio.get_den() != 1) r.non_integral.push_back(s);
    }
    r.expected_argmin = distinct_rotations(descending_arrangement(pi.composition));
    // A uniform law (at most two classes) has no distinguished least likely
    // states, so the statement is vacuous there rather than false.
    const std::set<std::string> found(r.argmin.begin(), r.argmin.end());
    if (found == r.expected_argmin) {
        r.least_likely = Verdict::pass;
    } else if (found.size() == pi.entries.size()) {
        r.least_likely = Verdict::ambiguous;
    } else {
        r.least_likely = Verdict::fail;
    }

    r.readings = s_readings(pi.composition);
    std::size_t cumulative = 0, matched = 0;
    for (auto& reading : r.readings) {
        reading.matches = reading.predicted == r.min_probability;
        if (reading.cumulative) {
            ++cumulative;
            matched += reading.matches;
        }
    }
    r.product_formula = matched == cumulative ? Verdict::pass
                        : matched == 0        ? Verdict::fail
                                              : Verdict::ambiguous;
    r.integrality = r.non_integral.empty() ? Verdict::pass : Verdict::fail;
    return r;
}

inline ConjectureReport check_conjectures(const Composition& comp)
{
    return check_conjectures(generator_stationary(comp));
}

// ---------------------------------------------------------------------------
// Naive multi-class collapsing

enum class NaiveCollapse {
    // Slowest class fixed at a uniform set; every class faster than the
    // second slowest gets its own uniform seed set and collapses leftward
    // into unassigned sites; leftover sites take the second slowest class.
    independent_fastest_first,
    independent_slowest_first,
    // Nested uniform rows of sizes #(cards >= v), v = k..2. The labels of
    // one row move into the next row, each to the nearest free row site at
    // or left of it, slowest labels first; unclaimed row sites take the row's
    // class and sites outside the last row take class 1.
    nested_rows_slowest_first,
};

inline const char* naive_collapse_name(NaiveCollapse kind)
{
    switch (kind) {
    case NaiveCollapse::independent_fastest_first: return "independent seeds, fastest class first";
    case NaiveCollapse::independent_slowest_first: return "independent seeds, slowest class first";
    case NaiveCollapse::nested_rows_slowest_first: return "nested rows, slowest label first";
    }
    return "?";
}

inline constexpr unsigned long kMaxNaiveChoices = 2'000'000;

namespace detail {

// Odometer over the Cartesian product of set families.
template <class Visit>
void for_each_choice(const std::vector<std::vector<std::vector<std::int64_t>>>& families, Visit&& visit)
{
    std::vector<std::size_t> idx(families.size(), 0);
    for (const auto& f : families) {
        if (f.empty()) return;
    }
    while (true) {
        visit(idx);
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == families[k].size()) idx[k++] = 0;
        if (k == idx.size()) return;
    }
}

inline std::string independent_image(const Composition& comp,
                                      const std::vector<std::vector<std::vector<std::int64_t>>>& fam,
                                      const std::vector<std::size_t>& idx,
                                      const std::vector<int>& order)
{
    const std::size_t n = composition_size(comp);
    std::string s(n, '\0');
    for (auto t : fam[0][idx[0]]) s[static_cast<std::size_t>(t)] = '1';
    for (std::size_t k = 0; k < order.size(); ++k) {
        for (auto p : fam[k + 1][idx[k + 1]]) {
            auto q = static_cast<std::size_t>(p);
            while (s[q] != '\0') q = (q + n - 1) % n;
            s[q] = static_cast<char>('0' + order[k]);
        }
    }
    for (char& c : s) {
        if (c == '\0') c = '2';
    }
    return s;
}

inline std::string nested_image(const Composition& comp,
                                const std::vector<std::vector<std::vector<std::int64_t>>>& rows,
                                const std::vector<std::size_t>& idx)
{
    const std::size_t n = composition_size(comp);
    const int k = static_cast<int>(comp.size());
    std::vector<int> label(n, 0);
    for (auto p : rows[0][idx[0]]) label[static_cast<std::size_t>(p)] = k;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const int row_class = k - static_cast<int>(r);
        std::vector<char> in_row(n, 0);
        for (auto p : rows[r][idx[r]]) in_row[static_cast<std::size_t>(p)] = 1;
        std::vector<std::pair<int, std::size_t>> movers;  // (label, site)
        for (std::size_t i = 0; i < n; ++i) {
            if (label[i] != 0) movers.emplace_back(label[i], i);
        }
        std::ranges::sort(movers);  // slowest label first, then by site
        std::vector<int> next(n, 0);
        for (auto [l, p] : movers) {
            std::size_t q = p;
            while (!in_row[q] || next[q] != 0) q = (q + n - 1) % n;
            next[q] = l;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (in_row[i] && next[i] == 0) next[i] = row_class;
        }
        label = std::move(next);
    }
    std::string s(n, '1');
    for (std::size_t i = 0; i < n; ++i) {
        if (label[i] != 0) s[i] = static_cast<char>('0' + label[i]);
    }
    return s;
}

} // namespace detail

/// Exact image of the uniform law on the candidate's random sets.
inline ExactDistribution naive_collapse_pushforward(const Composition& comp, NaiveCollapse kind)
{
    const std::size_t n = composition_size(comp);
    const int k = static_cast<int>(comp.size());
    if (k < 3) throw std::invalid_argument("naive collapse needs at least three classes");

    std::vector<std::vector<std::vector<std::int64_t>>> families;
    std::vector<int> order;
    if (kind == NaiveCollapse::nested_rows_slowest_first) {
        std::size_t s = 0;
        for (int v = k; v >= 2; --v) {
            s += comp[static_cast<std::size_t>(v - 1)];
            families.push_back(subsets_of_size(n, s));
        }
    } else {
        families.push_back(subsets_of_size(n, comp[0]));
        for (int v = 3; v <= k; ++v) order.push_back(v);
        if (kind == NaiveCollapse::independent_fastest_first) std::ranges::reverse(order);
        for (int v : order) families.push_back(subsets_of_size(n, comp[static_cast<std::size_t>(v - 1)]));
    }
    unsigned long total = 1;
    for (const auto& f : families) {
        total *= f.size();
        if (total > kMaxNaiveChoices) throw std::length_error("naive collapse: too many set choices");
    }

    std::map<std::string, unsigned long> counts;
    detail::for_each_choice(families, [&](const std::vector<std::size_t>& idx) {
        ++counts[kind == NaiveCollapse::nested_rows_slowest_first
                     ? detail::nested_image(comp, families, idx)
                     : detail::independent_image(comp, families, idx, order)];
    });
    ExactDistribution d{n, comp, {}};
    for (const auto& [s, c] : counts) {
        Rational p{Natural(c), Natural(total)};
        p.canonicalize();
        d.entries.emplace(s, p);
    }
    return d;
}

} // namespace tasep
