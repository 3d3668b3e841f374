#pragma once

/**
 * Exact stationary distributions on the cycle Z_N.
 *
 * Two independent routes to the same object:
 *  - the product formula P(x) = prod W(A_i) / (C(N,a) C(N,b)) over the
 *    binary segments A_i of x, and its combinatorial origin, the pushforward
 *    of uniform (S, T) pairs under collapsing;
 *  - a brute-force solve of pi Q = 0 for the card-sorting dynamics, which
 *    also covers any number of classes.
 *
 * Card states are digit strings '1'..'9'; a larger digit is a faster class.
 * The three-class process maps '1' -> 3, '*' -> 2, '0' -> 1.
 */

#include "tasep/collapse.hpp"
#include "tasep/exact_solve.hpp"
#include "tasep/numeric.hpp"
#include "tasep/seqcomb.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tasep {

/// Number of cards of each value 1..k.
using Composition = std::vector<std::size_t>;

class CardState {
public:
    CardState() = default;

    explicit CardState(std::string_view digits) : cards_(digits)
    {
        for (char c : cards_) {
            if (c < '1' || c > '9') {
                throw std::invalid_argument("card state contains '" + std::string(1, c) +
                                            "'; expected digits 1-9");
            }
        }
    }

    std::size_t size() const noexcept { return cards_.size(); }
    int operator[](std::size_t i) const { return cards_[i] - '0'; }
    const std::string& str() const noexcept { return cards_; }

    Composition composition() const
    {
        int top = 0;
        for (std::size_t i = 0; i < size(); ++i) top = std::max(top, (*this)[i]);
        Composition c(static_cast<std::size_t>(top), 0);
        for (std::size_t i = 0; i < size(); ++i) ++c[static_cast<std::size_t>((*this)[i] - 1)];
        return c;
    }

    CardState swapped(std::size_t i, std::size_t j) const
    {
        CardState out = *this;
        std::swap(out.cards_[i], out.cards_[j]);
        return out;
    }

    friend auto operator<=>(const CardState&, const CardState&) = default;

private:
    std::string cards_;
};

inline std::size_t composition_size(const Composition& c)
{
    return std::accumulate(c.begin(), c.end(), std::size_t{0});
}

inline Natural multinomial(const Composition& c)
{
    Natural r = 1;
    std::size_t placed = 0;
    for (auto k : c) {
        placed += k;
        r *= binomial(placed, k);
    }
    return r;
}

/// All card states with the given composition, lexicographically sorted.
inline std::vector<CardState> states_with_composition(const Composition& comp)
{
    std::string word;
    for (std::size_t v = 0; v < comp.size(); ++v) word.append(comp[v], static_cast<char>('1' + v));
    std::vector<CardState> out;
    do {
        out.emplace_back(word);
    } while (std::next_permutation(word.begin(), word.end()));
    return out;
}

inline CardState to_cards(const CycleState& x)
{
    std::string d = x.str();
    for (char& c : d) c = c == kParticle ? '3' : c == kEmpty ? '2' : '1';
    return CardState(d);
}

inline CycleState to_cycle_state(const CardState& s)
{
    std::string d = s.str();
    for (char& c : d) {
        if (c > '3') throw std::invalid_argument("card state has more than three classes");
        c = c == '3' ? kParticle : c == '2' ? kEmpty : kAnti;
    }
    return CycleState(d);
}

inline Composition three_type_composition(std::size_t n, std::size_t a, std::size_t b)
{
    if (a + b > n) throw std::invalid_argument("a + b exceeds N");
    return {b, n - a - b, a};
}

/// All three-type states with a particles and b anti-particles, sorted.
inline std::vector<CycleState> cycle_states(std::size_t n, std::size_t a, std::size_t b)
{
    std::vector<CycleState> out;
    for (const auto& s : states_with_composition(three_type_composition(n, a, b))) {
        out.push_back(to_cycle_state(s));
    }
    std::ranges::sort(out);
    return out;
}

/// Exact law on states keyed by their text form.
struct ExactDistribution {
    std::size_t n = 0;
    Composition composition;
    std::map<std::string, Rational> entries;

    Rational probability(const std::string& state) const
    {
        auto it = entries.find(state);
        return it == entries.end() ? Rational(0) : it->second;
    }

    Rational total() const
    {
        Rational t = 0;
        for (const auto& [_, p] : entries) t += p;
        return t;
    }

    Rational min_probability() const
    {
        if (entries.empty()) throw std::logic_error("empty distribution");
        Rational m = entries.begin()->second;
        for (const auto& [_, p] : entries) m = std::min(m, p);
        return m;
    }

    friend bool operator==(const ExactDistribution&, const ExactDistribution&) = default;
};

/// States whose probability differs, with both values; empty when equal.
inline std::vector<std::string> distribution_diff(const ExactDistribution& x, const ExactDistribution& y)
{
    std::vector<std::string> out;
    auto note = [&](const std::string& s) {
        out.push_back(s + ": " + fraction_string(x.probability(s)) + " vs " +
                      fraction_string(y.probability(s)));
    };
    for (const auto& [s, p] : x.entries) {
        if (y.probability(s) != p) note(s);
    }
    for (const auto& [s, p] : y.entries) {
        if (!x.entries.contains(s) && sgn(p) != 0) note(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Segment formula

/**
 * Maximal runs of non-empty sites read cyclically, starting after the first
 * empty site. Empty runs are omitted (they carry weight 1).
 */
inline std::vector<BinarySequence> binary_segments(const CycleState& x)
{
    const std::size_t n = x.size();
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == kEmpty) {
            start = i;
            break;
        }
    }
    if (start == n) throw std::invalid_argument("binary_segments: state has no empty site");
    std::vector<BinarySequence> out;
    std::string run;
    for (std::size_t k = 1; k <= n; ++k) {
        const char c = x[(start + k) % n];
        if (c == kEmpty) {
            if (!run.empty()) out.emplace_back(run);
            run.clear();
        } else {
            run += c == kParticle ? '1' : '0';
        }
    }
    return out;
}

/// m(x) = prod W(A_i): the number of seed sets S that collapse to x with T fixed.
inline Natural mass(const CycleState& x)
{
    Natural m = 1;
    for (const auto& seg : binary_segments(x)) m *= weight(seg);
    return m;
}

inline constexpr std::size_t kMaxFormulaN = 14;

inline Rational formula_probability(const CycleState& x)
{
    const std::size_t n = x.size(), a = x.particles(), b = x.antis();
    if (a + b == n) return Rational(1) / Rational(binomial(n, a));
    Rational p(mass(x), binomial(n, a) * binomial(n, b));
    p.canonicalize();
    return p;
}

inline ExactDistribution formula_distribution(std::size_t n, std::size_t a, std::size_t b)
{
    if (a + b > n) throw std::invalid_argument("formula_distribution: a + b exceeds N");
    if (n > kMaxFormulaN) {
        throw std::length_error("formula_distribution: N = " + std::to_string(n) + " exceeds " +
                                std::to_string(kMaxFormulaN));
    }
    ExactDistribution d{n, three_type_composition(n, a, b), {}};
    for (const auto& x : cycle_states(n, a, b)) d.entries.emplace(x.str(), formula_probability(x));
    return d;
}

// ---------------------------------------------------------------------------
// Card dynamics and the brute-force solve

struct Transition {
    std::size_t edge;  // edge (edge, edge + 1 mod N)
    CardState target;
};

/// Each unsorted edge (larger card on the left) at rate 1; self-loops omitted.
inline std::vector<Transition> transitions(const CardState& x)
{
    std::vector<Transition> out;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        if (x[i] > x[j]) out.push_back({i, x.swapped(i, j)});
    }
    return out;
}

/// States y with y -> x, one entry per edge.
inline std::vector<Transition> transitions_into(const CardState& x)
{
    std::vector<Transition> in;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        if (x[i] < x[j]) in.push_back({i, x.swapped(i, j)});
    }
    return in;
}

inline constexpr std::size_t kMaxGeneratorStates = 50000;

inline ExactDistribution generator_stationary(const Composition& comp)
{
    const std::size_t n = composition_size(comp);
    if (n == 0) throw std::invalid_argument("generator_stationary: empty composition");
    if (multinomial(comp) > kMaxGeneratorStates) {
        throw std::length_error("generator_stationary: " + multinomial(comp).get_str() +
                                " states exceeds " + std::to_string(kMaxGeneratorStates));
    }
    const auto states = states_with_composition(comp);
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i].str(), i);
    std::vector<RateEntry> rates;
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (const auto& t : transitions(states[i])) rates.push_back({i, index.at(t.target.str()), 1});
    }
    const auto pi = solve_stationary(states.size(), rates);
    ExactDistribution d{n, comp, {}};
    for (std::size_t i = 0; i < states.size(); ++i) d.entries.emplace(states[i].str(), pi[i]);
    return d;
}

/// generator_stationary for the three-type process, keyed by '1*0' words.
inline ExactDistribution generator_stationary(std::size_t n, std::size_t a, std::size_t b)
{
    auto cards = generator_stationary(three_type_composition(n, a, b));
    ExactDistribution d{n, cards.composition, {}};
    for (auto& [s, p] : cards.entries) d.entries.emplace(to_cycle_state(CardState(s)).str(), p);
    return d;
}

/**
 * sum_{y -> x} m(y) - m(x) * #{z : x -> z}, with one term per edge. When the
 * state has no empty site every state carries unit mass.
 */
inline Integer mass_derivative(const CycleState& x)
{
    const bool has_empty = x.empties() > 0;
    auto m = [&](const CycleState& s) { return has_empty ? mass(s) : Natural(1); };
    const CardState cards = to_cards(x);
    Integer d = 0;
    for (const auto& t : transitions_into(cards)) d += m(to_cycle_state(t.target));
    d -= m(x) * static_cast<unsigned long>(transitions(cards).size());
    return d;
}

// ---------------------------------------------------------------------------
// Collapse pushforwards

/// All k-subsets of {0..n-1}, each sorted, in lexicographic order.
inline std::vector<std::vector<std::int64_t>> subsets_of_size(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::int64_t>> out;
    if (k > n) return out;
    std::vector<std::int64_t> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    const auto top = static_cast<std::int64_t>(n);
    while (true) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == top - static_cast<std::int64_t>(k - i) - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

inline constexpr unsigned long kMaxPushforwardPairs = 10'000'000;

namespace detail {

inline ExactDistribution pushforward(std::size_t n, std::size_t a, std::size_t b,
                                     const std::function<CycleState(const SitePair&)>& image)
{
    if (a + b > n) throw std::invalid_argument("pushforward: a + b exceeds N");
    const Natural pairs = binomial(n, a) * binomial(n, b);
    if (pairs > kMaxPushforwardPairs) {
        throw std::length_error("pushforward: " + pairs.get_str() + " pairs exceeds " +
                                std::to_string(kMaxPushforwardPairs));
    }
    std::map<std::string, unsigned long> counts;
    const auto ss = subsets_of_size(n, a);
    const auto ts = subsets_of_size(n, b);
    SitePair pair;
    for (const auto& s : ss) {
        pair.seeds = s;
        for (const auto& t : ts) {
            pair.antis = t;
            ++counts[image(pair).str()];
        }
    }
    ExactDistribution d{n, three_type_composition(n, a, b), {}};
    for (const auto& [state, c] : counts) {
        Rational p(Natural(c), pairs);
        p.canonicalize();
        d.entries.emplace(state, p);
    }
    return d;
}

} // namespace detail

/// Image of the uniform law on (|S| = a, |T| = b) pairs under collapse_cycle.
inline ExactDistribution collapse_pushforward(std::size_t n, std::size_t a, std::size_t b)
{
    return detail::pushforward(n, a, b, [n](const SitePair& p) { return collapse_cycle(p, n); });
}

/// Same with the dual procedure (particles fixed, anti-particles move right).
inline ExactDistribution dual_collapse_pushforward(std::size_t n, std::size_t a, std::size_t b)
{
    return detail::pushforward(n, a, b, [n](const SitePair& p) { return dual_collapse_cycle(p, n); });
}

// ---------------------------------------------------------------------------
// Marginals

using PositionSet = std::vector<std::size_t>;
using SetLaw = std::map<PositionSet, Rational>;

inline SetLaw positions_marginal(const ExactDistribution& dist, char symbol)
{
    SetLaw out;
    for (const auto& [s, p] : dist.entries) out[CycleState(s).positions_of(symbol)] += p;
    return out;
}

/// Law of the set of particle positions.
inline SetLaw particle_marginal(const ExactDistribution& dist)
{
    return positions_marginal(dist, kParticle);
}

inline SetLaw anti_marginal(const ExactDistribution& dist)
{
    return positions_marginal(dist, kAnti);
}

} // namespace tasep
