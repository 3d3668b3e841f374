#pragma once

/**
 * Seeded stochastic experiments.
 *
 * Random streams are std::mt19937_64 seeded through std::seed_seq from
 * (seed, stream index); every replicate of an experiment draws from its own
 * stream, so replicates are independent and can run in any order.
 *
 * Line experiments sample S and T as independent Bernoulli(p), Bernoulli(q)
 * site sets on [-L-M, L+M], collapse on that window and keep only the
 * central window [-L, L]. The margin M absorbs both boundary effects: seeds
 * dropped at the left edge and seeds missing beyond the right edge.
 */

#include "tasep/collapse.hpp"
#include "tasep/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace tasep {

inline constexpr std::uint64_t kDefaultSeed = 20240611;
inline constexpr std::int64_t kDefaultMargin = 512;

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

/// Occurrence counts keyed by state text.
using Tally = std::map<std::string, std::uint64_t>;

inline std::uint64_t tally_total(const Tally& t)
{
    std::uint64_t n = 0;
    for (const auto& [_, c] : t) n += c;
    return n;
}

/// Total variation distance between an empirical tally and an exact law.
inline double total_variation(const Tally& tally, const ExactDistribution& exact)
{
    const double n = static_cast<double>(tally_total(tally));
    double tv = 0.0;
    for (const auto& [s, p] : exact.entries) {
        auto it = tally.find(s);
        const double freq = it == tally.end() ? 0.0 : static_cast<double>(it->second) / n;
        tv += std::abs(freq - p.get_d());
    }
    for (const auto& [s, c] : tally) {
        if (!exact.entries.contains(s)) tv += static_cast<double>(c) / n;
    }
    return tv / 2;
}

// ---------------------------------------------------------------------------
// Cycle experiments

inline constexpr double kBurnInFraction = 0.2;

/**
 * Uniformised card dynamics: each step picks one of the N edges uniformly
 * and sorts it (possibly a no-op). Every state has total clock rate N, so
 * the jump chain has the same stationary law as the continuous-time chain.
 * The first 20% of steps are discarded; every later state is tallied.
 */
inline Tally simulate_chain(const CardState& initial, std::uint64_t steps, std::uint64_t seed)
{
    if (steps == 0) throw std::invalid_argument("simulate_chain: steps must be at least 1");
    const std::size_t n = initial.size();
    if (n == 0 || n > 16) throw std::invalid_argument("simulate_chain: N must be in [1, 16]");

    std::vector<std::uint8_t> cards(n);
    for (std::size_t i = 0; i < n; ++i) cards[i] = static_cast<std::uint8_t>(initial[i]);
    auto code = [&] {
        std::uint64_t c = 0;
        for (auto v : cards) c = c << 4 | v;
        return c;
    };

    auto rng = make_stream(seed, 0);
    std::uniform_int_distribution<std::size_t> edge(0, n - 1);
    const auto burn_in = static_cast<std::uint64_t>(static_cast<double>(steps) * kBurnInFraction);
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t step = 0; step < steps; ++step) {
        const std::size_t i = edge(rng);
        const std::size_t j = i + 1 == n ? 0 : i + 1;
        if (cards[i] > cards[j]) std::swap(cards[i], cards[j]);
        if (step >= burn_in) ++counts[code()];
    }

    Tally out;
    for (const auto& [c, k] : counts) {
        std::string s(n, '0');
        for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<char>('0' + (c >> (4 * (n - 1 - i)) & 0xF));
        out.emplace(std::move(s), k);
    }
    return out;
}

namespace detail {

// k distinct uniform positions from {0..n-1} (partial Fisher-Yates).
inline void draw_subset(std::vector<std::int64_t>& pool, std::size_t k, std::mt19937_64& rng,
                        std::vector<std::int64_t>& out)
{
    out.clear();
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
        out.push_back(pool[i]);
    }
}

} // namespace detail

/// Collapse of independent uniform S (|S| = a) and T (|T| = b), tallied.
inline Tally sample_collapsed_uniform(std::size_t n, std::size_t a, std::size_t b,
                                      std::uint64_t samples, std::uint64_t seed)
{
    if (a + b > n) throw std::invalid_argument("sample_collapsed_uniform: a + b exceeds N");
    auto rng = make_stream(seed, 0);
    std::vector<std::int64_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    SitePair pair;
    Tally out;
    for (std::uint64_t k = 0; k < samples; ++k) {
        detail::draw_subset(pool, a, rng, pair.seeds);
        detail::draw_subset(pool, b, rng, pair.antis);
        ++out[collapse_cycle(pair, n).str()];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Line experiments

struct LineParams {
    double p = 0.3;   // seed density
    double q = 0.2;   // anti-particle density
    std::int64_t half_width = 5000;  // L
    std::int64_t margin = kDefaultMargin;  // M
    std::uint64_t seed = kDefaultSeed;

    void validate() const
    {
        if (!(p >= 0 && p <= 1 && q >= 0 && q <= 1)) {
            throw std::invalid_argument("densities p and q must lie in [0, 1]");
        }
        if (half_width < 0 || margin < 0) throw std::invalid_argument("L and M must be nonnegative");
    }

    void require_three_density_regime() const
    {
        validate();
        if (!(p + q < 1)) throw std::invalid_argument("experiment requires p + q < 1");
    }
};

struct LineSample {
    LineCollapse collapse;     // the whole window [-L-M, L+M]
    CycleState central;        // [-L, L]; index i is site i - L
};

inline LineSample sample_line_window(const LineParams& params, std::uint64_t replicate)
{
    params.validate();
    const LineWindow outer{-params.half_width - params.margin, params.half_width + params.margin};
    auto rng = make_stream(params.seed, replicate);
    std::bernoulli_distribution seed_at(params.p), anti_at(params.q);
    SitePair pair;
    for (std::int64_t x = outer.lo; x <= outer.hi; ++x) {
        if (seed_at(rng)) pair.seeds.push_back(x);
        if (anti_at(rng)) pair.antis.push_back(x);
    }
    LineSample out{collapse_line_window(pair, outer), {}};
    out.central = CycleState(out.collapse.state.str().substr(static_cast<std::size_t>(params.margin),
                                                             static_cast<std::size_t>(2 * params.half_width + 1)));
    return out;
}

/// Mean over replicates with its standard error (between-replicate spread).
struct Estimate {
    double mean = 0;
    double std_error = 0;

    double z(double target) const { return std_error > 0 ? (mean - target) / std_error : (mean == target ? 0 : INFINITY); }
};

inline Estimate estimate(const std::vector<double>& xs)
{
    Estimate e;
    if (xs.empty()) return e;
    const double n = static_cast<double>(xs.size());
    e.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    if (xs.size() > 1) {
        double ss = 0;
        for (double x : xs) ss += (x - e.mean) * (x - e.mean);
        e.std_error = std::sqrt(ss / (n - 1) / n);
    }
    return e;
}

struct LineDensities {
    std::size_t replicates = 0;
    Estimate particle, anti, empty;
    Estimate particle_pair;  // mean of eta_i eta_{i+1} for the particle indicator
};

inline LineDensities line_densities(const LineParams& params, std::size_t replicates)
{
    std::vector<double> part, anti, empty, pair;
    for (std::size_t r = 0; r < replicates; ++r) {
        const auto s = sample_line_window(params, r);
        const auto& w = s.central.str();
        const double n = static_cast<double>(w.size());
        part.push_back(static_cast<double>(s.central.particles()) / n);
        anti.push_back(static_cast<double>(s.central.antis()) / n);
        empty.push_back(static_cast<double>(s.central.empties()) / n);
        std::size_t both = 0;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) both += w[i] == kParticle && w[i + 1] == kParticle;
        pair.push_back(w.size() > 1 ? static_cast<double>(both) / (n - 1) : 0.0);
    }
    return {replicates, estimate(part), estimate(anti), estimate(empty), estimate(pair)};
}

/// Step law of the walk Z_n explored leftwards from an empty site.
struct WalkLaw {
    double up = 1;    // (1-p)(1-q)
    double down = 0;  // p q
    double stay = 0;

    static WalkLaw from(double p, double q)
    {
        WalkLaw w;
        w.up = (1 - p) * (1 - q);
        w.down = p * q;
        w.stay = 1 - w.up - w.down;
        return w;
    }

    double mean() const { return up - down; }
};

struct HittingLaw {
    std::vector<double> prob;  // prob[t] = P(first hit of level 1 at time t); prob[0] = 0
    double residual = 0;       // P(not hit by the horizon)
};

/// Exact law (up to rounding) of the first time the walk from 0 reaches 1.
inline HittingLaw hitting_time_law(const WalkLaw& walk, std::size_t horizon)
{
    if (horizon == 0) throw std::invalid_argument("hitting_time_law: horizon must be at least 1");
    HittingLaw out;
    out.prob.assign(horizon + 1, 0.0);
    // level[d] = P(Z_t = -d, not yet hit); d ranges over 0..t.
    std::vector<double> level{1.0}, next;
    for (std::size_t t = 1; t <= horizon; ++t) {
        out.prob[t] = level[0] * walk.up;
        next.assign(level.size() + 1, 0.0);
        for (std::size_t d = 0; d < level.size(); ++d) {
            next[d] += level[d] * walk.stay;
            next[d + 1] += level[d] * walk.down;
            if (d > 0) next[d - 1] += level[d] * walk.up;
        }
        level.swap(next);
    }
    out.residual = std::accumulate(level.begin(), level.end(), 0.0);
    return out;
}

inline HittingLaw hitting_time_law(const LineParams& params, std::size_t horizon)
{
    params.validate();
    return hitting_time_law(WalkLaw::from(params.p, params.q), horizon);
}

using Histogram = std::map<std::int64_t, std::uint64_t>;

inline std::uint64_t histogram_total(const Histogram& h)
{
    std::uint64_t n = 0;
    for (const auto& [_, c] : h) n += c;
    return n;
}

/// Distances between consecutive empty sites of the central window, over
/// fresh replicates until at least `gaps` distances are recorded.
inline Histogram gap_statistics(const LineParams& params, std::uint64_t gaps)
{
    params.require_three_density_regime();
    Histogram h;
    std::uint64_t recorded = 0;
    for (std::uint64_t r = 0; recorded < gaps; ++r) {
        const auto s = sample_line_window(params, r);
        const auto empties = s.central.positions_of(kEmpty);
        for (std::size_t i = 1; i < empties.size() && recorded < gaps; ++i) {
            ++h[static_cast<std::int64_t>(empties[i] - empties[i - 1])];
            ++recorded;
        }
        if (r > 1000 && recorded == 0) throw std::runtime_error("gap_statistics: no empty sites observed");
    }
    return h;
}

/// TV distance between an empirical gap histogram and the hitting law; the
/// law's residual mass counts as disagreement.
inline double gap_law_distance(const Histogram& gaps, const HittingLaw& law)
{
    const double n = static_cast<double>(histogram_total(gaps));
    double tv = law.residual;
    for (std::size_t t = 1; t < law.prob.size(); ++t) {
        auto it = gaps.find(static_cast<std::int64_t>(t));
        const double f = it == gaps.end() ? 0.0 : static_cast<double>(it->second) / n;
        tv += std::abs(f - law.prob[t]);
    }
    for (const auto& [d, c] : gaps) {
        if (d < 1 || static_cast<std::size_t>(d) >= law.prob.size()) tv += static_cast<double>(c) / n;
    }
    return tv / 2;
}

/// Seed position minus landing site, for seeds inside the central window.
inline Histogram displacement_tail(const LineParams& params, std::uint64_t samples)
{
    params.require_three_density_regime();
    Histogram h;
    std::uint64_t recorded = 0;
    for (std::uint64_t r = 0; recorded < samples; ++r) {
        const auto s = sample_line_window(params, r);
        for (const auto& pl : s.collapse.placements) {
            if (recorded == samples) break;
            if (std::abs(pl.seed) > params.half_width || !pl.site) continue;
            ++h[pl.seed - *pl.site];
            ++recorded;
        }
        if (r > 1000 && recorded == 0) throw std::runtime_error("displacement_tail: no seeds observed");
    }
    return h;
}

struct TailFit {
    double slope = 0;       // of log(frequency) against displacement
    double intercept = 0;
    std::size_t points = 0;
    bool monotone = false;  // frequencies non-increasing over the fitted range
};

/// Least-squares log-linear fit over displacements seen at least min_count times.
inline TailFit fit_tail(const Histogram& h, std::uint64_t min_count = 20)
{
    const double total = static_cast<double>(histogram_total(h));
    std::vector<double> xs, ys;
    for (const auto& [d, c] : h) {
        if (c < min_count) continue;
        xs.push_back(static_cast<double>(d));
        ys.push_back(std::log(static_cast<double>(c) / total));
    }
    TailFit fit;
    fit.points = xs.size();
    if (xs.size() < 2) return fit;
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.monotone = std::is_sorted(ys.rbegin(), ys.rend());
    return fit;
}

struct FactoringCell {
    std::string left, right;  // patterns on [-w, -1] and [1, w] around the empty site
    std::uint64_t count = 0;
    double joint = 0, product = 0, z = 0;
};

struct FactoringReport {
    std::size_t width = 0;
    std::uint64_t samples = 0;  // conditioned samples
    std::vector<FactoringCell> cells;
    double max_abs_z = 0;
    std::size_t skipped_cells = 0;  // expected count below the floor
};

inline constexpr std::int64_t kFactoringStride = 16;
inline constexpr double kFactoringMinExpected = 10;

/**
 * Conditions on an empty site and tabulates the width-w patterns on both
 * sides. Under independence joint = product for every cell; z is the
 * residual over its standard error p_l p_r (1-p_l)(1-p_r) / n. Conditioned
 * sites are taken every kFactoringStride sites so samples barely overlap.
 */
inline FactoringReport factoring_check(const LineParams& params, std::uint64_t samples, std::size_t width)
{
    params.require_three_density_regime();
    if (width == 0 || static_cast<std::int64_t>(width) > params.half_width) {
        throw std::invalid_argument("factoring_check: width must be in [1, L]");
    }
    const auto w = static_cast<std::int64_t>(width);
    std::map<std::pair<std::string, std::string>, std::uint64_t> joint;
    std::map<std::string, std::uint64_t> lefts, rights;
    std::uint64_t n = 0;
    for (std::uint64_t r = 0; n < samples; ++r) {
        const auto s = sample_line_window(params, r);
        const std::string& c = s.central.str();
        const auto len = static_cast<std::int64_t>(c.size());
        for (std::int64_t i = w; i + w < len && n < samples; i += kFactoringStride) {
            if (c[static_cast<std::size_t>(i)] != kEmpty) continue;
            std::string l = c.substr(static_cast<std::size_t>(i - w), width);
            std::string rt = c.substr(static_cast<std::size_t>(i + 1), width);
            ++lefts[l];
            ++rights[rt];
            ++joint[{l, rt}];
            ++n;
        }
        if (r > 1000 && n == 0) throw std::runtime_error("factoring_check: no empty sites observed");
    }

    FactoringReport rep;
    rep.width = width;
    rep.samples = n;
    const double dn = static_cast<double>(n);
    for (const auto& [l, nl] : lefts) {
        for (const auto& [rt, nr] : rights) {
            FactoringCell cell{l, rt, 0, 0, 0, 0};
            auto it = joint.find({l, rt});
            cell.count = it == joint.end() ? 0 : it->second;
            const double pl = static_cast<double>(nl) / dn, pr = static_cast<double>(nr) / dn;
            cell.joint = static_cast<double>(cell.count) / dn;
            cell.product = pl * pr;
            if (cell.product * dn < kFactoringMinExpected) {
                ++rep.skipped_cells;
                continue;
            }
            const double se = std::sqrt(pl * pr * (1 - pl) * (1 - pr) / dn);
            cell.z = se > 0 ? (cell.joint - cell.product) / se : 0;
            rep.max_abs_z = std::max(rep.max_abs_z, std::abs(cell.z));
            rep.cells.push_back(std::move(cell));
        }
    }
    return rep;
}

struct MarginCheck {
    LineDensities base, doubled;
    double max_abs_z = 0;  // over the three densities
};

/// Reruns the density measurement with margin 2M and compares.
inline MarginCheck margin_adequacy(const LineParams& params, std::size_t replicates)
{
    LineParams twice = params;
    twice.margin = 2 * params.margin;
    MarginCheck mc{line_densities(params, replicates), line_densities(twice, replicates), 0};
    auto z = [](const Estimate& x, const Estimate& y) {
        const double se = std::hypot(x.std_error, y.std_error);
        return se > 0 ? std::abs(x.mean - y.mean) / se : (x.mean == y.mean ? 0.0 : INFINITY);
    };
    mc.max_abs_z = std::max({z(mc.base.particle, mc.doubled.particle), z(mc.base.anti, mc.doubled.anti),
                             z(mc.base.empty, mc.doubled.empty)});
    return mc;
}

} // namespace tasep
