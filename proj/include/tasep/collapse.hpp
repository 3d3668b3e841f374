#pragma once

/**
 * Collapsing pairs of site sets (S, T) to TASEP states.
 *
 * Anti-particles are placed at T. Each seed s in S then places a particle at
 * s if that site is empty, and otherwise at the nearest empty site to its
 * left. On the cycle Z_N the scan wraps around; on a finite window of Z a
 * seed whose scan runs off the left edge is dropped.
 *
 * States use one character per site: '1' particle, '*' empty,
 * '0' anti-particle; index 0 is leftmost.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tasep {

inline constexpr char kParticle = '1';
inline constexpr char kEmpty = '*';
inline constexpr char kAnti = '0';

/// A TASEP configuration on labelled sites 0..N-1.
class CycleState {
public:
    CycleState() = default;

    explicit CycleState(std::string_view text) : sites_(text)
    {
        for (char c : sites_) {
            if (c != kParticle && c != kEmpty && c != kAnti) {
                throw std::invalid_argument("state contains '" + std::string(1, c) +
                                            "'; expected '1', '*' or '0'");
            }
        }
    }

    static CycleState all_empty(std::size_t n) { return CycleState(std::string(n, kEmpty)); }

    std::size_t size() const noexcept { return sites_.size(); }
    char operator[](std::size_t i) const { return sites_[i]; }
    void set(std::size_t i, char c) { sites_.at(i) = c; }
    const std::string& str() const noexcept { return sites_; }

    std::size_t particles() const { return count(kParticle); }
    std::size_t antis() const { return count(kAnti); }
    std::size_t empties() const { return count(kEmpty); }

    std::vector<std::size_t> positions_of(char c) const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < sites_.size(); ++i) {
            if (sites_[i] == c) out.push_back(i);
        }
        return out;
    }

    friend auto operator<=>(const CycleState&, const CycleState&) = default;

private:
    std::size_t count(char c) const { return static_cast<std::size_t>(std::ranges::count(sites_, c)); }

    std::string sites_;
};

/// Seeds S and anti-particle sites T. They may intersect.
struct SitePair {
    std::vector<std::int64_t> seeds;
    std::vector<std::int64_t> antis;
};

/// Closed interval [lo, hi] of Z.
struct LineWindow {
    std::int64_t lo = 0;
    std::int64_t hi = -1;

    std::size_t size() const { return hi < lo ? 0 : static_cast<std::size_t>(hi - lo + 1); }
    bool contains(std::int64_t x) const { return lo <= x && x <= hi; }
};

/// Charge swap ('1' <-> '0') combined with reversal of the site order.
inline CycleState reverse_and_swap_charge(const CycleState& x)
{
    std::string s(x.str().rbegin(), x.str().rend());
    for (char& c : s) {
        if (c == kParticle) {
            c = kAnti;
        } else if (c == kAnti) {
            c = kParticle;
        }
    }
    return CycleState(s);
}

namespace detail {

inline void require_distinct_in_range(std::span<const std::int64_t> xs, std::int64_t lo,
                                      std::int64_t hi, const char* what)
{
    std::vector<std::int64_t> sorted(xs.begin(), xs.end());
    std::ranges::sort(sorted);
    if (std::ranges::adjacent_find(sorted) != sorted.end()) {
        throw std::invalid_argument(std::string(what) + " contains a repeated position");
    }
    if (!sorted.empty() && (sorted.front() < lo || sorted.back() > hi)) {
        throw std::out_of_range(std::string(what) + " has a position outside [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

inline void check_cycle_pair(const SitePair& pair, std::size_t n)
{
    const auto top = static_cast<std::int64_t>(n) - 1;
    require_distinct_in_range(pair.seeds, 0, top, "S");
    require_distinct_in_range(pair.antis, 0, top, "T");
    if (pair.seeds.size() + pair.antis.size() > n) {
        throw std::invalid_argument("capacity violated: |S| + |T| = " +
                                    std::to_string(pair.seeds.size() + pair.antis.size()) +
                                    " exceeds N = " + std::to_string(n));
    }
}

/// Cycle collapse processing the seeds in the order given.
inline CycleState collapse_cycle_ordered(std::span<const std::int64_t> seed_order,
                                         std::span<const std::int64_t> antis, std::size_t n)
{
    std::string sites(n, kEmpty);
    for (auto t : antis) sites[static_cast<std::size_t>(t)] = kAnti;
    for (auto s : seed_order) {
        auto pos = static_cast<std::size_t>(s);
        while (sites[pos] != kEmpty) pos = (pos + n - 1) % n;
        sites[pos] = kParticle;
    }
    return CycleState(sites);
}

} // namespace detail

inline CycleState collapse_cycle(const SitePair& pair, std::size_t n)
{
    detail::check_cycle_pair(pair, n);
    std::vector<std::int64_t> order = pair.seeds;
    std::ranges::sort(order);
    return detail::collapse_cycle_ordered(order, pair.antis, n);
}

/// Same as collapse_cycle, but with the seeds taken in the caller's order.
inline CycleState collapse_cycle_in_order(const SitePair& pair, std::size_t n)
{
    detail::check_cycle_pair(pair, n);
    return detail::collapse_cycle_ordered(pair.seeds, pair.antis, n);
}

/// Particles fixed at S; each anti-particle moves to the nearest empty site to its right.
inline CycleState dual_collapse_cycle(const SitePair& pair, std::size_t n)
{
    detail::check_cycle_pair(pair, n);
    std::string sites(n, kEmpty);
    for (auto s : pair.seeds) sites[static_cast<std::size_t>(s)] = kParticle;
    std::vector<std::int64_t> order = pair.antis;
    std::ranges::sort(order);
    for (auto t : order) {
        auto pos = static_cast<std::size_t>(t);
        while (sites[pos] != kEmpty) pos = (pos + 1) % n;
        sites[pos] = kAnti;
    }
    return CycleState(sites);
}

struct Placement {
    std::int64_t seed;
    std::optional<std::int64_t> site;  // nullopt when the seed was dropped
};

struct LineCollapse {
    LineWindow window;
    CycleState state;                 // window.lo is index 0
    std::vector<Placement> placements;  // seeds in ascending order
    std::size_t dropped = 0;
};

/**
 * Collapse on a finite window of Z. Seeds are processed in ascending order;
 * a seed with no empty site at or left of it inside the window is dropped.
 */
inline LineCollapse collapse_line_window(const SitePair& pair, LineWindow window)
{
    detail::require_distinct_in_range(pair.seeds, window.lo, window.hi, "S");
    detail::require_distinct_in_range(pair.antis, window.lo, window.hi, "T");

    const std::size_t n = window.size();
    std::string sites(n, kEmpty);
    for (auto t : pair.antis) sites[static_cast<std::size_t>(t - window.lo)] = kAnti;

    // free_left[i] + 1: one past the nearest empty site at or left of i
    // (0 means none). Path-compressed so long runs are crossed once.
    std::vector<std::size_t> free_left(n + 1);
    for (std::size_t i = 0; i <= n; ++i) free_left[i] = i;
    for (std::size_t i = 0; i < n; ++i) {
        if (sites[i] != kEmpty) free_left[i + 1] = i;
    }
    auto find = [&](std::size_t i) {
        std::size_t root = i;
        while (free_left[root] != root) root = free_left[root];
        while (free_left[i] != root) i = std::exchange(free_left[i], root);
        return root;
    };

    LineCollapse out;
    out.window = window;
    std::vector<std::int64_t> order = pair.seeds;
    std::ranges::sort(order);
    out.placements.reserve(order.size());
    for (auto s : order) {
        const std::size_t slot = find(static_cast<std::size_t>(s - window.lo) + 1);
        if (slot == 0) {
            out.placements.push_back({s, std::nullopt});
            ++out.dropped;
            continue;
        }
        sites[slot - 1] = kParticle;
        free_left[slot] = slot - 1;
        out.placements.push_back({s, window.lo + static_cast<std::int64_t>(slot - 1)});
    }
    out.state = CycleState(sites);
    return out;
}

/**
 * Closed-form occupancy test: pos holds a particle iff pos is not in T and
 * some interval I = [pos, b] has |I n S| + |I n T| >= |I|. On the cycle the
 * intervals run clockwise with length at most N.
 */
inline bool particle_criterion(std::size_t pos, const SitePair& pair, std::size_t n)
{
    detail::check_cycle_pair(pair, n);
    if (pos >= n) throw std::out_of_range("particle_criterion: position outside the cycle");
    std::vector<int> demand(n, 0);
    for (auto s : pair.seeds) ++demand[static_cast<std::size_t>(s)];
    for (auto t : pair.antis) ++demand[static_cast<std::size_t>(t)];
    if (std::ranges::find(pair.antis, static_cast<std::int64_t>(pos)) != pair.antis.end()) {
        return false;
    }
    int total = 0;
    for (std::size_t len = 1; len <= n; ++len) {
        total += demand[(pos + len - 1) % n];
        if (total >= static_cast<int>(len)) return true;
    }
    return false;
}

/// Line-window form of particle_criterion; intervals stay inside the window.
inline bool particle_criterion(std::int64_t pos, const SitePair& pair, LineWindow window)
{
    if (!window.contains(pos)) throw std::out_of_range("particle_criterion: position outside the window");
    if (std::ranges::find(pair.antis, pos) != pair.antis.end()) return false;
    std::vector<int> demand(window.size(), 0);
    for (auto s : pair.seeds) ++demand.at(static_cast<std::size_t>(s - window.lo));
    for (auto t : pair.antis) ++demand.at(static_cast<std::size_t>(t - window.lo));
    int total = 0;
    for (std::int64_t b = pos; b <= window.hi; ++b) {
        total += demand[static_cast<std::size_t>(b - window.lo)];
        if (total >= b - pos + 1) return true;
    }
    return false;
}

} // namespace tasep
