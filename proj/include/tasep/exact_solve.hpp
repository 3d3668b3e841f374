#pragma once

/**
 * Exact stationary vector of a finite continuous-time Markov chain.
 *
 * The generator is given by its off-diagonal integer rates. With the last
 * state's probability fixed to one, the balance equations of the other
 * states form a nonsingular sparse system (a principal minor of an
 * irreducible generator). It is solved by sparse Gaussian elimination over
 * GMP rationals, choosing the shortest candidate row as pivot, and the
 * result is normalised to sum to one.
 */

#include "tasep/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tasep {

struct RateEntry {
    std::size_t from;
    std::size_t to;
    unsigned long rate;
};

/// True iff every state reaches every other state along positive rates.
inline bool strongly_connected(std::size_t n, std::span<const RateEntry> rates)
{
    if (n == 0) return true;
    std::vector<std::vector<std::size_t>> fwd(n), bwd(n);
    for (const auto& e : rates) {
        if (e.rate == 0 || e.from == e.to) continue;
        fwd[e.from].push_back(e.to);
        bwd[e.to].push_back(e.from);
    }
    auto reaches_all = [n](const std::vector<std::vector<std::size_t>>& adj) {
        std::vector<char> seen(n, 0);
        std::queue<std::size_t> q;
        q.push(0);
        seen[0] = 1;
        std::size_t count = 1;
        while (!q.empty()) {
            auto u = q.front();
            q.pop();
            for (auto v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = 1;
                    ++count;
                    q.push(v);
                }
            }
        }
        return count == n;
    };
    return reaches_all(fwd) && reaches_all(bwd);
}

namespace detail {

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;  // sorted by column

inline const Rational* find_entry(const SparseRow& row, std::size_t col)
{
    auto it = std::ranges::lower_bound(row, col, {}, &SparseRow::value_type::first);
    return it != row.end() && it->first == col ? &it->second : nullptr;
}

// target -= factor * source, dropping cancelled entries. Reports columns
// that are new in target through fresh_cols.
inline void subtract_scaled(SparseRow& target, const Rational& factor, const SparseRow& source,
                            std::vector<std::size_t>& fresh_cols)
{
    SparseRow merged;
    merged.reserve(target.size() + source.size());
    auto t = target.begin();
    auto s = source.begin();
    Rational tmp;
    while (t != target.end() || s != source.end()) {
        if (s == source.end() || (t != target.end() && t->first < s->first)) {
            merged.push_back(std::move(*t++));
        } else if (t == target.end() || s->first < t->first) {
            tmp = -factor * s->second;
            merged.emplace_back(s->first, tmp);
            fresh_cols.push_back(s->first);
            ++s;
        } else {
            tmp = t->second - factor * s->second;
            if (sgn(tmp) != 0) merged.emplace_back(t->first, tmp);
            ++t;
            ++s;
        }
    }
    target = std::move(merged);
}

} // namespace detail

/**
 * Unique probability vector pi with pi Q = 0 for the generator Q built from
 * `rates` (parallel entries accumulate). Throws if the chain is not
 * irreducible.
 */
inline std::vector<Rational> solve_stationary(std::size_t n, std::span<const RateEntry> rates)
{
    if (n == 0) throw std::invalid_argument("solve_stationary: empty state space");
    if (!strongly_connected(n, rates)) {
        throw std::runtime_error("solve_stationary: chain is not irreducible");
    }
    if (n == 1) return {Rational(1)};

    // Balance equation of state j: sum_i pi_i q(i, j) - pi_j out(j) = 0.
    // Unknowns 0..m-1 with m = n - 1; pi_{n-1} = 1 moves to the right side.
    const std::size_t m = n - 1;
    std::vector<std::vector<std::pair<std::size_t, long>>> raw(m);
    std::vector<long> outrate(n, 0);
    std::vector<Rational> rhs(m);
    for (const auto& e : rates) {
        if (e.from == e.to || e.rate == 0) continue;
        outrate[e.from] += static_cast<long>(e.rate);
        if (e.to >= m) continue;
        if (e.from == m) {
            rhs[e.to] -= static_cast<long>(e.rate);
        } else {
            raw[e.to].emplace_back(e.from, static_cast<long>(e.rate));
        }
    }
    std::vector<detail::SparseRow> rows(m);
    std::vector<std::vector<std::size_t>> col_rows(m);  // may hold stale entries
    for (std::size_t j = 0; j < m; ++j) {
        raw[j].emplace_back(j, -outrate[j]);
        std::ranges::sort(raw[j]);
        for (const auto& [col, v] : raw[j]) {
            if (!rows[j].empty() && rows[j].back().first == col) {
                rows[j].back().second += v;
            } else {
                rows[j].emplace_back(col, Rational(v));
            }
        }
        std::erase_if(rows[j], [](const auto& e) { return sgn(e.second) == 0; });
        for (const auto& e : rows[j]) col_rows[e.first].push_back(j);
    }

    std::vector<char> used(m, 0);
    std::vector<std::size_t> pivot_of(m);
    std::vector<std::size_t> fresh;
    Rational factor;
    for (std::size_t col = 0; col < m; ++col) {
        auto& cands = col_rows[col];
        std::ranges::sort(cands);
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        std::erase_if(cands, [&](std::size_t r) {
            return used[r] || detail::find_entry(rows[r], col) == nullptr;
        });
        if (cands.empty()) throw std::runtime_error("solve_stationary: singular system");
        const std::size_t piv = *std::ranges::min_element(
            cands, {}, [&](std::size_t r) { return rows[r].size(); });
        used[piv] = 1;
        pivot_of[col] = piv;
        const Rational pv = *detail::find_entry(rows[piv], col);
        for (std::size_t r : cands) {
            if (r == piv) continue;
            factor = *detail::find_entry(rows[r], col) / pv;
            fresh.clear();
            detail::subtract_scaled(rows[r], factor, rows[piv], fresh);
            rhs[r] -= factor * rhs[piv];
            for (auto c : fresh) col_rows[c].push_back(r);
        }
        cands.clear();
    }

    // The pivot row of column c only holds columns >= c.
    std::vector<Rational> pi(n);
    pi[m] = 1;
    for (std::size_t col = m; col-- > 0;) {
        const auto& row = rows[pivot_of[col]];
        Rational acc = rhs[pivot_of[col]];
        const Rational* diag = nullptr;
        for (const auto& [c, v] : row) {
            if (c == col) {
                diag = &v;
            } else {
                acc -= v * pi[c];
            }
        }
        pi[col] = acc / *diag;
    }
    Rational total = 0;
    for (const auto& p : pi) total += p;
    for (auto& p : pi) p /= total;
    return pi;
}

} // namespace tasep
