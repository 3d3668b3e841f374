#pragma once

/**
 * Binary sequences, the domination order and domination weights.
 *
 * A sequence A dominates B (A >= B) when B is reachable from A by moving
 * 1s to the right. The weight W(A) counts the sequences A dominates; it is
 * the number of ways the seeds of one binary segment of a TASEP state can
 * be placed, and the building block of the stationary masses.
 *
 * Text form: characters '0' and '1', left to right.
 */

#include "tasep/numeric.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tasep {

class BinarySequence {
public:
    BinarySequence() = default;

    explicit BinarySequence(std::string_view text) : bits_(text)
    {
        for (char c : bits_) {
            if (c != '0' && c != '1') {
                throw std::invalid_argument(
                    "binary sequence contains '" + std::string(1, c) + "'");
            }
        }
    }

    // All 2^n sequences of length n in lexicographic order.
    static std::vector<BinarySequence> all_of_length(std::size_t n)
    {
        if (n > 24) throw std::length_error("all_of_length: n > 24");
        std::vector<BinarySequence> out;
        out.reserve(std::size_t{1} << n);
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            std::string s(n, '0');
            for (std::size_t i = 0; i < n; ++i) {
                if (mask >> (n - 1 - i) & 1) s[i] = '1';
            }
            out.push_back(BinarySequence(std::move(s), unchecked{}));
        }
        return out;
    }

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    int operator[](std::size_t i) const { return bits_[i] == '1'; }
    bool front_is(int bit) const { return !empty() && (*this)[0] == bit; }
    bool back_is(int bit) const { return !empty() && (*this)[size() - 1] == bit; }

    std::size_t ones() const noexcept
    {
        std::size_t k = 0;
        for (char c : bits_) k += c == '1';
        return k;
    }

    BinarySequence slice(std::size_t pos, std::size_t len) const
    {
        return BinarySequence(bits_.substr(pos, len), unchecked{});
    }

    const std::string& str() const noexcept { return bits_; }

    friend BinarySequence operator+(const BinarySequence& x, const BinarySequence& y)
    {
        return BinarySequence(x.bits_ + y.bits_, unchecked{});
    }

    friend bool operator==(const BinarySequence&, const BinarySequence&) = default;
    friend auto operator<=>(const BinarySequence& x, const BinarySequence& y)
    {
        // Shorter first, then lexicographic.
        if (auto c = x.size() <=> y.size(); c != 0) return c;
        return x.bits_ <=> y.bits_;
    }

private:
    struct unchecked {};
    BinarySequence(std::string bits, unchecked) : bits_(std::move(bits)) {}

    std::string bits_;
};

inline BinarySequence operator""_seq(const char* text, std::size_t len)
{
    return BinarySequence(std::string_view(text, len));
}

/// Number of 1s among the first i entries of a.
inline std::size_t prefix_ones(const BinarySequence& a, std::size_t i)
{
    if (i > a.size()) {
        throw std::out_of_range("prefix_ones: index " + std::to_string(i) +
                                " exceeds length " + std::to_string(a.size()));
    }
    std::size_t k = 0;
    for (std::size_t j = 0; j < i; ++j) k += a[j];
    return k;
}

inline bool dominates(const BinarySequence& a, const BinarySequence& b)
{
    if (a.size() != b.size()) return false;
    std::size_t pa = 0, pb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        pa += a[i];
        pb += b[i];
        if (pa < pb) return false;
    }
    return pa == pb;
}

/**
 * W(a): the number of sequences dominated by a.
 *
 * Lattice-path count: position by position, track how many 1s have been
 * placed; a prefix of length i may hold at most prefix_ones(a, i) of them,
 * and the full word must hold exactly ones(a). O(n^2) big-integer adds.
 */
inline Natural weight(const BinarySequence& a)
{
    const std::size_t n = a.size();
    const std::size_t k = a.ones();
    // ways[j]: prefixes with j ones so far that respect the bound.
    std::vector<Natural> ways(k + 1);
    ways[0] = 1;
    std::size_t bound = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bound += a[i];
        // Append a 0 (j stays) or a 1 (j-1 -> j); entries above the bound
        // are never written, so they stay zero.
        for (std::size_t j = std::min(bound, k); j >= 1; --j) {
            ways[j] += ways[j - 1];
        }
    }
    return ways[k];
}

inline constexpr std::size_t kMaxEnumerationLength = 20;

/// Explicit set {b : a dominates b}, sorted. Brute-force oracle for weight().
inline std::vector<BinarySequence> enumerate_dominated(const BinarySequence& a)
{
    if (a.size() > kMaxEnumerationLength) {
        throw std::length_error("enumerate_dominated: length " + std::to_string(a.size()) +
                                " exceeds " + std::to_string(kMaxEnumerationLength));
    }
    std::vector<BinarySequence> out;
    for (auto& b : BinarySequence::all_of_length(a.size())) {
        if (dominates(a, b)) out.push_back(std::move(b));
    }
    return out;
}

/**
 * Decomposition of a nonempty sequence used by the recursive weight identity
 * W(A) = W(X)[A = X0] + W(Y)[A = 1Y] + sum over A = X 01 Y of W(X) W(Y).
 */
struct WeightIdentityTerms {
    std::optional<BinarySequence> without_trailing_zero;  // X with A = X0
    std::optional<BinarySequence> without_leading_one;    // Y with A = 1Y
    std::vector<std::pair<BinarySequence, BinarySequence>> splits;  // A = X 01 Y

    // The individual summands, in the order listed above.
    std::vector<Natural> terms() const
    {
        std::vector<Natural> out;
        if (without_trailing_zero) out.push_back(weight(*without_trailing_zero));
        if (without_leading_one) out.push_back(weight(*without_leading_one));
        for (const auto& [x, y] : splits) out.push_back(weight(x) * weight(y));
        return out;
    }

    Natural total() const
    {
        Natural sum = 0;
        for (const auto& t : terms()) sum += t;
        return sum;
    }
};

inline WeightIdentityTerms weight_identity_terms(const BinarySequence& a)
{
    if (a.empty()) throw std::invalid_argument("weight_identity_terms: empty sequence");
    WeightIdentityTerms t;
    const std::size_t n = a.size();
    if (a.back_is(0)) t.without_trailing_zero = a.slice(0, n - 1);
    if (a.front_is(1)) t.without_leading_one = a.slice(1, n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (a[i] == 0 && a[i + 1] == 1) {
            t.splits.emplace_back(a.slice(0, i), a.slice(i + 2, n - i - 2));
        }
    }
    return t;
}

inline std::size_t count_factor_01(const BinarySequence& a)
{
    std::size_t k = 0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) k += a[i] == 0 && a[i + 1] == 1;
    return k;
}

/**
 * Sequences C with A -> C: drop a leading 0, drop a trailing 1, or rewrite
 * one "10" as "01". One entry per rewrite site. For nonempty A the count is
 * one more than the number of "01" factors.
 */
inline std::vector<BinarySequence> seq_transitions_out(const BinarySequence& a)
{
    std::vector<BinarySequence> out;
    const std::size_t n = a.size();
    if (a.front_is(0)) out.push_back(a.slice(1, n - 1));
    if (a.back_is(1)) out.push_back(a.slice(0, n - 1));
    std::string s = a.str();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (s[i] == '1' && s[i + 1] == '0') {
            std::swap(s[i], s[i + 1]);
            out.emplace_back(s);
            std::swap(s[i], s[i + 1]);
        }
    }
    if (!a.empty() && out.size() != count_factor_01(a) + 1) {
        throw std::logic_error("seq_transitions_out: rewrite count mismatch for " + a.str());
    }
    return out;
}

/**
 * The segments whose mass flows into A when one edge of a state is unsorted:
 * A with a trailing 0 removed, A with a leading 1 removed, and X 10 Y for
 * each split A = X 01 Y.
 */
inline std::vector<BinarySequence> seq_transitions_in(const BinarySequence& a)
{
    std::vector<BinarySequence> in;
    const std::size_t n = a.size();
    if (a.back_is(0)) in.push_back(a.slice(0, n - 1));
    if (a.front_is(1)) in.push_back(a.slice(1, n - 1));
    std::string s = a.str();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (s[i] == '0' && s[i + 1] == '1') {
            std::swap(s[i], s[i + 1]);
            in.emplace_back(s);
            std::swap(s[i], s[i + 1]);
        }
    }
    return in;
}

/// Per-segment mass balance: sum of W over inflows == W(A) * #outflows.
inline bool flow_balance_check(const BinarySequence& a)
{
    Natural inflow = 0;
    for (const auto& b : seq_transitions_in(a)) inflow += weight(b);
    Natural outflow = weight(a) * static_cast<unsigned long>(seq_transitions_out(a).size());
    return inflow == outflow;
}

} // namespace tasep
