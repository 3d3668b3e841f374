#pragma once

/**
 * Binary trees in which every vertex may have a marked left child, a marked
 * right child, both or neither, and their two sequence encodings f and g.
 *
 * T -> (f(T), g(T)) is a bijection between trees and dominating pairs
 * (A, B) with A = f(T); decode() is its inverse. Consequently the number of
 * trees with f(T) = A is weight(A).
 *
 * Text form: TREE := "(" ["L" TREE] ["R" TREE] ")". The single vertex is
 * "()", a root with two childless children is "(L()R())".
 */

#include "tasep/seqcomb.hpp"

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tasep {

class BinaryTree {
public:
    // A single vertex, no edges.
    BinaryTree() = default;

    static BinaryTree left_only(BinaryTree left) { return BinaryTree(wrap(std::move(left)), nullptr); }
    static BinaryTree right_only(BinaryTree right) { return BinaryTree(nullptr, wrap(std::move(right))); }
    static BinaryTree both(BinaryTree left, BinaryTree right)
    {
        return BinaryTree(wrap(std::move(left)), wrap(std::move(right)));
    }

    bool has_left() const noexcept { return left_ != nullptr; }
    bool has_right() const noexcept { return right_ != nullptr; }
    const BinaryTree& left() const { return require(left_, "left"); }
    const BinaryTree& right() const { return require(right_, "right"); }

    std::size_t edges() const noexcept { return edges_; }
    std::size_t nodes() const noexcept { return edges_ + 1; }
    std::size_t right_children() const noexcept { return right_children_; }

    std::string str() const
    {
        std::string out;
        write(out);
        return out;
    }

    static BinaryTree parse(std::string_view text)
    {
        std::size_t pos = 0;
        BinaryTree t = parse_at(text, pos);
        if (pos != text.size()) throw std::invalid_argument("tree text has trailing characters");
        return t;
    }

    friend bool operator==(const BinaryTree& x, const BinaryTree& y)
    {
        if (x.edges_ != y.edges_ || x.has_left() != y.has_left() || x.has_right() != y.has_right()) {
            return false;
        }
        if (x.has_left() && !(*x.left_ == *y.left_)) return false;
        return !x.has_right() || *x.right_ == *y.right_;
    }

private:
    using Child = std::shared_ptr<const BinaryTree>;

    BinaryTree(Child left, Child right) : left_(std::move(left)), right_(std::move(right))
    {
        if (left_) {
            edges_ += 1 + left_->edges_;
            right_children_ += left_->right_children_;
        }
        if (right_) {
            edges_ += 1 + right_->edges_;
            right_children_ += 1 + right_->right_children_;
        }
    }

    static Child wrap(BinaryTree t) { return std::make_shared<const BinaryTree>(std::move(t)); }

    static const BinaryTree& require(const Child& c, const char* side)
    {
        if (!c) throw std::logic_error(std::string("tree has no ") + side + " child");
        return *c;
    }

    void write(std::string& out) const
    {
        out += '(';
        if (left_) {
            out += 'L';
            left_->write(out);
        }
        if (right_) {
            out += 'R';
            right_->write(out);
        }
        out += ')';
    }

    static BinaryTree parse_at(std::string_view text, std::size_t& pos)
    {
        auto expect = [&](char c) {
            if (pos >= text.size() || text[pos] != c) {
                throw std::invalid_argument("tree text: expected '" + std::string(1, c) +
                                            "' at offset " + std::to_string(pos));
            }
            ++pos;
        };
        expect('(');
        Child l, r;
        if (pos < text.size() && text[pos] == 'L') {
            ++pos;
            l = wrap(parse_at(text, pos));
        }
        if (pos < text.size() && text[pos] == 'R') {
            ++pos;
            r = wrap(parse_at(text, pos));
        }
        expect(')');
        return BinaryTree(std::move(l), std::move(r));
    }

    Child left_;
    Child right_;
    std::size_t edges_ = 0;
    std::size_t right_children_ = 0;
};

namespace detail {

inline void append_f(const BinaryTree& t, std::string& out)
{
    if (t.has_left()) append_f(t.left(), out);
    if (t.has_left() && t.has_right()) {
        out += "01";
    } else if (t.has_left()) {
        out += '0';
    } else if (t.has_right()) {
        out += '1';
    }
    if (t.has_right()) append_f(t.right(), out);
}

inline void append_g(const BinaryTree& t, std::string& out)
{
    if (t.has_left()) {
        out += '0';
        append_g(t.left(), out);
    }
    if (t.has_right()) {
        out += '1';
        append_g(t.right(), out);
    }
}

inline BinaryTree decode_views(std::string_view a, std::string_view b)
{
    const std::size_t n = a.size();
    if (n == 0) return BinaryTree();

    // First i in [0, n) where a(i) < b(i+1), with a(i), b(i) prefix counts.
    std::size_t ai = 0, bi = 0;  // a(i), b(i)
    std::size_t split = n;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t b_next = bi + (b[i] == '1');
        if (ai < b_next) {
            split = i;
            break;
        }
        ai += a[i] == '1';
        bi = b_next;
    }

    auto malformed = [&] {
        return std::logic_error("decode: inconsistent pair " + std::string(a) + " / " +
                                std::string(b));
    };
    if (split == 0) {
        // A = 1Y, B = 1Y'
        if (a[0] != '1' || b[0] != '1') throw malformed();
        return BinaryTree::right_only(decode_views(a.substr(1), b.substr(1)));
    }
    if (split == n) {
        // A = X0, B = 0X'
        if (a[n - 1] != '0' || b[0] != '0') throw malformed();
        return BinaryTree::left_only(decode_views(a.substr(0, n - 1), b.substr(1)));
    }
    // |L| = split - 1: A = X 01 Y, B = 0 X' 1 Y'
    const std::size_t l = split - 1;
    if (a[l] != '0' || a[l + 1] != '1' || b[0] != '0' || b[l + 1] != '1') throw malformed();
    return BinaryTree::both(decode_views(a.substr(0, l), b.substr(1, l)),
                            decode_views(a.substr(l + 2), b.substr(l + 2)));
}

} // namespace detail

inline BinarySequence f_encode(const BinaryTree& t)
{
    std::string out;
    out.reserve(t.edges());
    detail::append_f(t, out);
    return BinarySequence(out);
}

inline BinarySequence g_encode(const BinaryTree& t)
{
    std::string out;
    out.reserve(t.edges());
    detail::append_g(t, out);
    return BinarySequence(out);
}

/// The unique tree with f_encode = a and g_encode = b. Requires dominates(a, b).
inline BinaryTree decode(const BinarySequence& a, const BinarySequence& b)
{
    if (!dominates(a, b)) {
        throw std::invalid_argument("decode: " + a.str() + " does not dominate " + b.str());
    }
    return detail::decode_views(a.str(), b.str());
}

inline constexpr std::size_t kMaxTreeEdges = 12;

/// Every tree with exactly n_edges edges, each once.
inline std::vector<BinaryTree> enumerate_trees(std::size_t n_edges)
{
    if (n_edges > kMaxTreeEdges) {
        throw std::length_error("enumerate_trees: " + std::to_string(n_edges) + " edges exceeds " +
                                std::to_string(kMaxTreeEdges));
    }
    std::vector<std::vector<BinaryTree>> by_size(n_edges + 1);
    by_size[0].emplace_back();
    for (std::size_t n = 1; n <= n_edges; ++n) {
        auto& out = by_size[n];
        for (const auto& sub : by_size[n - 1]) {
            out.push_back(BinaryTree::left_only(sub));
            out.push_back(BinaryTree::right_only(sub));
        }
        for (std::size_t i = 0; i + 2 <= n; ++i) {
            for (const auto& l : by_size[i]) {
                for (const auto& r : by_size[n - 2 - i]) out.push_back(BinaryTree::both(l, r));
            }
        }
    }
    return std::move(by_size[n_edges]);
}

} // namespace tasep
