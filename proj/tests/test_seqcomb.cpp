#include "tasep/seqcomb.hpp"

#include <gtest/gtest.h>

#include <deque>
#include <random>
#include <set>

using namespace tasep;

namespace {

// Sequences dominated by A are exactly those reached from A by repeatedly
// moving a 1 one step to the right (10 -> 01). Independent of the DP.
std::set<std::string> reachable_by_right_moves(const std::string& a)
{
    std::set<std::string> seen{a};
    std::deque<std::string> todo{a};
    while (!todo.empty()) {
        const std::string s = todo.front();
        todo.pop_front();
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            if (s[i] == '1' && s[i + 1] == '0') {
                std::string t = s;
                std::swap(t[i], t[i + 1]);
                if (seen.insert(t).second) todo.push_back(t);
            }
        }
    }
    return seen;
}

} // namespace

TEST(BinarySequence, RejectsForeignCharacters)
{
    EXPECT_THROW(BinarySequence("1021"), std::invalid_argument);
    EXPECT_THROW(BinarySequence("1 0"), std::invalid_argument);
    EXPECT_NO_THROW(BinarySequence(""));
}

TEST(BinarySequence, BasicAccessors)
{
    const auto a = "011010"_seq;
    EXPECT_EQ(a.size(), 6u);
    EXPECT_EQ(a.ones(), 3u);
    EXPECT_TRUE(a.front_is(0));
    EXPECT_TRUE(a.back_is(0));
    EXPECT_EQ(a.slice(1, 3).str(), "110");
    EXPECT_EQ(("01"_seq + "1"_seq).str(), "011");
    EXPECT_LT("11"_seq, "000"_seq);  // shorter first
    EXPECT_LT("01"_seq, "10"_seq);
}

TEST(BinarySequence, AllOfLength)
{
    for (std::size_t n = 0; n <= 10; ++n) {
        const auto all = BinarySequence::all_of_length(n);
        EXPECT_EQ(all.size(), std::size_t{1} << n);
        EXPECT_EQ(std::set(all.begin(), all.end()).size(), all.size());
    }
}

TEST(PrefixOnes, CountsAndBounds)
{
    const auto a = "1011"_seq;
    EXPECT_EQ(prefix_ones(a, 0), 0u);
    EXPECT_EQ(prefix_ones(a, 2), 1u);
    EXPECT_EQ(prefix_ones(a, 4), 3u);
    EXPECT_THROW(prefix_ones(a, 5), std::out_of_range);
}

TEST(Dominates, Examples)
{
    EXPECT_TRUE(dominates("1010"_seq, "0101"_seq));
    EXPECT_TRUE(dominates("1010"_seq, "1010"_seq));
    EXPECT_FALSE(dominates("0101"_seq, "1010"_seq));
    EXPECT_FALSE(dominates("10"_seq, "100"_seq));  // lengths differ
    EXPECT_FALSE(dominates("11"_seq, "10"_seq));   // ones differ
    EXPECT_TRUE(dominates(""_seq, ""_seq));
}

TEST(Dominates, IsAPartialOrder)
{
    for (std::size_t n = 0; n <= 6; ++n) {
        const auto all = BinarySequence::all_of_length(n);
        for (const auto& x : all) {
            EXPECT_TRUE(dominates(x, x));
            for (const auto& y : all) {
                if (x != y && dominates(x, y)) {
                    EXPECT_FALSE(dominates(y, x));
                }
                if (!dominates(x, y)) continue;
                for (const auto& z : all) {
                    if (dominates(y, z)) {
                        EXPECT_TRUE(dominates(x, z));
                    }
                }
            }
        }
    }
}

TEST(Weight, KnownValues)
{
    EXPECT_EQ(weight("1010"_seq), 5);
    EXPECT_EQ(weight("1011010"_seq), 23);
    EXPECT_EQ(weight("0101"_seq), 2);
    EXPECT_EQ(weight("10100"_seq), 9);
    EXPECT_EQ(weight(""_seq), 1);
    EXPECT_EQ(weight("0011"_seq), 1);
    EXPECT_EQ(weight("1110000"_seq), 35);  // C(7,3): everything is dominated
}

TEST(Weight, MatchesRightMoveClosure)
{
    for (std::size_t n = 0; n <= 10; ++n) {
        for (const auto& a : BinarySequence::all_of_length(n)) {
            const auto closure = reachable_by_right_moves(a.str());
            EXPECT_EQ(weight(a), closure.size()) << a.str();
            std::set<std::string> listed;
            for (const auto& b : enumerate_dominated(a)) listed.insert(b.str());
            EXPECT_EQ(listed, closure) << a.str();
        }
    }
}

TEST(Weight, LeadingZeroAndTrailingOneAreFree)
{
    for (std::size_t n = 0; n <= 9; ++n) {
        for (const auto& a : BinarySequence::all_of_length(n)) {
            EXPECT_EQ(weight("0"_seq + a), weight(a));
            EXPECT_EQ(weight(a + "1"_seq), weight(a));
        }
    }
}

TEST(Weight, SwappingAFactorAddsAProduct)
{
    // W(X10Y) = W(X01Y) + W(X) W(Y)
    for (std::size_t n = 0; n <= 8; ++n) {
        for (const auto& x : BinarySequence::all_of_length(n)) {
            for (std::size_t m = 0; m + n <= 8; ++m) {
                for (const auto& y : BinarySequence::all_of_length(m)) {
                    EXPECT_EQ(weight(x + "10"_seq + y), weight(x + "01"_seq + y) + weight(x) * weight(y));
                }
            }
        }
    }
}

TEST(Weight, LongSequenceIsExact)
{
    // 1^n 0^n dominates every balanced sequence: W = C(2n, n).
    const std::size_t n = 60;
    const BinarySequence a(std::string(n, '1') + std::string(n, '0'));
    EXPECT_EQ(weight(a), binomial(2 * n, n));
}

TEST(EnumerateDominated, GuardsLength)
{
    EXPECT_THROW(enumerate_dominated(BinarySequence(std::string(21, '1'))), std::length_error);
}

TEST(WeightIdentity, WorkedBreakdown)
{
    const auto t = weight_identity_terms("1011010"_seq);
    EXPECT_EQ(t.terms(), (std::vector<Natural>{7, 9, 5, 2}));
    EXPECT_EQ(t.total(), 23);
    ASSERT_TRUE(t.without_trailing_zero);
    EXPECT_EQ(t.without_trailing_zero->str(), "101101");
    ASSERT_TRUE(t.without_leading_one);
    EXPECT_EQ(t.without_leading_one->str(), "011010");
    ASSERT_EQ(t.splits.size(), 2u);
    EXPECT_EQ(t.splits[0].first.str(), "1");
    EXPECT_EQ(t.splits[0].second.str(), "1010");
}

TEST(WeightIdentity, EmptySequenceIsTheBaseCase)
{
    EXPECT_THROW(weight_identity_terms(""_seq), std::invalid_argument);
}

TEST(WeightIdentity, HoldsUpToLengthTwelve)
{
    for (std::size_t n = 1; n <= 12; ++n) {
        for (const auto& a : BinarySequence::all_of_length(n)) {
            EXPECT_EQ(weight_identity_terms(a).total(), weight(a)) << a.str();
        }
    }
}

TEST(Factor01, Counts)
{
    EXPECT_EQ(count_factor_01("0101"_seq), 2u);
    EXPECT_EQ(count_factor_01("1100"_seq), 0u);
    EXPECT_EQ(count_factor_01(""_seq), 0u);
}

TEST(SeqTransitions, OutgoingExamples)
{
    auto strs = [](const std::vector<BinarySequence>& v) {
        std::multiset<std::string> s;
        for (const auto& x : v) s.insert(x.str());
        return s;
    };
    EXPECT_EQ(strs(seq_transitions_out("01"_seq)), (std::multiset<std::string>{"1", "0"}));
    EXPECT_EQ(strs(seq_transitions_out("10"_seq)), (std::multiset<std::string>{"01"}));
    EXPECT_TRUE(seq_transitions_out(""_seq).empty());
}

TEST(SeqTransitions, OutgoingCountIsFactorCountPlusOne)
{
    for (std::size_t n = 1; n <= 10; ++n) {
        for (const auto& a : BinarySequence::all_of_length(n)) {
            EXPECT_EQ(seq_transitions_out(a).size(), count_factor_01(a) + 1) << a.str();
        }
    }
}

TEST(SeqTransitions, IncomingExamples)
{
    auto strs = [](const std::vector<BinarySequence>& v) {
        std::multiset<std::string> s;
        for (const auto& x : v) s.insert(x.str());
        return s;
    };
    EXPECT_EQ(strs(seq_transitions_in("01"_seq)), (std::multiset<std::string>{"10"}));
    EXPECT_EQ(strs(seq_transitions_in("10"_seq)), (std::multiset<std::string>{"1", "0"}));
    EXPECT_TRUE(seq_transitions_in(""_seq).empty());
}

TEST(SeqTransitions, FlowBalance)
{
    EXPECT_TRUE(flow_balance_check(""_seq));
    for (std::size_t n = 1; n <= 11; ++n) {
        for (const auto& a : BinarySequence::all_of_length(n)) EXPECT_TRUE(flow_balance_check(a)) << a.str();
    }
}

TEST(SeqTransitions, IncomingMatchesOutgoingRelation)
{
    // The swap terms are mutually reverse; the length-changing terms are not
    // moves between segments.
    for (std::size_t n = 1; n <= 7; ++n) {
        for (const auto& a : BinarySequence::all_of_length(n)) {
            std::map<std::string, int> in;
            for (const auto& b : seq_transitions_in(a)) {
                if (b.size() == a.size()) ++in[b.str()];
            }
            for (const auto& [b, k] : in) {
                int back = 0;
                for (const auto& c : seq_transitions_out(BinarySequence(b))) back += c.size() == a.size() && c == a;
                EXPECT_EQ(back, k) << b << " -> " << a.str();
            }
        }
    }
}
