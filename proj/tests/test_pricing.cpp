#include "priced_sort/ground_truth.hpp"
#include "priced_sort/instance_gen.hpp"
#include "priced_sort/oracle.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace priced_sort;
using test_util::from_ranks;
using test_util::from_sorted;

TEST(Oracle, ChargesByColorPair) {
    auto inst = from_ranks({kRed, kBlue, kRed, kRed}, {0, 1, 3, 2}, Price(5), Price(7));
    ComparisonOracle o(inst);
    EXPECT_EQ(o.compare(0, 1), Order::less);
    EXPECT_EQ(o.total_cost(), Price(1));
    EXPECT_EQ(o.compare(2, 3), Order::greater);
    EXPECT_EQ(o.total_cost(), Price(6));
    EXPECT_EQ(o.ledger().count_rr(), 1u);
    EXPECT_EQ(o.ledger().count_rb(), 1u);
}

TEST(Oracle, SentinelsAreFree) {
    auto inst = from_sorted("RB", Price(5), Price(7));
    ComparisonOracle o(inst);
    EXPECT_EQ(o.compare(kRedSentinel, 0), Order::less);
    EXPECT_EQ(o.compare(1, kBlueSentinel), Order::less);
    EXPECT_EQ(o.compare(kBlueSentinel, kRedSentinel), Order::greater);
    EXPECT_EQ(o.total_cost(), Price(0));
    EXPECT_EQ(o.ledger().sentinel, 3u);
    EXPECT_EQ(o.ledger().charged(), 0u);
}

TEST(Oracle, RejectsSelfAndUnknownIds) {
    auto inst = from_sorted("RB", Price(2), Price(2));
    ComparisonOracle o(inst);
    EXPECT_THROW(o.compare(0, 0), std::invalid_argument);
    EXPECT_THROW(o.compare(0, 2), std::invalid_argument);
    EXPECT_THROW(o.compare(-7, 1), std::invalid_argument);
}

TEST(Oracle, LedgerConservationAndConsistency) {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        GenSpec spec{.n = 7, .m = 6, .alpha = Price(5, 2), .beta = Price(3), .seed = static_cast<std::uint64_t>(t)};
        auto inst = generate(spec);
        GroundTruth truth(inst);
        ComparisonOracle o(inst);
        std::uint64_t k = 0;
        std::uint64_t rr = 0, bb = 0, rb = 0;
        for (int q = 0; q < 200; ++q) {
            auto a = static_cast<KeyId>(rng.uniform_index(inst.size()));
            auto b = static_cast<KeyId>(rng.uniform_index(inst.size()));
            if (a == b) continue;
            bool less = o.less(a, b);
            ++k;
            EXPECT_EQ(less, truth.rank(a) < truth.rank(b));
            if (inst.color(a) != inst.color(b)) ++rb;
            else (inst.color(a) == kRed ? rr : bb)++;
        }
        EXPECT_EQ(o.ledger().charged(), k);
        EXPECT_EQ(o.total_cost(), Price(5, 2) * Price(static_cast<std::int64_t>(rr)) +
                                      Price(3) * Price(static_cast<std::int64_t>(bb)) +
                                      Price(static_cast<std::int64_t>(rb)));
    }
}

TEST(Oracle, NoCyclesOnTriples) {
    auto inst = generate(GenSpec{.n = 5, .m = 5, .seed = 3});
    ComparisonOracle o(inst);
    for (KeyId a = 0; a < 10; ++a)
        for (KeyId b = 0; b < 10; ++b)
            for (KeyId c = 0; c < 10; ++c) {
                if (a == b || b == c || a == c) continue;
                EXPECT_FALSE(o.less(a, b) && o.less(b, c) && o.less(c, a));
            }
}

TEST(Oracle, RepeatsChargedUnlessRemembered) {
    auto inst = from_ranks({kRed, kBlue, kRed}, {0, 1, 2}, Price(5), Price(7));
    ComparisonOracle plain(inst);
    plain.compare(0, 1);
    plain.compare(1, 0);
    EXPECT_EQ(plain.total_cost(), Price(2));
    EXPECT_EQ(plain.ledger().recalled, 0u);

    ComparisonOracle memo(inst);
    memo.remember_answers(true);
    EXPECT_EQ(memo.compare(0, 1), Order::less);
    EXPECT_EQ(memo.compare(1, 0), Order::greater);
    EXPECT_EQ(memo.compare(0, 2), Order::less);
    EXPECT_EQ(memo.compare(2, 0), Order::greater);
    EXPECT_EQ(memo.total_cost(), Price(6));
    EXPECT_EQ(memo.ledger().recalled, 2u);
    EXPECT_EQ(memo.ledger().charged(), 2u);
}

TEST(Oracle, PhaseLedgersPartitionTheTotal) {
    auto inst = from_sorted("RRBB", Price(3), Price(4));
    ComparisonOracle o(inst);
    o.compare(0, 1);
    {
        PhaseScope s(o, Phase::pivot);
        o.compare(0, 2);
        o.compare(2, 3);
    }
    EXPECT_EQ(o.phase(), Phase::search);
    EXPECT_EQ(o.phase_cost(Phase::search), Price(3));
    EXPECT_EQ(o.phase_cost(Phase::pivot), Price(5));
    EXPECT_EQ(o.total_cost(), Price(8));
}

TEST(GroundTruth, HamiltonianExamples) {
    EXPECT_EQ(GroundTruth(from_sorted("RRBBR", Price(3), Price(5), 9)).hamiltonian_cost(), Price(10));
    EXPECT_EQ(GroundTruth(from_sorted("RBRB", Price(100), Price(100))).hamiltonian_cost(), Price(3));
    EXPECT_EQ(GroundTruth(from_sorted("RRRR", Price(2), Price(9))).hamiltonian_cost(), Price(6));
    EXPECT_EQ(GroundTruth(from_sorted("R", Price(2), Price(9))).hamiltonian_cost(), Price(0));
}

TEST(GroundTruth, StripesExamples) {
    auto s = GroundTruth(from_sorted("RRBRB", Price(2), Price(2), 5)).stripes();
    ASSERT_EQ(s.size(), 4u);
    EXPECT_EQ(s[0].keys.size(), 2u);
    EXPECT_EQ(GroundTruth(from_sorted("RRRRR", Price(2), Price(2))).stripes().size(), 1u);
    EXPECT_EQ(GroundTruth(from_sorted("RBRBRBRB", Price(2), Price(2))).stripes().size(), 8u);
}

TEST(GroundTruth, TrueSortedExamples) {
    EXPECT_EQ(GroundTruth(from_ranks({kRed, kBlue, kRed}, {2, 0, 1})).true_sorted(), (std::vector<KeyId>{1, 2, 0}));
    EXPECT_EQ(GroundTruth(from_ranks({kBlue}, {0})).true_sorted(), (std::vector<KeyId>{0}));
    EXPECT_EQ(GroundTruth(from_ranks({kRed, kRed, kBlue}, {0, 1, 2})).true_sorted(), (std::vector<KeyId>{0, 1, 2}));
}

// Brute force over every instance with N <= 12 (up to relabeling).
TEST(GroundTruth, HamiltonianAndStripesMatchBruteForce) {
    for (std::size_t n = 1; n <= 12; ++n) {
        enumerate_small(n, Price(7, 3), Price(5), [&](const PricedInstance& inst) {
            GroundTruth truth(inst);
            std::vector<KeyId> ids(inst.size());
            for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<KeyId>(i);
            std::sort(ids.begin(), ids.end(), [&](KeyId a, KeyId b) { return truth.rank(a) < truth.rank(b); });
            Price h;
            for (std::size_t i = 1; i < ids.size(); ++i) h += inst.comparison_price(ids[i - 1], ids[i]);
            ASSERT_EQ(truth.hamiltonian_cost(), h);
            std::vector<KeyId> concat;
            Color last = 255;
            for (const auto& s : truth.stripes()) {
                ASSERT_NE(s.color, last);
                last = s.color;
                concat.insert(concat.end(), s.keys.begin(), s.keys.end());
            }
            ASSERT_EQ(concat, ids);
        });
    }
}

TEST(Instance, Validation) {
    EXPECT_THROW(PricedInstance({kRed, kBlue}, {0, 0}, Price(2), Price(2)), std::invalid_argument);
    EXPECT_THROW(PricedInstance({kRed, kBlue}, {0, 2}, Price(2), Price(2)), std::invalid_argument);
    EXPECT_THROW(PricedInstance({kRed, 2}, {0, 1}, Price(2), Price(2)), std::invalid_argument);
    EXPECT_THROW(PricedInstance({kRed}, {0, 1}, Price(2), Price(2)), std::invalid_argument);
}
