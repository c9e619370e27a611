#include "priced_sort/analysis.hpp"
#include "priced_sort/instance_gen.hpp"
#include "priced_sort/inversion_search.hpp"
#include "priced_sort/inversion_sort.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

using namespace priced_sort;
using test_util::from_ranks;
using test_util::from_sorted;

namespace {

std::vector<std::uint64_t> sampling_rounds(Price alpha, int rounds) {
    auto inst = from_sorted(std::string(40, 'R') + "B", alpha, Price(2), 3);
    ComparisonOracle oracle(inst);
    Rng rng(1);
    auto bb = Backbone::bichromatic(inst.keys_of_color(kRed), inst.keys_of_color(kBlue));
    std::vector<Handle> active{bb.head()};
    std::vector<std::uint64_t> out;
    for (int r = 1; r <= rounds; ++r) {
        std::size_t before = bb.bucket(bb.head()).sampled;
        replenish_samples(bb, active, oracle, rng);
        if (bb.bucket(bb.head()).sampled > before) out.push_back(static_cast<std::uint64_t>(r));
    }
    return out;
}

}  // namespace

TEST(Replenish, IntegerPricePeriod) {
    EXPECT_EQ(sampling_rounds(Price(3), 10), (std::vector<std::uint64_t>{3, 6, 9}));
}

TEST(Replenish, FractionalPriceUsesCredit) {
    EXPECT_EQ(sampling_rounds(Price(5, 2), 10), (std::vector<std::uint64_t>{3, 5, 8, 10}));
}

TEST(Replenish, ExhaustedSampleHoldsTrueExtremes) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto inst = generate(GenSpec{.n = 9, .m = 7, .alpha = Price(2), .beta = Price(3), .seed = seed});
        GroundTruth truth(inst);
        ComparisonOracle oracle(inst);
        Rng rng(seed);
        auto bb = Backbone::bichromatic(inst.keys_of_color(kRed), inst.keys_of_color(kBlue));
        std::vector<Handle> active{bb.head()};
        for (int r = 0; r < 100; ++r) replenish_samples(bb, active, oracle, rng);
        for (Handle h : {bb.head(), bb.tail()}) {
            const Bucket& b = bb.bucket(h);
            ASSERT_TRUE(b.exhausted());
            KeyId lo = b.members.front(), hi = b.members.front();
            for (KeyId k : b.members) {
                if (truth.rank(k) < truth.rank(lo)) lo = k;
                if (truth.rank(k) > truth.rank(hi)) hi = k;
            }
            // the sentinel representative stays the outer extreme on its side
            if (h == bb.head()) EXPECT_EQ(b.sample_max, hi);
            else EXPECT_EQ(b.sample_min, lo);
        }
        EXPECT_EQ(oracle.ledger().count_rb(), 0u);
    }
}

TEST(Probe, NoInversionWhenBucketsOrdered) {
    auto inst = from_sorted("RRRRBBBB", Price(2), Price(2), 4);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        ComparisonOracle oracle(inst);
        Rng rng(seed);
        auto bb = Backbone::bichromatic(inst.keys_of_color(kRed), inst.keys_of_color(kBlue));
        std::vector<Handle> active{bb.head()};
        for (int r = 0; r < 4; ++r) replenish_samples(bb, active, oracle, rng);
        auto out = round_probe(bb, bb.head(), oracle, rng);
        EXPECT_FALSE(out.found());
        EXPECT_LE(out.comparisons, 4u);
    }
}

TEST(Probe, FindsTheOnlyPair) {
    // one red above one blue: every probe that draws both finds it on test 1
    auto inst = from_sorted("BR", Price(2), Price(2));
    int found = 0;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        ComparisonOracle oracle(inst);
        Rng rng(seed);
        auto bb = Backbone::bichromatic(inst.keys_of_color(kRed), inst.keys_of_color(kBlue));
        auto out = round_probe(bb, bb.head(), oracle, rng);
        if (out.found()) {
            ++found;
            EXPECT_EQ(out.test, 1);
            EXPECT_EQ(out.inversion.y, 0);
            EXPECT_EQ(out.inversion.x, 1);
            EXPECT_TRUE(out.inversion.x_uniform && out.inversion.y_uniform);
        } else {
            EXPECT_EQ(out.comparisons, 0u);
        }
    }
    EXPECT_GT(found, 50);
}

// Success rate equals the inverted fraction of (members + rep) pairs, 3 sigma.
TEST(Probe, SuccessRateMatchesInvertedFraction) {
    auto inst = from_sorted("BRBRRBBRRRB", Price(2), Price(2), 8);
    GroundTruth truth(inst);
    auto reds = inst.keys_of_color(kRed), blues = inst.keys_of_color(kBlue);
    int inv = 0;
    for (auto r : reds)
        for (auto b : blues) inv += truth.rank(b) < truth.rank(r);
    const double p = inv / static_cast<double>((reds.size() + 1) * (blues.size() + 1));
    const int trials = 10000;
    int hits = 0;
    Rng rng(5);
    for (int t = 0; t < trials; ++t) {
        ComparisonOracle oracle(inst);
        auto bb = Backbone::bichromatic(reds, blues);
        hits += round_probe(bb, bb.head(), oracle, rng).found();
    }
    const double sd = std::sqrt(trials * p * (1 - p));
    EXPECT_NEAR(hits, trials * p, 3 * sd);
}

TEST(Canonicalize, UniformPairIsKept) {
    auto inst = from_sorted("BR", Price(2), Price(2));
    ComparisonOracle oracle(inst);
    Rng rng(1);
    auto bb = Backbone::bichromatic(inst.keys_of_color(kRed), inst.keys_of_color(kBlue));
    std::uint64_t charged = 0;
    auto [y, x] = canonicalize_inversion(bb, bb.head(), {0, 1, true, true}, oracle, rng, &charged);
    EXPECT_EQ(y, 0);
    EXPECT_EQ(x, 1);
    EXPECT_EQ(charged, 0u);
    EXPECT_EQ(oracle.ledger().charged(), 0u);
}

TEST(Canonicalize, PartnerDrawnFromFarSide) {
    // reds at ranks 2, 5, 9; blue at rank 4 kept; far side is {5, 9}
    std::vector<Color> colors = {kRed, kRed, kRed, kBlue, kBlue, kBlue, kBlue, kBlue, kBlue, kBlue};
    std::vector<std::int32_t> ranks = {2, 5, 9, 4, 0, 1, 3, 6, 7, 8};
    auto inst = from_ranks(colors, ranks);
    std::map<KeyId, int> freq;
    Rng rng(3);
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        ComparisonOracle oracle(inst);
        auto bb = Backbone::bichromatic(std::vector<KeyId>{0, 1, 2}, std::vector<KeyId>{3});
        std::uint64_t charged = 0;
        auto [y, x] = canonicalize_inversion(bb, bb.head(), {3, 2, true, false}, oracle, rng, &charged);
        ASSERT_EQ(y, 3);
        ASSERT_EQ(charged, 2u);  // the known partner is not compared again
        ++freq[x];
    }
    ASSERT_EQ(freq.size(), 2u);
    const double sd = std::sqrt(trials * 0.25);
    EXPECT_NEAR(freq[1], trials / 2.0, 3 * sd);
    EXPECT_NEAR(freq[2], trials / 2.0, 3 * sd);
}

TEST(Canonicalize, KeepsUniformXAndRedrawsY) {
    // lower bucket red x at rank 6 drawn uniformly; upper blues at 1, 3, 8: far side {1, 3}
    std::vector<Color> colors = {kRed, kBlue, kBlue, kBlue, kRed, kRed, kRed, kRed, kRed};
    std::vector<std::int32_t> ranks = {6, 1, 3, 8, 0, 2, 4, 5, 7};
    auto inst = from_ranks(colors, ranks);
    std::map<KeyId, int> freq;
    Rng rng(4);
    for (int t = 0; t < 4000; ++t) {
        ComparisonOracle oracle(inst);
        auto bb = Backbone::bichromatic(std::vector<KeyId>{0}, std::vector<KeyId>{1, 2, 3});
        auto [y, x] = canonicalize_inversion(bb, bb.head(), {2, 0, false, true}, oracle, rng);
        ASSERT_EQ(x, 0);
        ++freq[y];
    }
    EXPECT_EQ(freq.size(), 2u);
    EXPECT_GT(freq[1], 1700);
    EXPECT_GT(freq[2], 1700);
}

TEST(Certificate, AllPairsProvesOrder) {
    auto inst = from_sorted("RRBB", Price(100), Price(100), 2);
    ComparisonOracle oracle(inst);
    Rng rng(1);
    auto bb = Backbone::bichromatic(inst.keys_of_color(kRed), inst.keys_of_color(kBlue));
    auto choice = subproblem_certificate(bb, bb.head(), oracle);
    ASSERT_EQ(choice.kind, CertificateKind::all_pairs);
    auto out = run_certificate(bb, bb.head(), choice, oracle, rng);
    EXPECT_EQ(out.result, ProbeOutcome::Result::certificate_complete);
    EXPECT_EQ(oracle.ledger().count_rb(), 4u);
    EXPECT_EQ(oracle.ledger().charged(), 4u);
}

TEST(Certificate, ExtremeScanFindsInversion) {
    // reds 0..3 with max red at rank 5 above blue rank 4
    auto inst = from_sorted("RRRRBRBB", Price(3, 2), Price(50), 6);
    GroundTruth truth(inst);
    ComparisonOracle oracle(inst);
    Rng rng(2);
    auto bb = Backbone::bichromatic(inst.keys_of_color(kRed), inst.keys_of_color(kBlue));
    auto choice = subproblem_certificate(bb, bb.head(), oracle);
    ASSERT_EQ(choice.kind, CertificateKind::a_extreme_then_b);
    auto out = run_certificate(bb, bb.head(), choice, oracle, rng);
    ASSERT_TRUE(out.found());
    EXPECT_EQ(truth.rank(out.inversion.x), 5);
    EXPECT_EQ(truth.rank(out.inversion.y), 4);
    EXPECT_EQ(oracle.ledger().count_rr(), 4u);
    EXPECT_EQ(oracle.ledger().count_rb(), 3u);
}

TEST(Certificate, BothExtremesInversionIsCanonical) {
    auto inst = from_sorted("RRBRBB", Price(2), Price(2), 9);
    GroundTruth truth(inst);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        ComparisonOracle oracle(inst);
        Rng rng(seed);
        auto bb = Backbone::bichromatic(inst.keys_of_color(kRed), inst.keys_of_color(kBlue));
        CertificateChoice choice{CertificateKind::both_extremes, Price(0), 3, 3};
        auto out = run_certificate(bb, bb.head(), choice, oracle, rng);
        ASSERT_TRUE(out.found());
        EXPECT_EQ(truth.rank(out.inversion.y), 2);  // min blue kept
        EXPECT_EQ(truth.rank(out.inversion.x), 3);
    }
}

TEST(Certificate, TriggersWhenAgeExceedsCost) {
    // A = 3, B = 4, alpha = beta = 5: cheapest certificate is all pairs at 12.
    // Ranks keep the buckets ordered so the probes never succeed.
    auto inst = from_sorted("RRRBBBB", Price(5), Price(5), 12);
    std::uint64_t finished_at = 0;
    InversionSortOptions opt;
    std::uint64_t round_seen = 0;
    opt.after_round = [&](const Backbone& bb, const RefinementTree&, std::uint64_t r) {
        round_seen = r;
        if (!finished_at && bb.active_subproblems().empty()) finished_at = r;
    };
    auto res = inversion_sort(inst, 3, opt);
    EXPECT_EQ(finished_at, 13u);
    EXPECT_EQ(res.report.rounds, 13u);
    EXPECT_EQ(round_seen, 13u);
}

// Every certificate that finishes a subproblem is right.
TEST(Certificate, FinishedIsSound) {
    int events = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto inst = generate(GenSpec{.n = 40, .m = 40, .alpha = Price(3), .beta = Price(2),
                                     .pattern = seed % 2 ? Pattern::few_long_stripes : Pattern::uniform_shuffle,
                                     .seed = seed});
        GroundTruth truth(inst);
        InversionSortOptions opt;
        opt.on_certificate = [&](const Backbone& bb, Handle h) {
            ++events;
            ASSERT_TRUE(no_inversion_between(bb, h, truth));
        };
        inversion_sort(inst, seed, opt);
    }
    EXPECT_GT(events, 0);
}

TEST(Certificate, InjectedFaultIsVisible) {
    // a single inverted pair is the last one a certificate compares
    int caught = 0;
    enumerate_small(6, Price(10), Price(3), [&](const PricedInstance& inst) {
        GroundTruth truth(inst);
        InversionSortOptions opt;
        opt.fault.drop_last_cross_comparison = true;
        opt.on_certificate = [&](const Backbone& bb, Handle h) { caught += !no_inversion_between(bb, h, truth); };
        inversion_sort(inst, 0, opt);
    });
    EXPECT_GT(caught, 0);
}

TEST(Probe, PerRoundChargesAreBounded) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto inst = generate(GenSpec{.n = 128, .m = 128, .alpha = Price(2), .beta = Price(2), .seed = seed});
        auto res = inversion_sort(inst, seed);
        for (const auto& r : res.report.round_log) ASSERT_LE(r.max_probe_charges, 6u);
    }
}
