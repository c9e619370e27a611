#ifndef PRICED_SORT_INVERSION_SEARCH_HPP
#define PRICED_SORT_INVERSION_SEARCH_HPP

#include "priced_sort/backbone.hpp"
#include "priced_sort/certificate.hpp"
#include "priced_sort/oracle.hpp"
#include "priced_sort/rng.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace priced_sort {

using Handle = Backbone::Handle;

/// A proved inversion y < x with x from the lower bucket and y from the upper
/// bucket of a subproblem; flags record which endpoints were uniform draws.
struct RawInversion {
    KeyId y = kRedSentinel;
    KeyId x = kRedSentinel;
    bool y_uniform = false;
    bool x_uniform = false;
};

struct ProbeOutcome {
    enum class Result : std::uint8_t { no_inversion, inversion, certificate_complete };
    Result result = Result::no_inversion;
    RawInversion inversion;
    int test = 0;                   // 1..4 for probe successes
    std::uint64_t comparisons = 0;  // charged by this call

    bool found() const { return result == Result::inversion; }
};

/// Adds one uniformly drawn unsampled member to the sample and updates the
/// sample extremes with one or two comparisons.
inline void grow_sample(Bucket& b, ComparisonOracle& oracle, Rng& rng) {
    std::size_t pick = b.sampled + rng.uniform_index(b.members.size() - b.sampled);
    std::swap(b.members[b.sampled], b.members[pick]);
    KeyId e = b.members[b.sampled++];
    if (oracle.less(b.sample_max, e)) b.sample_max = e;
    else if (oracle.less(e, b.sample_min)) b.sample_min = e;
}

/*
 * Each bucket taking part in an active subproblem earns one unit of credit;
 * whenever the credit covers the bucket's monochromatic price it is spent on
 * one more sample element. Buckets whose members are all sampled are skipped.
 * `active` must be in backbone order.
 */
inline void replenish_samples(Backbone& backbone, std::span<const Handle> active, ComparisonOracle& oracle,
                              Rng& rng) {
    Handle last = Backbone::npos;
    auto visit = [&](Handle h) {
        if (h == last) return;
        last = h;
        Bucket& b = backbone.bucket(h);
        if (b.exhausted()) return;
        const Price& price = oracle.price(b.color);
        if (price.is_infinite()) return;
        b.credit += Price(1);
        while (b.credit >= price && !b.exhausted()) {
            b.credit -= price;
            grow_sample(b, oracle, rng);
        }
    };
    for (Handle h : active) {
        visit(h);
        visit(backbone.next(h));
    }
}

/*
 * One round of inversion probing for the subproblem at h. Draws x_s from the
 * lower bucket and x_q from the upper bucket (members plus representative)
 * and tries, stopping at the first success:
 *   1. x_s vs x_q
 *   2. x_s vs sample_min(upper)
 *   3. sample_max(lower) vs x_q
 *   4. sample_max(lower) vs sample_min(upper)
 * A test involving a representative has a known answer and is not performed;
 * neither is a test repeating an earlier pair.
 */
inline ProbeOutcome round_probe(Backbone& backbone, Handle h, ComparisonOracle& oracle, Rng& rng) {
    const Bucket& lower = backbone.bucket(h);
    const Bucket& upper = backbone.bucket(backbone.next(h));
    ProbeOutcome out;

    std::size_t is = rng.uniform_index(lower.members.size() + 1);
    std::size_t iq = rng.uniform_index(upper.members.size() + 1);
    KeyId xs = is < lower.members.size() ? lower.members[is] : lower.rep;
    KeyId xq = iq < upper.members.size() ? upper.members[iq] : upper.rep;

    struct Test {
        KeyId left;
        KeyId right;
        bool left_uniform;
        bool right_uniform;
    };
    const Test tests[4] = {
        {xs, xq, true, true},
        {xs, upper.sample_min, true, false},
        {lower.sample_max, xq, false, true},
        {lower.sample_max, upper.sample_min, false, false},
    };
    for (int t = 0; t < 4; ++t) {
        const Test& test = tests[t];
        if (test.left == lower.rep || test.right == upper.rep) continue;
        bool repeated = false;
        for (int p = 0; p < t; ++p)
            repeated |= tests[p].left == test.left && tests[p].right == test.right;
        if (repeated) continue;
        ++out.comparisons;
        if (oracle.less(test.right, test.left)) {
            out.result = ProbeOutcome::Result::inversion;
            out.test = t + 1;
            out.inversion = {test.right, test.left, test.right_uniform, test.left_uniform};
            return out;
        }
    }
    return out;
}

/*
 * Turns a raw inversion into one with the randomness the analysis needs.
 *
 * If both endpoints were uniform draws the pair is returned unchanged.
 * Otherwise one endpoint e is kept (the uniform one, or y when neither is)
 * and every member of the opposite bucket is compared with e; the partner is
 * drawn uniformly from the members on the far side of e, which contains the
 * old endpoint. Returns (y, x).
 */
inline std::pair<KeyId, KeyId> canonicalize_inversion(Backbone& backbone, Handle h, const RawInversion& raw,
                                                      ComparisonOracle& oracle, Rng& rng,
                                                      std::uint64_t* comparisons = nullptr) {
    if (raw.x_uniform && raw.y_uniform) return {raw.y, raw.x};
    std::vector<KeyId> far;
    std::uint64_t charged = 0;
    if (raw.x_uniform) {
        // keep x, redraw y among upper members below x
        for (KeyId k : backbone.bucket(backbone.next(h)).members) {
            if (k == raw.y) {
                far.push_back(k);
                continue;
            }
            ++charged;
            if (oracle.less(k, raw.x)) far.push_back(k);
        }
    } else {
        // keep y, redraw x among lower members above y
        for (KeyId k : backbone.bucket(h).members) {
            if (k == raw.x) {
                far.push_back(k);
                continue;
            }
            ++charged;
            if (oracle.less(raw.y, k)) far.push_back(k);
        }
    }
    if (comparisons) *comparisons += charged;
    if (far.empty()) throw InvariantError("canonicalize_inversion: far side is empty");
    KeyId partner = far[rng.uniform_index(far.size())];
    return raw.x_uniform ? std::pair{partner, raw.x} : std::pair{raw.y, partner};
}

/// Cheapest certificate for the subproblem at h, with A the lower bucket.
inline CertificateChoice subproblem_certificate(const Backbone& backbone, Handle h, const ComparisonOracle& oracle) {
    const Bucket& lower = backbone.bucket(h);
    const Bucket& upper = backbone.bucket(backbone.next(h));
    return certificate_cost(lower.members.size(), upper.members.size(), oracle.price(lower.color),
                            oracle.price(upper.color));
}

/// Test hook: drops the final cross comparison of every certificate so that a
/// missed inversion can be detected downstream.
struct CertificateFault {
    bool drop_last_cross_comparison = false;
};

/*
 * Executes the comparisons of `choice` for the subproblem at h. Returns
 * certificate_complete when they prove there is no inversion, otherwise an
 * inversion in canonical form:
 *   all_pairs         a uniform pair among all inverted pairs found
 *   a_extreme_then_b  x = max(lower), y uniform among upper members below it
 *   b_extreme_then_a  y = min(upper), x uniform among lower members above it
 *   both_extremes     y = min(upper), x redrawn through canonicalize_inversion
 */
inline ProbeOutcome run_certificate(Backbone& backbone, Handle h, const CertificateChoice& choice,
                                    ComparisonOracle& oracle, Rng& rng, CertificateFault fault = {}) {
    const std::vector<KeyId> lower = backbone.bucket(h).members;
    const std::vector<KeyId> upper = backbone.bucket(backbone.next(h)).members;
    ProbeOutcome out;

    auto scan_extreme = [&](const std::vector<KeyId>& keys, bool want_max) {
        KeyId best = keys.front();
        for (std::size_t i = 1; i < keys.size(); ++i) {
            ++out.comparisons;
            bool above = oracle.less(best, keys[i]);
            if (above == want_max) best = keys[i];
        }
        return best;
    };
    auto complete = [&] {
        out.result = ProbeOutcome::Result::certificate_complete;
        return out;
    };
    auto found = [&](KeyId y, KeyId x) {
        out.result = ProbeOutcome::Result::inversion;
        out.inversion = {y, x, true, true};
        return out;
    };

    if (lower.empty() || upper.empty()) return complete();

    switch (choice.kind) {
        case CertificateKind::all_pairs: {
            std::vector<std::pair<KeyId, KeyId>> inverted;
            const std::size_t total = lower.size() * upper.size();
            std::size_t done = 0;
            for (KeyId l : lower) {
                for (KeyId u : upper) {
                    if (++done == total && fault.drop_last_cross_comparison) break;
                    ++out.comparisons;
                    if (oracle.less(u, l)) inverted.emplace_back(u, l);
                }
            }
            if (inverted.empty()) return complete();
            auto [y, x] = inverted[rng.uniform_index(inverted.size())];
            return found(y, x);
        }
        case CertificateKind::a_extreme_then_b: {
            KeyId top = scan_extreme(lower, true);
            std::vector<KeyId> below;
            for (std::size_t i = 0; i < upper.size(); ++i) {
                if (fault.drop_last_cross_comparison && i + 1 == upper.size()) break;
                ++out.comparisons;
                if (oracle.less(upper[i], top)) below.push_back(upper[i]);
            }
            if (below.empty()) return complete();
            return found(below[rng.uniform_index(below.size())], top);
        }
        case CertificateKind::b_extreme_then_a: {
            KeyId bottom = scan_extreme(upper, false);
            std::vector<KeyId> above;
            for (std::size_t i = 0; i < lower.size(); ++i) {
                if (fault.drop_last_cross_comparison && i + 1 == lower.size()) break;
                ++out.comparisons;
                if (oracle.less(bottom, lower[i])) above.push_back(lower[i]);
            }
            if (above.empty()) return complete();
            return found(bottom, above[rng.uniform_index(above.size())]);
        }
        case CertificateKind::both_extremes: {
            KeyId top = scan_extreme(lower, true);
            KeyId bottom = scan_extreme(upper, false);
            if (fault.drop_last_cross_comparison) return complete();
            ++out.comparisons;
            if (!oracle.less(bottom, top)) return complete();
            RawInversion raw{bottom, top, false, false};
            auto [y, x] = canonicalize_inversion(backbone, h, raw, oracle, rng, &out.comparisons);
            return found(y, x);
        }
    }
    return complete();
}

}  // namespace priced_sort

#endif
