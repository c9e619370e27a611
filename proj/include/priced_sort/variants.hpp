#ifndef PRICED_SORT_VARIANTS_HPP
#define PRICED_SORT_VARIANTS_HPP

// Sorting outside the InversionSort regime: cheap monochromatic prices, and
// more than two colors.

#include "priced_sort/backbone.hpp"
#include "priced_sort/inversion_sort.hpp"
#include "priced_sort/merge_sort.hpp"
#include "priced_sort/report.hpp"
#include "priced_sort/rng.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace priced_sort {

inline bool both_cheap_regime(const Price& alpha, const Price& beta) { return alpha <= Price(1) && beta <= Price(1); }

inline bool middle_regime(const Price& alpha, const Price& beta) {
    return (alpha <= Price(1) && beta > Price(1)) || (beta <= Price(1) && alpha > Price(1));
}

/// One maximal run emitted by the galloping merge.
struct MergeRun {
    Color color = kRed;
    std::size_t length = 0;
    std::uint64_t comparisons = 0;  // bichromatic comparisons spent finding its end
};

struct MergeTrace {
    std::vector<MergeRun> runs;
    std::uint64_t comparisons = 0;
};

/*
 * Merges two sorted lists of different colors. Starting from the head of the
 * list currently in front, gallops with offsets 1, 3, 7, .. against the other
 * list's head, then binary-searches the last interval. A run of length g costs
 * at most 2(log2 g + 1) comparisons; the first head comparison is charged to
 * the first run.
 */
inline std::vector<KeyId> galloping_merge(const std::vector<KeyId>& a, const std::vector<KeyId>& b,
                                          ComparisonOracle& oracle, MergeTrace* trace = nullptr) {
    std::vector<KeyId> out;
    out.reserve(a.size() + b.size());
    MergeTrace local;
    MergeTrace& tr = trace ? *trace : local;
    if (a.empty() || b.empty()) {
        const auto& rest = a.empty() ? b : a;
        out = rest;
        if (!rest.empty()) tr.runs.push_back({oracle.color(rest.front()), rest.size(), 0});
        return out;
    }

    std::uint64_t pending = 1;
    const std::vector<KeyId>* x = &a;
    const std::vector<KeyId>* y = &b;
    if (oracle.less(b.front(), a.front())) std::swap(x, y);
    std::size_t i = 0, j = 0;  // heads of *x and *y; (*x)[i] < (*y)[j] is known

    for (;;) {
        const KeyId pivot = (*y)[j];
        const std::size_t avail = x->size() - i;
        std::uint64_t spent = pending;
        pending = 0;
        // (*x)[i + below] < pivot is known; (*x)[i + above] > pivot or above == avail
        std::size_t below = 0, above = avail;
        for (std::size_t d = 1; d < avail; d = 2 * d + 1) {
            ++spent;
            if (oracle.less((*x)[i + d], pivot)) {
                below = d;
            } else {
                above = d;
                break;
            }
        }
        while (above - below > 1) {
            std::size_t mid = below + (above - below) / 2;
            ++spent;
            if (oracle.less((*x)[i + mid], pivot)) below = mid;
            else above = mid;
        }
        tr.runs.push_back({oracle.color((*x)[i]), above, spent});
        tr.comparisons += spent;
        out.insert(out.end(), x->begin() + static_cast<std::ptrdiff_t>(i),
                   x->begin() + static_cast<std::ptrdiff_t>(i + above));
        i += above;
        if (i == x->size()) break;
        std::swap(x, y);
        std::swap(i, j);
    }
    tr.runs.push_back({oracle.color((*y)[j]), y->size() - j, 0});
    out.insert(out.end(), y->begin() + static_cast<std::ptrdiff_t>(j), y->end());
    return out;
}

/*
 * Regime alpha <= 1 and beta <= 1: sort each color with merge sort, then
 * merge them by galloping. Monochromatic sorting is reported as stripe
 * sorting, the merge as search.
 */
inline SortResult sort_both_then_merge(ComparisonOracle& oracle, MergeTrace* trace = nullptr) {
    const PricedInstance& inst = oracle.instance();
    if (!inst.is_bichromatic()) throw RegimeError("sort_both_then_merge: instance is not bichromatic");
    if (!both_cheap_regime(inst.alpha(), inst.beta()))
        throw RegimeError("sort_both_then_merge needs alpha <= 1 and beta <= 1");
    SortResult result;
    std::vector<KeyId> reds, blues;
    {
        PhaseScope scope(oracle, Phase::stripe_sort);
        reds = sort_stripe(inst.keys_of_color(kRed), oracle);
        blues = sort_stripe(inst.keys_of_color(kBlue), oracle);
    }
    {
        PhaseScope scope(oracle, Phase::search);
        result.order = galloping_merge(reds, blues, oracle, trace);
    }
    result.report = report_from_oracle(oracle);
    return result;
}

inline SortResult sort_both_then_merge(const PricedInstance& instance, MergeTrace* trace = nullptr) {
    ComparisonOracle oracle(instance);
    return sort_both_then_merge(oracle, trace);
}

/// The three cost terms of the middle regime.
struct MiddleRegimeCosts {
    Price cheap_sort;
    Price binary_search;
    Price expensive_sorts;
};

/*
 * Regime where one color is cheap (price <= 1) and the other is expensive
 * (price > 1). Sorts the cheap color, binary-searches every expensive key
 * into it, then sorts the expensive keys sharing a gap.
 */
inline SortResult sort_middle_regime(ComparisonOracle& oracle, MiddleRegimeCosts* costs = nullptr) {
    const PricedInstance& inst = oracle.instance();
    if (!inst.is_bichromatic()) throw RegimeError("sort_middle_regime: instance is not bichromatic");
    if (!middle_regime(inst.alpha(), inst.beta()))
        throw RegimeError("sort_middle_regime needs one price <= 1 and the other > 1");
    const Color cheap = inst.alpha() <= Price(1) ? kRed : kBlue;
    const Color dear = cheap == kRed ? kBlue : kRed;

    SortResult result;
    MiddleRegimeCosts local;
    Price before = oracle.total_cost();
    auto take = [&](Price& slot) {
        Price now = oracle.total_cost();
        slot = now - before;
        before = now;
    };

    std::vector<KeyId> base;
    {
        PhaseScope scope(oracle, Phase::stripe_sort);
        base = sort_stripe(inst.keys_of_color(cheap), oracle);
    }
    take(local.cheap_sort);

    std::vector<std::vector<KeyId>> gaps(base.size() + 1);
    {
        PhaseScope scope(oracle, Phase::search);
        for (KeyId k : inst.keys_of_color(dear)) {
            std::size_t lo = 0, hi = base.size();  // k lies in gap index [lo, hi]
            while (lo < hi) {
                std::size_t mid = lo + (hi - lo) / 2;
                if (oracle.less(base[mid], k)) lo = mid + 1;
                else hi = mid;
            }
            gaps[lo].push_back(k);
        }
    }
    take(local.binary_search);

    {
        PhaseScope scope(oracle, Phase::stripe_sort);
        for (std::size_t g = 0; g < gaps.size(); ++g) {
            for (KeyId k : sort_stripe(std::move(gaps[g]), oracle)) result.order.push_back(k);
            if (g < base.size()) result.order.push_back(base[g]);
        }
    }
    take(local.expensive_sorts);

    if (costs) *costs = local;
    result.report = report_from_oracle(oracle);
    return result;
}

inline SortResult sort_middle_regime(const PricedInstance& instance, MiddleRegimeCosts* costs = nullptr) {
    ComparisonOracle oracle(instance);
    return sort_middle_regime(oracle, costs);
}

namespace detail {

/*
 * Builds the multichromatic backbone. Invariant: every gap between adjacent
 * representatives holds only keys of the two representatives' colors, each in
 * the bucket of the representative of its color. Sentinels get the color k,
 * which no key has, so their buckets stay empty.
 */
class MultiBuilder {
public:
    MultiBuilder(Backbone& bb, ComparisonOracle& oracle, Rng& rng) : bb_(bb), oracle_(oracle), rng_(rng) {}

    void start(const std::vector<KeyId>& sorted_picks, Color sentinel_color) {
        order_.push_back(bb_.push_back(kRedSentinel, sentinel_color));
        for (KeyId p : sorted_picks) order_.push_back(bb_.push_back(p, oracle_.color(p)));
        order_.push_back(bb_.push_back(kBlueSentinel, sentinel_color));
    }

    void insert(KeyId e) {
        const Color ce = oracle_.color(e);
        std::size_t lo = 0, hi = order_.size() - 1;  // e lies between order_[lo] and order_[hi]
        {
            PhaseScope scope(oracle_, Phase::search);
            while (hi - lo > 1) {
                std::size_t mid = lo + (hi - lo) / 2;
                if (bb_.color(order_[mid]) == ce) {
                    if (mid + 1 < hi) ++mid;
                    else if (mid - 1 > lo) --mid;
                    else {
                        // the only representative inside is e's color; its bucket spans the range
                        bb_.bucket(order_[mid]).members.push_back(e);
                        return;
                    }
                }
                if (oracle_.less(e, bb_.rep(order_[mid]))) hi = mid;
                else lo = mid;
            }
        }
        Handle left = order_[lo], right = order_[hi];
        if (bb_.color(left) == ce) bb_.bucket(left).members.push_back(e);
        else if (bb_.color(right) == ce) bb_.bucket(right).members.push_back(e);
        else place(left, right, {e});
    }

    const std::vector<Handle>& order() const { return order_; }

private:
    struct Pending {
        Handle left;
        Handle right;
        std::vector<KeyId> keys;  // all of one color, foreign to both ends
    };

    // One of `keys` becomes a representative between the adjacent left and
    // right; the rest join its bucket. Neighbour members that end up in a
    // gap of foreign colors are handled the same way.
    void place(Handle left, Handle right, std::vector<KeyId> keys) {
        PhaseScope scope(oracle_, Phase::pivot);
        std::vector<Pending> work;
        work.push_back({left, right, std::move(keys)});
        while (!work.empty()) {
            Pending p = std::move(work.back());
            work.pop_back();
            std::size_t pick = rng_.uniform_index(p.keys.size());
            KeyId r = p.keys[pick];
            p.keys.erase(p.keys.begin() + static_cast<std::ptrdiff_t>(pick));

            // left members above r now sit in (r, right); right members below r in (left, r)
            std::vector<KeyId> left_out = split(p.left, r, false);
            std::vector<KeyId> right_out = split(p.right, r, true);

            Handle h = bb_.insert_after(p.left, r, oracle_.color(r));
            bb_.bucket(h).members = std::move(p.keys);
            auto pos = std::find(order_.begin(), order_.end(), p.left);
            order_.insert(pos + 1, h);

            if (!left_out.empty()) work.push_back({h, p.right, std::move(left_out)});
            if (!right_out.empty()) work.push_back({p.left, h, std::move(right_out)});
        }
    }

    // Removes and returns the members of bucket(h) on the far side of r:
    // above r when `keep_above` is false, below r when it is true.
    std::vector<KeyId> split(Handle h, KeyId r, bool keep_above) {
        Bucket& b = bb_.bucket(h);
        std::vector<KeyId> keep, out;
        for (KeyId k : b.members) {
            bool above = oracle_.less(r, k);
            (above == keep_above ? keep : out).push_back(k);
        }
        b.members = std::move(keep);
        return out;
    }

    Backbone& bb_;
    ComparisonOracle& oracle_;
    Rng& rng_;
    std::vector<Handle> order_;
};

}  // namespace detail

/*
 * Sorting with k >= 2 colors, every monochromatic price > 1. One random key
 * per color seeds the backbone; the remaining keys are inserted in random
 * order by binary search, after which the InversionSort round loop refines
 * every adjacent bucket pair and the stripes are sorted. Like inversion_sort
 * it switches the oracle to remembering answers.
 */
inline SortResult multichromatic_sort(ComparisonOracle& oracle, std::uint64_t seed,
                                      const InversionSortOptions& options = {}) {
    const PricedInstance& inst = oracle.instance();
    const std::size_t k = inst.num_colors();
    if (k < 2) throw RegimeError("multichromatic_sort needs at least two colors");
    for (std::size_t c = 0; c < k; ++c)
        if (!(inst.price(static_cast<Color>(c)) > Price(1)))
            throw RegimeError("multichromatic_sort needs every monochromatic price > 1 (color " +
                              std::to_string(c + 1) + ")");

    oracle.remember_answers(true);
    Rng rng(seed);
    SortResult result;
    Backbone bb;
    std::vector<KeyId> picks, rest;
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<KeyId> keys = inst.keys_of_color(static_cast<Color>(c));
        if (keys.empty()) continue;
        std::size_t pick = rng.uniform_index(keys.size());
        picks.push_back(keys[pick]);
        keys.erase(keys.begin() + static_cast<std::ptrdiff_t>(pick));
        rest.insert(rest.end(), keys.begin(), keys.end());
    }
    {
        PhaseScope scope(oracle, Phase::search);
        picks = merge_sort(std::move(picks), [&](KeyId a, KeyId b) { return oracle.less(a, b); });
    }
    detail::MultiBuilder builder(bb, oracle, rng);
    builder.start(picks, static_cast<Color>(k));
    rng.shuffle(std::span<KeyId>(rest));
    for (KeyId e : rest) builder.insert(e);

    for (Handle h = bb.head(); bb.next(h) != Backbone::npos; h = bb.next(h)) {
        Subproblem& s = bb.subproblem(h);
        s = Subproblem{};
        s.node = result.tree.add_root(bb.rep(h), bb.rep(bb.next(h)), Polarity::red_below_blue);
    }

    RoundEngine engine(bb, result.tree, oracle, rng, options);
    std::vector<RoundRecord> log;
    std::uint64_t rounds = engine.run(&log);
    result.order = engine.sort_stripes();
    result.report = report_from_oracle(oracle);
    result.report.round_log = std::move(log);
    result.report.rounds = rounds;
    result.report.tree_height = result.tree.height();
    return result;
}

inline SortResult multichromatic_sort(const PricedInstance& instance, std::uint64_t seed,
                                      const InversionSortOptions& options = {}) {
    ComparisonOracle oracle(instance);
    return multichromatic_sort(oracle, seed, options);
}

}  // namespace priced_sort

#endif
