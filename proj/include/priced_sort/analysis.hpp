#ifndef PRICED_SORT_ANALYSIS_HPP
#define PRICED_SORT_ANALYSIS_HPP

// Ground-truth checks on the algorithm's state. Test and harness code only.

#include "priced_sort/backbone.hpp"
#include "priced_sort/ground_truth.hpp"
#include "priced_sort/refinement_tree.hpp"
#include "priced_sort/report.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace priced_sort {

struct CheckReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    void fail(std::string msg) { violations.push_back(std::move(msg)); }
};

/*
 * Verifies alternation, sentinel placement, representative order, bucket
 * colors and bounds, the partition of keys into representatives and bucket
 * members, and that buckets two or more positions apart are ordered like
 * their representatives.
 */
inline CheckReport check_backbone_invariants(const Backbone& bb, const GroundTruth& truth, bool bichromatic = true) {
    CheckReport rep;
    const PricedInstance& inst = truth.instance();
    const std::vector<Backbone::Handle> hs = bb.handles();
    const std::size_t k = hs.size();
    if (k == 0) {
        rep.fail("empty backbone");
        return rep;
    }
    if (bichromatic) {
        if (bb.rep(hs.front()) != kRedSentinel) rep.fail("first representative is not the red sentinel");
        if (bb.rep(hs.back()) != kBlueSentinel) rep.fail("last representative is not the blue sentinel");
    }
    for (std::size_t i = 0; i + 1 < k; ++i) {
        if (bb.color(hs[i]) == bb.color(hs[i + 1]))
            rep.fail("adjacent representatives at positions " + std::to_string(i) + "," + std::to_string(i + 1) +
                     " share a color");
        if (truth.rank(bb.rep(hs[i])) >= truth.rank(bb.rep(hs[i + 1])))
            rep.fail("representatives " + std::to_string(bb.rep(hs[i])) + " and " +
                     std::to_string(bb.rep(hs[i + 1])) + " are out of order");
    }

    std::vector<int> seen(inst.size(), 0);
    auto lo_bound = [&](std::size_t i) {
        return i == 0 ? std::numeric_limits<std::int64_t>::min() : truth.rank(bb.rep(hs[i - 1]));
    };
    auto hi_bound = [&](std::size_t i) {
        return i + 1 == k ? std::numeric_limits<std::int64_t>::max() : truth.rank(bb.rep(hs[i + 1]));
    };
    std::vector<std::int64_t> bmin(k, std::numeric_limits<std::int64_t>::max());
    std::vector<std::int64_t> bmax(k, std::numeric_limits<std::int64_t>::min());
    std::vector<KeyId> argmin(k, -1), argmax(k, -1);
    for (std::size_t i = 0; i < k; ++i) {
        const Bucket& b = bb.bucket(hs[i]);
        if (!is_sentinel(b.rep)) ++seen[static_cast<std::size_t>(b.rep)];
        for (KeyId m : b.members) {
            if (is_sentinel(m)) {
                rep.fail("sentinel inside a bucket");
                continue;
            }
            ++seen[static_cast<std::size_t>(m)];
            if (inst.color(m) != b.color)
                rep.fail("key " + std::to_string(m) + " in a bucket of another color");
            std::int64_t r = truth.rank(m);
            if (r <= lo_bound(i) || r >= hi_bound(i))
                rep.fail("key " + std::to_string(m) + " outside the bounds of bucket " + std::to_string(i));
            if (r < bmin[i]) bmin[i] = r, argmin[i] = m;
            if (r > bmax[i]) bmax[i] = r, argmax[i] = m;
        }
        if (b.sampled > b.members.size()) rep.fail("sample larger than bucket " + std::to_string(i));
    }
    for (std::size_t id = 0; id < seen.size(); ++id)
        if (seen[id] != 1)
            rep.fail("key " + std::to_string(id) + " appears " + std::to_string(seen[id]) + " times");

    // Buckets i and j with i + 1 <= j - 1 are ordered.
    std::int64_t running_max = std::numeric_limits<std::int64_t>::min();
    KeyId running_arg = -1;
    for (std::size_t j = 2; j < k; ++j) {
        if (bmax[j - 2] > running_max) running_max = bmax[j - 2], running_arg = argmax[j - 2];
        if (argmin[j] >= 0 && running_max > bmin[j])
            rep.fail("bucket order violated by pair (" + std::to_string(running_arg) + ", " +
                     std::to_string(argmin[j]) + ")");
    }
    return rep;
}

/// True when no key of bucket(h) lies above a key of bucket(next(h)).
inline bool no_inversion_between(const Backbone& bb, Backbone::Handle h, const GroundTruth& truth) {
    std::int64_t lo_max = std::numeric_limits<std::int64_t>::min();
    for (KeyId m : bb.bucket(h).members) lo_max = std::max(lo_max, truth.rank(m));
    for (KeyId m : bb.bucket(bb.next(h)).members)
        if (truth.rank(m) < lo_max) return false;
    return true;
}

struct UnaffectedCount {
    std::uint64_t active = 0;
    std::uint64_t unaffected = 0;
};

/*
 * Counts active subproblems that are unaffected: for each of the two colors,
 * the keys of the stripe subinstance (the stripes of both pivots and
 * everything between them) make up at least a quarter of the subproblem's keys
 * of that color (bucket plus representative). Sentinels are not counted.
 */
class UnaffectedMeter {
public:
    explicit UnaffectedMeter(const GroundTruth& truth) : truth_(&truth) {
        const auto& order = truth.true_sorted();
        const std::size_t n = order.size();
        const std::size_t colors = truth.instance().num_colors();
        stripe_ = truth.stripe_index_by_rank();
        stripe_lo_.clear();
        stripe_hi_.clear();
        for (std::size_t i = 0; i < n; ++i) {
            auto s = static_cast<std::size_t>(stripe_[i]);
            if (s >= stripe_lo_.size()) {
                stripe_lo_.push_back(static_cast<std::int64_t>(i));
                stripe_hi_.push_back(static_cast<std::int64_t>(i));
            }
            stripe_hi_[s] = static_cast<std::int64_t>(i);
        }
        prefix_.assign(colors, std::vector<std::int64_t>(n + 1, 0));
        for (std::size_t c = 0; c < colors; ++c)
            for (std::size_t i = 0; i < n; ++i)
                prefix_[c][i + 1] = prefix_[c][i] + (truth.instance().color(order[i]) == c);
    }

    UnaffectedCount measure(const Backbone& bb, std::span<const Backbone::Handle> active) const {
        UnaffectedCount out;
        out.active = active.size();
        for (Backbone::Handle h : active) out.unaffected += is_unaffected(bb, h) ? 1 : 0;
        return out;
    }

    bool is_unaffected(const Backbone& bb, Backbone::Handle h) const {
        const Backbone::Handle q = bb.next(h);
        auto [lo, _a] = extent(bb.rep(h), bb.color(h), true);
        auto [_b, hi] = extent(bb.rep(q), bb.color(q), false);
        for (Backbone::Handle side : {h, q}) {
            const Bucket& b = bb.bucket(side);
            std::int64_t in_problem = static_cast<std::int64_t>(b.members.size()) + (is_sentinel(b.rep) ? 0 : 1);
            std::int64_t in_instance = count(b.color, lo, hi);
            if (4 * in_instance < in_problem) return false;
        }
        return true;
    }

private:
    // Rank range [first, last] of the stripe containing `id`, clipped to real
    // keys. For sentinels the range is the adjacent same-colored stripe, if any.
    std::pair<std::int64_t, std::int64_t> extent(KeyId id, Color c, bool is_lower) const {
        const auto n = static_cast<std::int64_t>(stripe_.size());
        std::int64_t r = truth_->rank(id);
        if (id == kRedSentinel || id == kBlueSentinel) {
            std::int64_t probe = id == kRedSentinel ? 0 : n - 1;
            if (n == 0 || truth_->instance().color(truth_->true_sorted()[static_cast<std::size_t>(probe)]) != c)
                return is_lower ? std::pair{r + 1, r + 1} : std::pair{r - 1, r - 1};
            r = probe;
        }
        auto s = static_cast<std::size_t>(stripe_[static_cast<std::size_t>(r)]);
        return {stripe_lo_[s], stripe_hi_[s]};
    }

    std::int64_t count(Color c, std::int64_t lo, std::int64_t hi) const {
        lo = std::max<std::int64_t>(lo, 0);
        hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(stripe_.size()) - 1);
        if (hi < lo) return 0;
        return prefix_[c][static_cast<std::size_t>(hi + 1)] - prefix_[c][static_cast<std::size_t>(lo)];
    }

    const GroundTruth* truth_;
    std::vector<std::int32_t> stripe_;
    std::vector<std::int64_t> stripe_lo_, stripe_hi_;
    std::vector<std::vector<std::int64_t>> prefix_;
};

inline UnaffectedCount measure_unaffected(const Backbone& bb, const GroundTruth& truth) {
    UnaffectedMeter meter(truth);
    auto active = bb.active_subproblems();
    return meter.measure(bb, active);
}

/*
 * Structural checks on the refinement tree: internal nodes have three
 * children, the middle child flips polarity, the outer ones keep it, depths
 * increase by one, and each node's polarity matches its pivot colors.
 */
inline CheckReport check_tree_structure(const RefinementTree& tree, const PricedInstance& inst) {
    CheckReport rep;
    for (std::size_t v = 0; v < tree.size(); ++v) {
        const RefinementNode& n = tree.node(static_cast<std::int32_t>(v));
        Polarity expect = inst.color(n.lower) == kRed ? Polarity::red_below_blue : Polarity::blue_below_red;
        if (inst.color(n.lower) == inst.color(n.upper)) rep.fail("node " + std::to_string(v) + " has same-colored pivots");
        if (n.polarity != expect) rep.fail("node " + std::to_string(v) + " polarity disagrees with its pivots");
        if (n.is_leaf()) continue;
        for (std::size_t c = 0; c < 3; ++c) {
            if (n.children[c] < 0) {
                rep.fail("node " + std::to_string(v) + " has fewer than three children");
                continue;
            }
            const RefinementNode& ch = tree.node(n.children[c]);
            Polarity want = c == 1 ? flip(n.polarity) : n.polarity;
            if (ch.polarity != want) rep.fail("child polarity rule broken below node " + std::to_string(v));
            if (ch.depth != n.depth + 1) rep.fail("child depth wrong below node " + std::to_string(v));
        }
        if (tree.node(n.children[0]).lower != n.lower || tree.node(n.children[2]).upper != n.upper)
            rep.fail("children of node " + std::to_string(v) + " do not span its pivots");
    }
    return rep;
}

/// The current backbone equals the in-order leaves of the explored tree.
inline CheckReport check_snapshot(const Backbone& bb, const RefinementTree& tree) {
    CheckReport rep;
    auto leaves = tree.leaves();
    auto hs = bb.handles();
    if (leaves.size() + 1 != hs.size()) {
        rep.fail("tree has " + std::to_string(leaves.size()) + " leaves for " + std::to_string(hs.size()) +
                 " representatives");
        return rep;
    }
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        const RefinementNode& n = tree.node(leaves[i]);
        if (n.lower != bb.rep(hs[i]) || n.upper != bb.rep(hs[i + 1]))
            rep.fail("leaf " + std::to_string(i) + " does not match backbone neighbours");
        if (bb.subproblem(hs[i]).node != leaves[i])
            rep.fail("subproblem " + std::to_string(i) + " points to the wrong tree node");
    }
    return rep;
}

/// Fills the ground-truth fields of a report.
inline void attach_ground_truth(RunReport& report, const GroundTruth& truth) {
    report.hamiltonian = truth.hamiltonian_cost();
    report.ratio = competitive_ratio(report.total, *report.hamiltonian);
}

}  // namespace priced_sort

#endif
