#ifndef PRICED_SORT_INVERSION_SORT_HPP
#define PRICED_SORT_INVERSION_SORT_HPP

#include "priced_sort/backbone.hpp"
#include "priced_sort/inversion_search.hpp"
#include "priced_sort/merge_sort.hpp"
#include "priced_sort/refinement_tree.hpp"
#include "priced_sort/report.hpp"
#include "priced_sort/rng.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace priced_sort {

/// The instance's prices fall outside the regime the selected algorithm handles.
struct RegimeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InversionSortOptions {
    /// Called at the start of every round with the active subproblems that
    /// will be searched; the returned count is logged as the round's
    /// unaffected count (return -1 to skip).
    std::function<std::int64_t(const Backbone&, std::span<const Handle>)> measure_round;
    /// Called at the end of every round, after insertions.
    std::function<void(const Backbone&, const RefinementTree&, std::uint64_t round)> after_round;
    /// Called whenever a certificate completes, before the subproblem is retired.
    std::function<void(const Backbone&, Handle)> on_certificate;
    CertificateFault fault;
    /// 0 selects the default cap of 64 N (log2 N + 1)^3.
    std::uint64_t max_rounds = 0;
};

struct SortResult {
    std::vector<KeyId> order;
    RunReport report;
    RefinementTree tree;
};

inline std::uint64_t default_round_cap(std::size_t n) {
    double big_n = static_cast<double>(std::max<std::size_t>(n, 2));
    double lg = std::log2(big_n) + 1.0;
    return static_cast<std::uint64_t>(64.0 * big_n * lg * lg * lg);
}

/*
 * The round loop shared by the bichromatic and multichromatic sorts. Owns no
 * state of its own beyond the list of active subproblems; the backbone, tree,
 * oracle and RNG belong to the caller.
 *
 * Per round: replenish samples, probe every active subproblem once, run the
 * cheapest certificate where the subproblem's age exceeds its cost, then
 * insert all found inversions from left to right.
 */
class RoundEngine {
public:
    RoundEngine(Backbone& backbone, RefinementTree& tree, ComparisonOracle& oracle, Rng& rng,
                const InversionSortOptions& options)
        : bb_(backbone), tree_(tree), oracle_(oracle), rng_(rng), opt_(options),
          touches_(oracle.instance().size(), 0) {}

    /// Runs until no subproblem is active. Returns the number of rounds.
    std::uint64_t run(std::vector<RoundRecord>* log) {
        std::vector<Handle> active;
        for (Handle h : bb_.active_subproblems())
            if (!retire_if_trivial(h)) active.push_back(h);

        const std::uint64_t cap = opt_.max_rounds ? opt_.max_rounds : default_round_cap(oracle_.instance().size());
        std::uint64_t round = 0;
        std::vector<std::optional<std::pair<KeyId, KeyId>>> found;

        while (!active.empty()) {
            ++round;
            if (round > cap)
                throw InvariantError("round cap " + std::to_string(cap) + " exceeded with " +
                                     std::to_string(active.size()) + " active subproblems");
            RoundRecord rec;
            rec.round = round;
            rec.active = active.size();
            if (opt_.measure_round) rec.unaffected = opt_.measure_round(bb_, active);
            const std::uint64_t pivot_before = oracle_.phase_ledger(Phase::pivot).charged();

            {
                PhaseScope scope(oracle_, Phase::search);
                replenish_samples(bb_, active, oracle_, rng_);
            }

            found.assign(active.size(), std::nullopt);
            {
                PhaseScope scope(oracle_, Phase::search);
                for (std::size_t j = 0; j < active.size(); ++j) {
                    Handle h = active[j];
                    ProbeOutcome probe = round_probe(bb_, h, oracle_, rng_);
                    rec.max_probe_charges = std::max(rec.max_probe_charges, probe.comparisons);
                    std::uint64_t charged = probe.comparisons;
                    if (probe.found()) found[j] = canonicalize_inversion(bb_, h, probe.inversion, oracle_, rng_, &charged);
                    bb_.subproblem(h).accumulated_cost += Price(static_cast<std::int64_t>(charged));
                }
            }
            {
                PhaseScope scope(oracle_, Phase::certificate);
                for (std::size_t j = 0; j < active.size(); ++j) {
                    if (found[j]) continue;
                    Handle h = active[j];
                    Subproblem& sub = bb_.subproblem(h);
                    CertificateChoice choice = subproblem_certificate(bb_, h, oracle_);
                    if (!(Price(static_cast<std::int64_t>(round - sub.mark)) > choice.cost)) continue;
                    ProbeOutcome cert = run_certificate(bb_, h, choice, oracle_, rng_, opt_.fault);
                    if (cert.found()) {
                        found[j] = std::pair{cert.inversion.y, cert.inversion.x};
                    } else {
                        if (opt_.on_certificate) opt_.on_certificate(bb_, h);
                        sub.state = SubproblemState::finished;
                    }
                }
            }

            std::vector<Handle> next_active;
            next_active.reserve(active.size() + 8);
            for (std::size_t j = 0; j < active.size(); ++j) {
                Handle h = active[j];
                if (found[j]) {
                    auto [y, x] = *found[j];
                    const std::int32_t node = bb_.subproblem(h).node;
                    auto ins = bb_.insert_inversion(h, y, x, oracle_, round, &touches_);
                    auto kids = tree_.split(node, y, x, round);
                    for (std::size_t c = 0; c < 3; ++c) {
                        bb_.subproblem(ins.subproblems[c]).node = kids[c];
                        next_active.push_back(ins.subproblems[c]);
                    }
                    ++rec.inversions;
                } else if (bb_.subproblem(h).state == SubproblemState::active) {
                    next_active.push_back(h);
                }
            }
            // Splits can empty a neighbour's bucket; such subproblems are done.
            active.clear();
            for (Handle h : next_active)
                if (!retire_if_trivial(h)) active.push_back(h);

            rec.pivot_charges = oracle_.phase_ledger(Phase::pivot).charged() - pivot_before;
            if (rec.pivot_charges > 0) {
                for (auto& t : touches_) {
                    rec.max_pivot_touches = std::max<std::uint32_t>(rec.max_pivot_touches, t);
                    t = 0;
                }
            }
            if (log) log->push_back(rec);
            if (opt_.after_round) opt_.after_round(bb_, tree_, round);
        }
        return round;
    }

    /// Concatenates the stripes (bucket plus representative, sentinels
    /// dropped), each sorted with monochromatic comparisons.
    std::vector<KeyId> sort_stripes() {
        PhaseScope scope(oracle_, Phase::stripe_sort);
        std::vector<KeyId> out;
        out.reserve(oracle_.instance().size());
        for (Handle h = bb_.head(); h != Backbone::npos; h = bb_.next(h)) {
            std::vector<KeyId> keys = bb_.bucket(h).members;
            if (!is_sentinel(bb_.rep(h))) keys.push_back(bb_.rep(h));
            for (KeyId k : sort_stripe(std::move(keys), oracle_)) out.push_back(k);
        }
        return out;
    }

private:
    bool retire_if_trivial(Handle h) {
        Subproblem& sub = bb_.subproblem(h);
        if (sub.state != SubproblemState::active) return true;
        if (bb_.bucket(h).members.empty() || bb_.bucket(bb_.next(h)).members.empty()) {
            sub.state = SubproblemState::finished;
            return true;
        }
        return false;
    }

    Backbone& bb_;
    RefinementTree& tree_;
    ComparisonOracle& oracle_;
    Rng& rng_;
    const InversionSortOptions& opt_;
    std::vector<std::uint8_t> touches_;
};

inline bool inversion_sort_regime(const Price& alpha, const Price& beta) {
    return alpha > Price(1) && beta > Price(1);
}

/*
 * Bichromatic InversionSort. Requires alpha > 1 and beta > 1 (infinity
 * allowed). Deterministic for a fixed seed. The caller's oracle receives all
 * charges; the report's costs are read back from it. The oracle is switched
 * to remembering answers so that no pair is paid for twice.
 */
inline SortResult inversion_sort(ComparisonOracle& oracle, std::uint64_t seed, const InversionSortOptions& options = {}) {
    const PricedInstance& inst = oracle.instance();
    if (!inst.is_bichromatic()) throw RegimeError("inversion_sort: instance is not bichromatic");
    if (!inversion_sort_regime(inst.alpha(), inst.beta()))
        throw RegimeError("inversion_sort needs alpha > 1 and beta > 1; use sort_both_then_merge "
                          "(alpha, beta <= 1) or sort_middle_regime (one price <= 1 < the other)");

    oracle.remember_answers(true);
    Rng rng(seed);
    SortResult result;
    std::vector<KeyId> reds = inst.keys_of_color(kRed);
    std::vector<KeyId> blues = inst.keys_of_color(kBlue);
    Backbone bb = Backbone::bichromatic(reds, blues);
    bb.subproblem(bb.head()).node = result.tree.add_root(kRedSentinel, kBlueSentinel, Polarity::red_below_blue);

    RoundEngine engine(bb, result.tree, oracle, rng, options);
    result.report.rounds = engine.run(&result.report.round_log);
    result.order = engine.sort_stripes();

    std::vector<RoundRecord> log = std::move(result.report.round_log);
    std::uint64_t rounds = result.report.rounds;
    result.report = report_from_oracle(oracle);
    result.report.round_log = std::move(log);
    result.report.rounds = rounds;
    result.report.tree_height = result.tree.height();
    return result;
}

inline SortResult inversion_sort(const PricedInstance& instance, std::uint64_t seed,
                                 const InversionSortOptions& options = {}) {
    ComparisonOracle oracle(instance);
    return inversion_sort(oracle, seed, options);
}

}  // namespace priced_sort

#endif
