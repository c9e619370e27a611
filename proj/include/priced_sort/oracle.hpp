#ifndef PRICED_SORT_ORACLE_HPP
#define PRICED_SORT_ORACLE_HPP

#include "priced_sort/instance.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace priced_sort {

enum class Order { less, greater };

/// Exact per-category comparison counts. Monochromatic counts are per color.
struct CostLedger {
    std::vector<std::uint64_t> mono;  // mono[c]: comparisons between two keys of color c
    std::uint64_t bichromatic = 0;
    std::uint64_t sentinel = 0;       // uncharged
    std::uint64_t recalled = 0;       // uncharged repeats of an answered pair

    explicit CostLedger(std::size_t colors = 2) : mono(colors, 0) {}

    std::uint64_t count_rr() const { return mono.at(kRed); }
    std::uint64_t count_bb() const { return mono.at(kBlue); }
    std::uint64_t count_rb() const { return bichromatic; }

    std::uint64_t charged() const {
        std::uint64_t k = bichromatic;
        for (auto c : mono) k += c;
        return k;
    }

    Price cost(const std::vector<Price>& prices) const {
        Price total(static_cast<std::int64_t>(bichromatic));
        for (std::size_t c = 0; c < mono.size(); ++c)
            total += prices.at(c) * Price(static_cast<std::int64_t>(mono[c]));
        return total;
    }

    CostLedger& operator+=(const CostLedger& o) {
        for (std::size_t c = 0; c < mono.size(); ++c) mono[c] += o.mono.at(c);
        bichromatic += o.bichromatic;
        sentinel += o.sentinel;
        recalled += o.recalled;
        return *this;
    }
    friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

/// Cost attribution buckets used by the run reports.
enum class Phase : std::uint8_t { search = 0, pivot = 1, certificate = 2, stripe_sort = 3 };
inline constexpr std::size_t kPhaseCount = 4;

/*
 * Answers comparisons against the hidden order and charges each one to the
 * ledger (and to the current phase). Sentinels compare below/above every key
 * for free. With remember_answers on, a pair that was already answered is
 * answered again at no charge and counted as recalled.
 */
class ComparisonOracle {
public:
    explicit ComparisonOracle(const PricedInstance& instance)
        : instance_(&instance), ledger_(instance.num_colors()) {
        phases_.fill(CostLedger(instance.num_colors()));
    }

    const PricedInstance& instance() const { return *instance_; }
    Color color(KeyId id) const { return instance_->color(id); }
    const Price& price(Color c) const { return instance_->price(c); }

    Order compare(KeyId a, KeyId b) {
        if (a == b) throw std::invalid_argument("compare: a key cannot be compared with itself");
        if (!is_sentinel(a)) instance_->check_id(a);
        if (!is_sentinel(b)) instance_->check_id(b);

        if (is_sentinel(a) || is_sentinel(b)) {
            ++ledger_.sentinel;
            ++phases_[static_cast<std::size_t>(phase_)].sentinel;
            return position(a) < position(b) ? Order::less : Order::greater;
        }
        CostLedger& ph = phases_[static_cast<std::size_t>(phase_)];
        if (remember_ && !asked_.insert(pair_key(a, b)).second) {
            ++ledger_.recalled;
            ++ph.recalled;
            return position(a) < position(b) ? Order::less : Order::greater;
        }
        Color ca = instance_->colors_[static_cast<std::size_t>(a)];
        Color cb = instance_->colors_[static_cast<std::size_t>(b)];
        if (ca == cb) {
            ++ledger_.mono[ca];
            ++ph.mono[ca];
        } else {
            ++ledger_.bichromatic;
            ++ph.bichromatic;
        }
        return position(a) < position(b) ? Order::less : Order::greater;
    }

    bool less(KeyId a, KeyId b) { return compare(a, b) == Order::less; }

    const CostLedger& ledger() const { return ledger_; }
    Price total_cost() const { return ledger_.cost(instance_->prices()); }

    const CostLedger& phase_ledger(Phase p) const { return phases_[static_cast<std::size_t>(p)]; }
    Price phase_cost(Phase p) const { return phase_ledger(p).cost(instance_->prices()); }

    Phase phase() const { return phase_; }
    void set_phase(Phase p) { phase_ = p; }

    void remember_answers(bool on) { remember_ = on; }
    bool remembers_answers() const { return remember_; }

private:
    static std::uint64_t pair_key(KeyId a, KeyId b) {
        auto lo = static_cast<std::uint64_t>(std::min(a, b));
        auto hi = static_cast<std::uint64_t>(std::max(a, b));
        return lo << 32 | hi;
    }

    std::int64_t position(KeyId id) const {
        if (id == kRedSentinel) return -1;
        if (id == kBlueSentinel) return static_cast<std::int64_t>(instance_->size());
        return instance_->ranks_[static_cast<std::size_t>(id)];
    }

    const PricedInstance* instance_;
    CostLedger ledger_;
    std::array<CostLedger, kPhaseCount> phases_;
    Phase phase_ = Phase::search;
    bool remember_ = false;
    std::unordered_set<std::uint64_t> asked_;
};

/// Scoped phase switch.
class PhaseScope {
public:
    PhaseScope(ComparisonOracle& oracle, Phase p) : oracle_(oracle), saved_(oracle.phase()) { oracle.set_phase(p); }
    ~PhaseScope() { oracle_.set_phase(saved_); }
    PhaseScope(const PhaseScope&) = delete;
    PhaseScope& operator=(const PhaseScope&) = delete;

private:
    ComparisonOracle& oracle_;
    Phase saved_;
};

}  // namespace priced_sort

#endif
