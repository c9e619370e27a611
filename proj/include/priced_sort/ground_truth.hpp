#ifndef PRICED_SORT_GROUND_TRUTH_HPP
#define PRICED_SORT_GROUND_TRUTH_HPP

// Instrumentation only. Sorting algorithms must not include this header: it
// reads the hidden order directly and never charges the ledger.

#include "priced_sort/instance.hpp"

#include <cstdint>
#include <vector>

namespace priced_sort {

struct Stripe {
    Color color;
    std::vector<KeyId> keys;  // in true order
};

using StripeDecomposition = std::vector<Stripe>;

class GroundTruth {
public:
    explicit GroundTruth(const PricedInstance& instance) : instance_(&instance) {
        order_.resize(instance.size());
        for (std::size_t i = 0; i < instance.size(); ++i)
            order_[static_cast<std::size_t>(instance.ranks_[i])] = static_cast<KeyId>(i);
    }

    const PricedInstance& instance() const { return *instance_; }

    /// Hidden rank; the red sentinel is -1 and the blue sentinel is N.
    std::int64_t rank(KeyId id) const {
        if (id == kRedSentinel) return -1;
        if (id == kBlueSentinel) return static_cast<std::int64_t>(instance_->size());
        instance_->check_id(id);
        return instance_->ranks_[static_cast<std::size_t>(id)];
    }

    /// Keys ordered by hidden rank.
    const std::vector<KeyId>& true_sorted() const { return order_; }

    StripeDecomposition stripes() const {
        StripeDecomposition out;
        for (KeyId id : order_) {
            Color c = instance_->color(id);
            if (out.empty() || out.back().color != c) out.push_back({c, {}});
            out.back().keys.push_back(id);
        }
        return out;
    }

    /// Cost of the comparisons between neighbours of the true order; 0 when N < 2.
    Price hamiltonian_cost() const {
        Price total;
        for (std::size_t i = 1; i < order_.size(); ++i)
            total += instance_->comparison_price(order_[i - 1], order_[i]);
        return total;
    }

    /// For each rank, the index of the stripe containing it.
    std::vector<std::int32_t> stripe_index_by_rank() const {
        std::vector<std::int32_t> idx(order_.size());
        std::int32_t s = -1;
        for (std::size_t i = 0; i < order_.size(); ++i) {
            if (i == 0 || instance_->color(order_[i]) != instance_->color(order_[i - 1])) ++s;
            idx[i] = s;
        }
        return idx;
    }

private:
    const PricedInstance* instance_;
    std::vector<KeyId> order_;
};

}  // namespace priced_sort

#endif
