#ifndef PRICED_SORT_REFINEMENT_TREE_HPP
#define PRICED_SORT_REFINEMENT_TREE_HPP

#include "priced_sort/instance.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace priced_sort {

enum class Polarity : std::uint8_t { red_below_blue, blue_below_red };

inline Polarity flip(Polarity p) {
    return p == Polarity::red_below_blue ? Polarity::blue_below_red : Polarity::red_below_blue;
}

/// A subproblem of the run: two pivots that were backbone neighbours at some point.
struct RefinementNode {
    KeyId lower = kRedSentinel;
    KeyId upper = kBlueSentinel;
    Polarity polarity = Polarity::red_below_blue;
    std::int32_t parent = -1;
    std::array<std::int32_t, 3> children{-1, -1, -1};
    std::uint32_t depth = 0;
    std::uint64_t created_round = 0;

    bool is_leaf() const { return children[0] < 0; }
};

/*
 * Ternary trace of the run. Every inversion y < x found between the pivots of
 * node v gives v the children (lower, y), (y, x), (x, upper); the middle child
 * has flipped polarity.
 */
class RefinementTree {
public:
    std::int32_t add_root(KeyId lower, KeyId upper, Polarity polarity) {
        RefinementNode n;
        n.lower = lower;
        n.upper = upper;
        n.polarity = polarity;
        nodes_.push_back(n);
        return static_cast<std::int32_t>(nodes_.size() - 1);
    }

    std::array<std::int32_t, 3> split(std::int32_t v, KeyId y, KeyId x, std::uint64_t round) {
        if (!node(v).is_leaf()) throw std::logic_error("RefinementTree::split: node already split");
        const RefinementNode parent = node(v);
        std::array<std::pair<KeyId, KeyId>, 3> pivots{{{parent.lower, y}, {y, x}, {x, parent.upper}}};
        std::array<std::int32_t, 3> ids{};
        for (std::size_t i = 0; i < 3; ++i) {
            RefinementNode c;
            c.lower = pivots[i].first;
            c.upper = pivots[i].second;
            c.polarity = i == 1 ? flip(parent.polarity) : parent.polarity;
            c.parent = v;
            c.depth = parent.depth + 1;
            c.created_round = round;
            nodes_.push_back(c);
            ids[i] = static_cast<std::int32_t>(nodes_.size() - 1);
        }
        nodes_[static_cast<std::size_t>(v)].children = ids;
        height_ = std::max(height_, parent.depth + 1);
        return ids;
    }

    const RefinementNode& node(std::int32_t v) const { return nodes_.at(static_cast<std::size_t>(v)); }
    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }
    const std::vector<RefinementNode>& nodes() const { return nodes_; }

    /// Max depth; the root has depth 0.
    std::uint32_t height() const { return height_; }

    /// Leaves from left to right.
    std::vector<std::int32_t> leaves() const {
        std::vector<std::int32_t> out;
        if (nodes_.empty()) return out;
        std::vector<std::int32_t> stack{0};
        while (!stack.empty()) {
            std::int32_t v = stack.back();
            stack.pop_back();
            const auto& n = node(v);
            if (n.is_leaf()) {
                out.push_back(v);
                continue;
            }
            for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
        }
        return out;
    }

private:
    std::vector<RefinementNode> nodes_;
    std::uint32_t height_ = 0;
};

inline std::uint32_t tree_height(const RefinementTree& tree) { return tree.height(); }

}  // namespace priced_sort

#endif
