#ifndef PRICED_SORT_INSTANCE_HPP
#define PRICED_SORT_INSTANCE_HPP

#include "priced_sort/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace priced_sort {

using Price = Rational;

/// Key identifier. Real keys are 0..N-1; sentinels use reserved negative ids.
using KeyId = std::int32_t;

inline constexpr KeyId kRedSentinel = -1;   // smaller than every key
inline constexpr KeyId kBlueSentinel = -2;  // larger than every key

inline constexpr bool is_sentinel(KeyId id) { return id == kRedSentinel || id == kBlueSentinel; }

/// Color index. The bichromatic setting uses red = 0 and blue = 1; the
/// multichromatic setting uses 0..k-1.
using Color = std::uint8_t;
inline constexpr Color kRed = 0;
inline constexpr Color kBlue = 1;

inline char color_letter(Color c) { return c == kRed ? 'R' : 'B'; }

class GroundTruth;
class ComparisonOracle;

struct ColoredKey {
    KeyId id;
    Color color;
};

/*
 * A colored key set with a hidden total order and per-color monochromatic
 * prices. Bichromatic comparisons always cost 1.
 *
 * The hidden ranks are private; only ComparisonOracle (to answer queries) and
 * GroundTruth (instrumentation) can read them.
 */
class PricedInstance {
public:
    PricedInstance() = default;

    /// Bichromatic instance: colors[i] in {kRed, kBlue}, ranks a permutation.
    PricedInstance(std::vector<Color> colors, std::vector<std::int32_t> ranks, Price alpha, Price beta)
        : PricedInstance(std::move(colors), std::move(ranks), std::vector<Price>{alpha, beta}) {}

    /// General k-colored instance; prices[c] is the monochromatic price of color c.
    PricedInstance(std::vector<Color> colors, std::vector<std::int32_t> ranks, std::vector<Price> prices)
        : colors_(std::move(colors)), ranks_(std::move(ranks)), prices_(std::move(prices)) {
        validate();
    }

    std::size_t size() const { return colors_.size(); }
    std::size_t num_colors() const { return prices_.size(); }
    bool is_bichromatic() const { return prices_.size() == 2; }

    Color color(KeyId id) const {
        if (id == kRedSentinel) return kRed;
        if (id == kBlueSentinel) return kBlue;
        check_id(id);
        return colors_[static_cast<std::size_t>(id)];
    }
    ColoredKey key(KeyId id) const { return {id, color(id)}; }

    const Price& price(Color c) const { return prices_.at(c); }
    const std::vector<Price>& prices() const { return prices_; }
    const Price& alpha() const { return prices_.at(kRed); }
    const Price& beta() const { return prices_.at(kBlue); }

    /// Price of comparing a and b; 1 for different colors.
    Price comparison_price(KeyId a, KeyId b) const {
        Color ca = color(a), cb = color(b);
        return ca == cb ? prices_[ca] : Price(1);
    }

    std::size_t count(Color c) const {
        std::size_t k = 0;
        for (Color x : colors_) k += (x == c);
        return k;
    }
    std::size_t red_count() const { return count(kRed); }
    std::size_t blue_count() const { return count(kBlue); }

    std::vector<KeyId> keys_of_color(Color c) const {
        std::vector<KeyId> out;
        for (std::size_t i = 0; i < colors_.size(); ++i)
            if (colors_[i] == c) out.push_back(static_cast<KeyId>(i));
        return out;
    }

    void check_id(KeyId id) const {
        if (id < 0 || static_cast<std::size_t>(id) >= colors_.size())
            throw std::invalid_argument("unknown key id " + std::to_string(id));
    }

private:
    friend class GroundTruth;
    friend class ComparisonOracle;

    void validate() const {
        if (colors_.size() != ranks_.size())
            throw std::invalid_argument("PricedInstance: colors and ranks differ in length");
        if (prices_.size() < 2) throw std::invalid_argument("PricedInstance: need at least two colors");
        if (prices_.size() > 255) throw std::invalid_argument("PricedInstance: too many colors");
        std::vector<bool> seen(ranks_.size(), false);
        for (std::size_t i = 0; i < ranks_.size(); ++i) {
            auto r = ranks_[i];
            if (r < 0 || static_cast<std::size_t>(r) >= ranks_.size())
                throw std::invalid_argument("PricedInstance: rank out of range at key " + std::to_string(i));
            if (seen[static_cast<std::size_t>(r)])
                throw std::invalid_argument("PricedInstance: duplicate rank " + std::to_string(r));
            seen[static_cast<std::size_t>(r)] = true;
            if (colors_[i] >= prices_.size())
                throw std::invalid_argument("PricedInstance: color out of range at key " + std::to_string(i));
        }
    }

    std::vector<Color> colors_;
    std::vector<std::int32_t> ranks_;
    std::vector<Price> prices_;
};

}  // namespace priced_sort

#endif
