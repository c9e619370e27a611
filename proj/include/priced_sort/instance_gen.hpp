#ifndef PRICED_SORT_INSTANCE_GEN_HPP
#define PRICED_SORT_INSTANCE_GEN_HPP

#include "priced_sort/instance.hpp"
#include "priced_sort/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace priced_sort {

enum class Pattern : std::uint8_t { uniform_shuffle, alternating, stripe_lengths, few_long_stripes };

inline const char* to_string(Pattern p) {
    switch (p) {
        case Pattern::uniform_shuffle: return "uniform";
        case Pattern::alternating: return "alternating";
        case Pattern::stripe_lengths: return "stripes";
        case Pattern::few_long_stripes: return "few-long";
    }
    return "?";
}

inline Pattern parse_pattern(std::string_view s) {
    if (s == "uniform") return Pattern::uniform_shuffle;
    if (s == "alternating") return Pattern::alternating;
    if (s == "stripes") return Pattern::stripe_lengths;
    if (s == "few-long") return Pattern::few_long_stripes;
    throw std::invalid_argument("unknown pattern '" + std::string(s) + "'");
}

struct GenSpec {
    std::size_t n = 0;  // reds
    std::size_t m = 0;  // blues
    Price alpha = Price(2);
    Price beta = Price(2);
    Pattern pattern = Pattern::uniform_shuffle;
    std::vector<std::size_t> red_stripes;   // stripe_lengths only
    std::vector<std::size_t> blue_stripes;  // stripe_lengths only
    double long_fraction = 0.5;             // few_long_stripes only
    std::uint64_t seed = 0;
};

/// Raised for a GenSpec whose pattern cannot be realized.
struct GenSpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

// Colors of the true order built from alternating stripes; the color with
// more stripes goes first, red on a tie.
inline std::vector<Color> layout_stripes(const std::vector<std::size_t>& reds, const std::vector<std::size_t>& blues) {
    const std::size_t a = reds.size(), b = blues.size();
    if (a > b + 1 || b > a + 1)
        throw GenSpecError("stripe counts must differ by at most one to alternate");
    for (auto len : reds)
        if (len == 0) throw GenSpecError("stripe lengths must be positive");
    for (auto len : blues)
        if (len == 0) throw GenSpecError("stripe lengths must be positive");
    std::vector<Color> seq;
    bool red_turn = a >= b;
    std::size_t ri = 0, bi = 0;
    while (ri < a || bi < b) {
        if (red_turn) {
            seq.insert(seq.end(), reds[ri++], kRed);
        } else {
            seq.insert(seq.end(), blues[bi++], kBlue);
        }
        red_turn = !red_turn;
    }
    return seq;
}

inline std::vector<Color> sorted_colors(const GenSpec& spec, Rng& rng) {
    const std::size_t n = spec.n, m = spec.m;
    switch (spec.pattern) {
        case Pattern::uniform_shuffle: {
            std::vector<Color> seq(n, kRed);
            seq.insert(seq.end(), m, kBlue);
            rng.shuffle(std::span<Color>(seq));
            return seq;
        }
        case Pattern::alternating: {
            if (n > m + 1 || m > n + 1) throw GenSpecError("alternating needs |n - m| <= 1");
            return layout_stripes(std::vector<std::size_t>(n, 1), std::vector<std::size_t>(m, 1));
        }
        case Pattern::stripe_lengths: {
            auto sum = [](const std::vector<std::size_t>& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); };
            if (sum(spec.red_stripes) != n || sum(spec.blue_stripes) != m)
                throw GenSpecError("stripe lengths must sum to n and m");
            return layout_stripes(spec.red_stripes, spec.blue_stripes);
        }
        case Pattern::few_long_stripes: {
            if (n == 0 || m == 0) throw GenSpecError("few-long needs both colors");
            if (!(spec.long_fraction > 0.0 && spec.long_fraction <= 1.0))
                throw GenSpecError("few-long fraction must be in (0, 1]");
            std::size_t lo = std::min(n, m);
            auto singles = static_cast<std::size_t>(std::floor((1.0 - spec.long_fraction) * static_cast<double>(lo)));
            singles = std::min(singles, lo - 1);
            // R^{n-s} (B R)^s B^{m-s}
            std::vector<std::size_t> reds{n - singles};
            std::vector<std::size_t> blues;
            for (std::size_t i = 0; i < singles; ++i) {
                reds.push_back(1);
                blues.push_back(1);
            }
            blues.push_back(m - singles);
            return layout_stripes(reds, blues);
        }
    }
    throw GenSpecError("unknown pattern");
}

}  // namespace detail

/*
 * Builds an instance whose true order has the requested stripe structure.
 * Key ids are a seeded random permutation of positions, so the input order
 * carries no information.
 */
inline PricedInstance generate(const GenSpec& spec) {
    Rng rng(spec.seed);
    std::vector<Color> seq = detail::sorted_colors(spec, rng);
    const std::size_t total = seq.size();
    std::vector<KeyId> ids(total);
    std::iota(ids.begin(), ids.end(), 0);
    rng.shuffle(std::span<KeyId>(ids));
    std::vector<Color> colors(total);
    std::vector<std::int32_t> ranks(total);
    for (std::size_t p = 0; p < total; ++p) {
        auto id = static_cast<std::size_t>(ids[p]);
        colors[id] = seq[p];
        ranks[id] = static_cast<std::int32_t>(p);
    }
    return PricedInstance(std::move(colors), std::move(ranks), spec.alpha, spec.beta);
}

/// k-colored instance with near-equal color counts and a random order.
inline PricedInstance generate_multichromatic(std::size_t n, std::vector<Price> gammas, std::uint64_t seed) {
    const std::size_t k = gammas.size();
    if (k < 2) throw GenSpecError("multichromatic instances need at least two colors");
    Rng rng(seed);
    std::vector<Color> colors(n);
    for (std::size_t i = 0; i < n; ++i) colors[i] = static_cast<Color>(i % k);
    rng.shuffle(std::span<Color>(colors));
    std::vector<std::int32_t> ranks(n);
    std::iota(ranks.begin(), ranks.end(), 0);
    rng.shuffle(std::span<std::int32_t>(ranks));
    return PricedInstance(std::move(colors), std::move(ranks), std::move(gammas));
}

inline constexpr std::size_t kMaxEnumerateN = 12;

/*
 * Visits every colored ranking of N keys once. Two (coloring, permutation)
 * pairs are the same ranking when relabeling ids maps one onto the other, so
 * there are 2^N classes. The representative gives reds the ids 0..n-1 in
 * increasing rank and blues the ids n..N-1 in increasing rank.
 */
inline void enumerate_small(std::size_t n_keys, const Price& alpha, const Price& beta,
                            const std::function<void(const PricedInstance&)>& visit) {
    if (n_keys > kMaxEnumerateN)
        throw std::invalid_argument("enumerate_small: N > " + std::to_string(kMaxEnumerateN) + " refused");
    for (std::uint32_t mask = 0; mask < (1u << n_keys); ++mask) {
        // bit p set: position p of the true order is blue
        std::vector<Color> colors;
        std::vector<std::int32_t> ranks;
        for (std::size_t p = 0; p < n_keys; ++p)
            if (!(mask >> p & 1u)) {
                colors.push_back(kRed);
                ranks.push_back(static_cast<std::int32_t>(p));
            }
        for (std::size_t p = 0; p < n_keys; ++p)
            if (mask >> p & 1u) {
                colors.push_back(kBlue);
                ranks.push_back(static_cast<std::int32_t>(p));
            }
        visit(PricedInstance(std::move(colors), std::move(ranks), alpha, beta));
    }
}

}  // namespace priced_sort

#endif
