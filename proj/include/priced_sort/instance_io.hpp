#ifndef PRICED_SORT_INSTANCE_IO_HPP
#define PRICED_SORT_INSTANCE_IO_HPP

// Text formats.
//
// Bichromatic:      line 1 `N alpha beta`, then N lines `color rank`, color in {R,B}.
// Multichromatic:   line 1 `N k g_1 .. g_k`, then N lines `color rank`, color in 1..k.
//
// Prices are decimals, `p/q`, or `inf`. Key ids follow line order. Ranks may
// be any distinct integers; they are compressed to 0..N-1.

#include "priced_sort/instance.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace priced_sort {

struct FormatError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Exact decimal when the denominator divides a power of ten, else `p/q`.
inline std::string format_price(const Price& p) {
    if (p.is_infinite()) return "inf";
    if (p.is_integer()) return std::to_string(p.numerator());
    std::int64_t d = p.denominator();
    int places = 0;
    while (d % 10 == 0) d /= 10, ++places;
    while (d % 2 == 0) d /= 2, ++places;
    while (d % 5 == 0) d /= 5, ++places;
    if (d != 1 || places > 15) return std::to_string(p.numerator()) + "/" + std::to_string(p.denominator());
    std::string s = p.to_decimal(places);
    while (!s.empty() && s.back() == '0') s.pop_back();
    return s;
}

namespace detail {

inline std::vector<std::int32_t> compress_ranks(const std::vector<std::int64_t>& raw) {
    std::vector<std::int64_t> sorted = raw;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw FormatError("instance file: duplicate rank");
    std::vector<std::int32_t> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        out[i] = static_cast<std::int32_t>(std::lower_bound(sorted.begin(), sorted.end(), raw[i]) - sorted.begin());
    return out;
}

inline std::int64_t parse_int(const std::string& tok, const char* what) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw FormatError("");
        return v;
    } catch (const std::exception&) {
        throw FormatError(std::string("instance file: bad ") + what + " '" + tok + "'");
    }
}

inline Price parse_price(const std::string& tok) {
    try {
        return Price::parse(tok);
    } catch (const std::exception&) {
        throw FormatError("instance file: bad price '" + tok + "'");
    }
}

}  // namespace detail

inline PricedInstance read_instance(std::istream& in) {
    std::string header;
    while (std::getline(in, header) && header.find_first_not_of(" \t\r") == std::string::npos) {
    }
    std::istringstream hs(header);
    std::vector<std::string> toks;
    for (std::string t; hs >> t;) toks.push_back(t);
    if (toks.size() < 3) throw FormatError("instance file: header needs `N alpha beta` or `N k g_1 .. g_k`");

    const std::int64_t n = detail::parse_int(toks[0], "key count");
    if (n < 1) throw FormatError("instance file: N must be at least 1");
    std::vector<Price> prices;
    bool multi = toks.size() > 3;
    if (multi) {
        std::int64_t k = detail::parse_int(toks[1], "color count");
        if (k < 2 || static_cast<std::size_t>(k) + 2 != toks.size())
            throw FormatError("instance file: header lists " + std::to_string(toks.size() - 2) + " prices for k=" +
                              toks[1]);
        for (std::size_t i = 2; i < toks.size(); ++i) prices.push_back(detail::parse_price(toks[i]));
    } else {
        prices = {detail::parse_price(toks[1]), detail::parse_price(toks[2])};
    }

    std::vector<Color> colors;
    std::vector<std::int64_t> raw;
    std::string line;
    while (static_cast<std::int64_t>(colors.size()) < n && std::getline(in, line)) {
        std::istringstream ls(line);
        std::string c, r;
        if (!(ls >> c)) continue;
        if (!(ls >> r)) throw FormatError("instance file: key line without rank: '" + line + "'");
        if (multi) {
            std::int64_t ci = detail::parse_int(c, "color");
            if (ci < 1 || static_cast<std::size_t>(ci) > prices.size())
                throw FormatError("instance file: color out of range '" + c + "'");
            colors.push_back(static_cast<Color>(ci - 1));
        } else if (c == "R" || c == "r") {
            colors.push_back(kRed);
        } else if (c == "B" || c == "b") {
            colors.push_back(kBlue);
        } else {
            throw FormatError("instance file: color must be R or B, got '" + c + "'");
        }
        raw.push_back(detail::parse_int(r, "rank"));
    }
    if (static_cast<std::int64_t>(colors.size()) != n)
        throw FormatError("instance file: expected " + std::to_string(n) + " keys, found " +
                          std::to_string(colors.size()));
    return PricedInstance(std::move(colors), detail::compress_ranks(raw), std::move(prices));
}

/// Writes the instance; ranks come from `ranks_by_id` (see GroundTruth::rank).
template <class RankOf>
void write_instance(std::ostream& out, const PricedInstance& inst, RankOf&& rank_of) {
    out << inst.size();
    if (inst.is_bichromatic()) {
        out << ' ' << format_price(inst.alpha()) << ' ' << format_price(inst.beta()) << '\n';
    } else {
        out << ' ' << inst.num_colors();
        for (const Price& p : inst.prices()) out << ' ' << format_price(p);
        out << '\n';
    }
    for (std::size_t i = 0; i < inst.size(); ++i) {
        auto id = static_cast<KeyId>(i);
        if (inst.is_bichromatic()) out << color_letter(inst.color(id));
        else out << static_cast<int>(inst.color(id)) + 1;
        out << ' ' << rank_of(id) << '\n';
    }
}

}  // namespace priced_sort

#endif
