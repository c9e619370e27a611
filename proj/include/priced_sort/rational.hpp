#ifndef PRICED_SORT_RATIONAL_HPP
#define PRICED_SORT_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace priced_sort {

/*
 * Exact non-negative rational with an explicit +infinity.
 *
 * Comparison prices and ledger totals are kept in this form so that totals
 * can be compared for exact equality. Infinity times zero is zero: a price
 * that is never paid contributes nothing.
 */
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {  // NOLINT: implicit from integers is intended
        if (value < 0) throw std::invalid_argument("Rational: negative value");
    }
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den <= 0) throw std::invalid_argument("Rational: denominator must be positive");
        if (num < 0) throw std::invalid_argument("Rational: negative value");
        normalize();
    }

    static constexpr Rational infinity() {
        Rational r;
        r.inf_ = true;
        r.num_ = 1;
        return r;
    }

    /// Parses "3", "2.5", "0.125", "7/2" or "inf".
    static Rational parse(std::string_view text);

    constexpr bool is_infinite() const { return inf_; }
    constexpr bool is_integer() const { return !inf_ && den_ == 1; }
    constexpr std::int64_t numerator() const { return num_; }
    constexpr std::int64_t denominator() const { return den_; }

    double to_double() const {
        if (inf_) return std::numeric_limits<double>::infinity();
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// Fixed-point rendering rounded half-up; "inf" for infinity.
    std::string to_decimal(int places) const;
    /// Integers render bare, everything else through to_decimal(places).
    std::string to_string(int places = 6) const {
        if (is_integer()) return std::to_string(num_);
        return to_decimal(places);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.inf_ || b.inf_) return infinity();
        __int128 num = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
        __int128 den = static_cast<__int128>(a.den_) * b.den_;
        return from_wide(num, den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (b.inf_) throw std::domain_error("Rational: subtracting infinity");
        if (a.inf_) return infinity();
        __int128 num = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
        if (num < 0) throw std::domain_error("Rational: negative difference");
        return from_wide(num, static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.is_zero() || b.is_zero()) return Rational{};
        if (a.inf_ || b.inf_) return infinity();
        return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        if (b.inf_) {
            if (a.inf_) throw std::domain_error("Rational: inf / inf");
            return Rational{};
        }
        if (a.inf_) return infinity();
        return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (a.inf_ || b.inf_) {
            if (a.inf_ && b.inf_) return std::strong_ordering::equal;
            return a.inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        if (r.inf_) return os << "inf";
        os << r.num_;
        if (r.den_ != 1) os << '/' << r.den_;
        return os;
    }

private:
    constexpr bool is_zero() const { return !inf_ && num_ == 0; }

    void normalize() {
        std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    static Rational from_wide(__int128 num, __int128 den) {
        __int128 a = num, b = den;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            num /= a;
            den /= a;
        }
        constexpr __int128 limit = std::numeric_limits<std::int64_t>::max();
        if (num > limit || den > limit) throw std::overflow_error("Rational: 64-bit overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        if (r.num_ == 0) r.den_ = 1;
        return r;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    bool inf_ = false;
};

inline Rational Rational::parse(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'"); };
    if (text == "inf" || text == "INF" || text == "Inf" || text == "infinity") return infinity();
    if (text.empty()) throw fail();

    auto parse_digits = [&](std::string_view digits) {
        if (digits.empty()) throw fail();
        std::int64_t value = 0;
        for (char c : digits) {
            if (c < '0' || c > '9') throw fail();
            if (value > (std::numeric_limits<std::int64_t>::max() - 9) / 10) throw fail();
            value = value * 10 + (c - '0');
        }
        return value;
    };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::int64_t den = parse_digits(text.substr(slash + 1));
        if (den == 0) throw fail();
        return Rational(parse_digits(text.substr(0, slash)), den);
    }
    auto dot = text.find('.');
    if (dot == std::string_view::npos) return Rational(parse_digits(text));

    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 15) throw fail();
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t w = whole.empty() ? 0 : parse_digits(whole);
    std::int64_t f = frac.empty() ? 0 : parse_digits(frac);
    return from_wide(static_cast<__int128>(w) * den + f, den);
}

inline std::string Rational::to_decimal(int places) const {
    if (inf_) return "inf";
    __int128 scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    __int128 scaled = (static_cast<__int128>(num_) * scale * 2 + den_) / (2 * static_cast<__int128>(den_));
    auto whole = static_cast<std::int64_t>(scaled / scale);
    auto frac = static_cast<std::int64_t>(scaled % scale);
    std::string out = std::to_string(whole);
    if (places > 0) {
        std::string digits = std::to_string(frac);
        out += '.';
        out.append(static_cast<std::size_t>(places) - digits.size(), '0');
        out += digits;
    }
    return out;
}

}  // namespace priced_sort

#endif
