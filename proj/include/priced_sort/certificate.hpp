#ifndef PRICED_SORT_CERTIFICATE_HPP
#define PRICED_SORT_CERTIFICATE_HPP

#include "priced_sort/instance.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

namespace priced_sort {

/*
 * The four ways to prove that no inversion exists between two adjacent
 * buckets holding A keys priced `alpha` and B keys priced `beta`:
 *
 *   all_pairs            every A x B cross comparison            A*B
 *   a_extreme_then_b     extreme of A by scan, then vs all of B   alpha*(A-1) + B
 *   b_extreme_then_a     extreme of B by scan, then vs all of A   beta*(B-1) + A
 *   both_extremes        both scans, then one cross comparison    alpha*(A-1) + beta*(B-1) + 1
 *
 * In the bichromatic setting A counts reds and B counts blues. The extreme is
 * the max of the lower bucket or the min of the upper bucket.
 */
enum class CertificateKind : std::uint8_t { all_pairs = 0, a_extreme_then_b = 1, b_extreme_then_a = 2, both_extremes = 3 };

inline const char* to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::all_pairs: return "all_pairs";
        case CertificateKind::a_extreme_then_b: return "a_extreme_then_b";
        case CertificateKind::b_extreme_then_a: return "b_extreme_then_a";
        case CertificateKind::both_extremes: return "both_extremes";
    }
    return "?";
}

struct CertificateChoice {
    CertificateKind kind = CertificateKind::all_pairs;
    Price cost;
    std::size_t a = 0;
    std::size_t b = 0;
};

/// Cost of one certificate kind, or nullopt when it does not exist (an
/// extreme of an empty side).
inline std::optional<Price> certificate_formula(CertificateKind kind, std::size_t a, std::size_t b,
                                                const Price& alpha, const Price& beta) {
    const auto A = static_cast<std::int64_t>(a);
    const auto B = static_cast<std::int64_t>(b);
    switch (kind) {
        case CertificateKind::all_pairs: return Price(A * B);
        case CertificateKind::a_extreme_then_b:
            if (a == 0) return std::nullopt;
            return alpha * Price(A - 1) + Price(B);
        case CertificateKind::b_extreme_then_a:
            if (b == 0) return std::nullopt;
            return beta * Price(B - 1) + Price(A);
        case CertificateKind::both_extremes:
            if (a == 0 || b == 0) return std::nullopt;
            return alpha * Price(A - 1) + beta * Price(B - 1) + Price(1);
    }
    return std::nullopt;
}

/// Cheapest certificate; ties go to the lowest kind index.
inline CertificateChoice certificate_cost(std::size_t a, std::size_t b, const Price& alpha, const Price& beta) {
    CertificateChoice best{CertificateKind::all_pairs, Price(static_cast<std::int64_t>(a * b)), a, b};
    for (auto kind : {CertificateKind::a_extreme_then_b, CertificateKind::b_extreme_then_a,
                      CertificateKind::both_extremes}) {
        auto cost = certificate_formula(kind, a, b, alpha, beta);
        if (cost && *cost < best.cost) {
            best.kind = kind;
            best.cost = *cost;
        }
    }
    return best;
}

}  // namespace priced_sort

#endif
