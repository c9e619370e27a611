#ifndef PRICED_SORT_REPORT_HPP
#define PRICED_SORT_REPORT_HPP

#include "priced_sort/oracle.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace priced_sort {

struct RoundRecord {
    std::uint64_t round = 0;
    std::uint64_t active = 0;          // a: active subproblems searched this round
    std::int64_t unaffected = -1;      // u: filled by instrumentation, -1 if not measured
    std::uint64_t inversions = 0;      // inversions inserted at the end of the round
    std::uint64_t pivot_charges = 0;   // pivoting comparisons of the round
    std::uint32_t max_pivot_touches = 0;
    std::uint64_t max_probe_charges = 0;  // per subproblem, probes only
};

/// Cost breakdown of one run. The four components sum to `total` exactly.
struct RunReport {
    Price total;
    Price pivot;
    Price search;
    Price certificate;
    Price stripe_sort;
    CostLedger ledger;
    std::uint64_t rounds = 0;
    std::uint32_t tree_height = 0;
    std::vector<RoundRecord> round_log;

    // Filled from ground truth by the harness.
    std::optional<Price> hamiltonian;
    std::optional<Price> ratio;

    Price component_sum() const { return pivot + search + certificate + stripe_sort; }
};

inline RunReport report_from_oracle(const ComparisonOracle& oracle) {
    RunReport r;
    r.ledger = oracle.ledger();
    r.total = oracle.total_cost();
    r.pivot = oracle.phase_cost(Phase::pivot);
    r.search = oracle.phase_cost(Phase::search);
    r.certificate = oracle.phase_cost(Phase::certificate);
    r.stripe_sort = oracle.phase_cost(Phase::stripe_sort);
    return r;
}

/// total / hamiltonian; 1 when both are zero, nullopt when both are infinite.
inline std::optional<Price> competitive_ratio(const Price& total, const Price& hamiltonian) {
    if (hamiltonian == Price()) return total == Price() ? Price(1) : Price::infinity();
    if (hamiltonian.is_infinite()) {
        if (total.is_infinite()) return std::nullopt;
        return Price();
    }
    return total / hamiltonian;
}

}  // namespace priced_sort

#endif
