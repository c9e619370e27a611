#ifndef PRICED_SORT_BENCH_HPP
#define PRICED_SORT_BENCH_HPP

// Harness: run one algorithm on one instance, CSV reporting, parameter sweeps
// and the exhaustive small-N verifier. Uses ground truth.

#include "priced_sort/analysis.hpp"
#include "priced_sort/ground_truth.hpp"
#include "priced_sort/instance_gen.hpp"
#include "priced_sort/instance_io.hpp"
#include "priced_sort/inversion_sort.hpp"
#include "priced_sort/variants.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace priced_sort {

enum class Algorithm : std::uint8_t { inversion_sort, both_then_merge, middle_regime, multichromatic };

inline const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::inversion_sort: return "inversion_sort";
        case Algorithm::both_then_merge: return "sort_both_then_merge";
        case Algorithm::middle_regime: return "sort_middle_regime";
        case Algorithm::multichromatic: return "multichromatic";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
    for (Algorithm a : {Algorithm::inversion_sort, Algorithm::both_then_merge, Algorithm::middle_regime,
                        Algorithm::multichromatic})
        if (s == to_string(a)) return a;
    throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

/// The output order differs from the true order.
struct SortMismatch : InvariantError {
    using InvariantError::InvariantError;
};

/*
 * Runs `algo` and checks the output against the true order. The report gets
 * the Hamiltonian cost and ratio filled in. Throws RegimeError for prices
 * outside the algorithm's regime and SortMismatch for a wrong answer.
 */
inline SortResult run_algorithm(Algorithm algo, const PricedInstance& inst, std::uint64_t seed,
                                const InversionSortOptions& options = {}) {
    ComparisonOracle oracle(inst);
    SortResult result;
    switch (algo) {
        case Algorithm::inversion_sort: result = inversion_sort(oracle, seed, options); break;
        case Algorithm::both_then_merge: result = sort_both_then_merge(oracle); break;
        case Algorithm::middle_regime: result = sort_middle_regime(oracle); break;
        case Algorithm::multichromatic: result = multichromatic_sort(oracle, seed, options); break;
    }
    GroundTruth truth(inst);
    if (result.order != truth.true_sorted())
        throw SortMismatch(std::string(to_string(algo)) + ": output differs from the true order (seed " +
                           std::to_string(seed) + ")");
    attach_ground_truth(result.report, truth);
    return result;
}

inline std::string format_ratio(const std::optional<Price>& r) {
    if (!r) return "nan";
    if (r->is_infinite()) return "inf";
    return r->to_decimal(6);
}

inline const char* csv_header() {
    return "algo,N,n,m,alpha,beta,pattern,seed,total,pivot,search,cert,stripe,hamiltonian,ratio,rounds,height";
}

/*
 * One CSV row. For k > 2 colors, n counts the first color, m the rest, and
 * alpha/beta are the smallest and largest monochromatic prices.
 */
inline std::string csv_row(Algorithm algo, const PricedInstance& inst, std::string_view pattern, std::uint64_t seed,
                           const RunReport& r) {
    const std::size_t n = inst.count(0);
    const std::size_t m = inst.size() - n;
    Price lo = inst.price(0), hi = inst.price(0);
    if (inst.is_bichromatic()) {
        hi = inst.beta();
    } else {
        for (const Price& p : inst.prices()) {
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
    }
    std::ostringstream os;
    os << to_string(algo) << ',' << inst.size() << ',' << n << ',' << m << ',' << format_price(lo) << ','
       << format_price(hi) << ',' << pattern << ',' << seed << ',' << format_price(r.total) << ','
       << format_price(r.pivot) << ',' << format_price(r.search) << ',' << format_price(r.certificate) << ','
       << format_price(r.stripe_sort) << ',' << (r.hamiltonian ? format_price(*r.hamiltonian) : "nan") << ','
       << format_ratio(r.ratio) << ',' << r.rounds << ',' << r.tree_height;
    return os.str();
}

/// Per-round lines `round a u inversions_found pivot_charges`.
inline void write_trace(std::ostream& os, const RunReport& r) {
    for (const RoundRecord& rec : r.round_log)
        os << rec.round << ' ' << rec.active << ' ' << rec.unaffected << ' ' << rec.inversions << ' '
           << rec.pivot_charges << '\n';
}

/// Options that record the unaffected count of every round.
inline InversionSortOptions measuring_options(const UnaffectedMeter& meter) {
    InversionSortOptions opt;
    opt.measure_round = [&meter](const Backbone& bb, std::span<const Handle> active) {
        return static_cast<std::int64_t>(meter.measure(bb, active).unaffected);
    };
    return opt;
}

/// Worker count: hardware concurrency, capped by PRICED_SORT_THREADS.
inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PRICED_SORT_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

/// Calls job(i) for i in [0, count) on up to `threads` threads. Of the jobs
/// that throw, the one with the lowest index has its exception rethrown.
template <class Job>
void parallel_for(std::size_t count, unsigned threads, Job&& job) {
    threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::size_t error_index = count;
    std::mutex mu;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < count;) {
            try {
                job(i);
            } catch (...) {
                std::lock_guard lock(mu);
                // keep the lowest failing index so the reported failure is deterministic
                if (i < error_index) error_index = i, error = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
}

struct PricePair {
    Price alpha;
    Price beta;
    bool alpha_is_n = false;  // sweeps: replaced by the cell's N
    bool beta_is_n = false;
};

struct SweepConfig {
    std::vector<std::size_t> sizes;
    std::vector<PricePair> prices;
    std::vector<Pattern> patterns;
    std::size_t seeds = 1;
    Algorithm algo = Algorithm::inversion_sort;
    std::uint64_t base_seed = 1;
    double long_fraction = 0.5;
    std::size_t colors = 3;  // multichromatic only; prices alternate alpha, beta, alpha, ..
    unsigned threads = 0;  // 0: worker_count()
};

struct SweepCell {
    std::size_t n_keys = 0;
    PricePair prices;
    Pattern pattern = Pattern::uniform_shuffle;
};

struct CellSummary {
    SweepCell cell;
    std::size_t runs = 0;
    double max_ratio = 0;
    double median_ratio = 0;
    std::uint32_t max_height = 0;
    double median_height = 0;
};

struct SweepResult {
    std::vector<std::string> rows;  // one per run, cell-major then seed
    std::vector<CellSummary> cells;
    double c_hat = 0;  // max over cells of max_ratio / (log2 N)^3
};

/// Failure of one (cell, seed) during a sweep.
struct SweepFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::uint64_t instance_seed(std::uint64_t base, std::size_t n_keys, std::size_t s) {
    return mix_seed(mix_seed(base, n_keys), s);
}

inline PricedInstance sweep_instance(const SweepConfig& cfg, const SweepCell& cell, std::size_t s) {
    const std::uint64_t seed = instance_seed(cfg.base_seed, cell.n_keys, s);
    if (cfg.algo == Algorithm::multichromatic) {
        std::vector<Price> gammas;
        for (std::size_t c = 0; c < cfg.colors; ++c) gammas.push_back(c % 2 ? cell.prices.beta : cell.prices.alpha);
        return generate_multichromatic(cell.n_keys, std::move(gammas), seed);
    }
    GenSpec spec;
    spec.n = cell.n_keys / 2;
    spec.m = cell.n_keys - spec.n;
    spec.alpha = cell.prices.alpha;
    spec.beta = cell.prices.beta;
    spec.pattern = cell.pattern;
    spec.long_fraction = cfg.long_fraction;
    spec.seed = seed;
    return generate(spec);
}

inline double median_of(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2;
}

inline std::vector<SweepCell> sweep_cells(const SweepConfig& cfg) {
    std::vector<SweepCell> cells;
    for (std::size_t n : cfg.sizes)
        for (const PricePair& p : cfg.prices)
            for (Pattern pat : cfg.patterns) {
                SweepCell c{n, p, pat};
                if (p.alpha_is_n) c.prices.alpha = Price(static_cast<std::int64_t>(n));
                if (p.beta_is_n) c.prices.beta = Price(static_cast<std::int64_t>(n));
                cells.push_back(c);
            }
    return cells;
}

inline SweepResult run_sweep(const SweepConfig& cfg) {
    if (cfg.sizes.empty() || cfg.prices.empty() || cfg.patterns.empty() || cfg.seeds == 0)
        throw std::invalid_argument("sweep: sizes, prices, patterns and seeds must all be non-empty");
    const std::vector<SweepCell> cells = sweep_cells(cfg);
    const std::size_t total = cells.size() * cfg.seeds;

    struct Slot {
        std::string row;
        double ratio = 0;
        std::uint32_t height = 0;
    };
    std::vector<Slot> slots(total);
    parallel_for(total, cfg.threads ? cfg.threads : worker_count(), [&](std::size_t i) {
        const SweepCell& cell = cells[i / cfg.seeds];
        const std::size_t s = i % cfg.seeds;
        const std::string pattern = cfg.algo == Algorithm::multichromatic ? "uniform" : to_string(cell.pattern);
        try {
            PricedInstance inst = sweep_instance(cfg, cell, s);
            const std::uint64_t run_seed = mix_seed(instance_seed(cfg.base_seed, cell.n_keys, s), 1);
            SortResult res = run_algorithm(cfg.algo, inst, run_seed);
            slots[i].row = csv_row(cfg.algo, inst, pattern, run_seed, res.report);
            slots[i].ratio = res.report.ratio ? res.report.ratio->to_double() : 0.0;
            slots[i].height = res.report.tree_height;
        } catch (const RegimeError&) {
            throw;
        } catch (const std::exception& e) {
            throw SweepFailure("cell N=" + std::to_string(cell.n_keys) + " alpha=" + format_price(cell.prices.alpha) +
                               " beta=" + format_price(cell.prices.beta) + " pattern=" + pattern +
                               " seed index " + std::to_string(s) + ": " + e.what());
        }
    });

    SweepResult out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        CellSummary sum;
        sum.cell = cells[c];
        std::vector<double> ratios, heights;
        for (std::size_t s = 0; s < cfg.seeds; ++s) {
            const Slot& sl = slots[c * cfg.seeds + s];
            out.rows.push_back(sl.row);
            ratios.push_back(sl.ratio);
            heights.push_back(sl.height);
            sum.max_ratio = std::max(sum.max_ratio, sl.ratio);
            sum.max_height = std::max(sum.max_height, sl.height);
        }
        sum.runs = cfg.seeds;
        sum.median_ratio = median_of(ratios);
        sum.median_height = median_of(heights);
        if (cells[c].n_keys >= 2) {
            double lg = std::log2(static_cast<double>(cells[c].n_keys));
            out.c_hat = std::max(out.c_hat, sum.max_ratio / (lg * lg * lg));
        }
        out.cells.push_back(sum);
    }
    return out;
}

inline std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

/// Run rows, then `#`-prefixed cell summaries and the fitted constant.
inline void write_sweep(std::ostream& os, const SweepConfig& cfg, const SweepResult& r) {
    os << csv_header() << '\n';
    for (const auto& row : r.rows) os << row << '\n';
    os << "# cell,N,alpha,beta,pattern,runs,max_ratio,median_ratio,max_height,median_height\n";
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
        const CellSummary& c = r.cells[i];
        os << "# " << i << ',' << c.cell.n_keys << ',' << format_price(c.cell.prices.alpha) << ','
           << format_price(c.cell.prices.beta) << ','
           << (cfg.algo == Algorithm::multichromatic ? "uniform" : to_string(c.cell.pattern)) << ',' << c.runs << ','
           << fixed6(c.max_ratio) << ',' << fixed6(c.median_ratio) << ',' << c.max_height << ','
           << fixed6(c.median_height) << '\n';
    }
    os << "# c_hat=" << fixed6(r.c_hat) << '\n';
}

// ---------------------------------------------------------------------------
// Exhaustive verification

enum VerifyCheck : unsigned {
    check_ledger = 1u << 0,
    check_backbone = 1u << 1,
    check_sorted = 1u << 2,
    check_tree = 1u << 3,
    check_certificate = 1u << 4,
    check_all = (1u << 5) - 1,
};

inline unsigned parse_checks(std::string_view list) {
    unsigned mask = 0;
    while (!list.empty()) {
        std::size_t comma = list.find(',');
        std::string_view tok = list.substr(0, comma);
        if (tok == "ledger") mask |= check_ledger;
        else if (tok == "backbone") mask |= check_backbone;
        else if (tok == "sorted") mask |= check_sorted;
        else if (tok == "tree") mask |= check_tree;
        else if (tok == "certificate") mask |= check_certificate;
        else if (tok == "all") mask |= check_all;
        else throw std::invalid_argument("unknown check '" + std::string(tok) + "'");
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
    }
    return mask;
}

struct VerifyConfig {
    std::size_t max_n = 8;
    std::vector<PricePair> prices;
    Algorithm algo = Algorithm::inversion_sort;
    unsigned checks = check_all;
    std::size_t seeds = 1;  // seeds per instance
    bool inject_fault = false;
    std::size_t max_reports = 20;
};

struct VerifyResult {
    std::uint64_t instances = 0;
    std::uint64_t runs = 0;
    std::uint64_t failures = 0;
    std::vector<std::string> messages;  // first max_reports violations
    bool ok() const { return failures == 0; }
};

inline std::vector<PricePair> default_verify_prices(Algorithm algo) {
    auto P = [](const char* a, const char* b) { return PricePair{Price::parse(a), Price::parse(b)}; };
    switch (algo) {
        case Algorithm::both_then_merge: return {P("1/2", "1/2"), P("1", "1"), P("1/10", "1/3")};
        case Algorithm::middle_regime: return {P("1/2", "4"), P("4", "1/2"), P("1", "2")};
        default: return {P("2", "2"), P("10", "3"), P("1000", "1000"), P("inf", "inf")};
    }
}

inline std::string describe(const PricedInstance& inst) {
    GroundTruth truth(inst);
    std::string s;
    for (KeyId k : truth.true_sorted()) s += color_letter(inst.color(k));
    return s.empty() ? "(empty)" : s;
}

/*
 * Runs the algorithm on every instance of enumerate_small(N) for N up to
 * max_n and every price pair, with the selected instrumentation checks.
 */
inline VerifyResult run_verify(const VerifyConfig& cfg) {
    VerifyResult out;
    const std::vector<PricePair> prices = cfg.prices.empty() ? default_verify_prices(cfg.algo) : cfg.prices;
    const bool engine = cfg.algo == Algorithm::inversion_sort || cfg.algo == Algorithm::multichromatic;

    for (std::size_t n = 1; n <= cfg.max_n; ++n) {
        for (const PricePair& pp : prices) {
            enumerate_small(n, pp.alpha, pp.beta, [&](const PricedInstance& inst) {
                ++out.instances;
                GroundTruth truth(inst);
                for (std::size_t s = 0; s < cfg.seeds; ++s) {
                    ++out.runs;
                    std::vector<std::string> found;
                    auto where = [&] {
                        return "[" + std::string(to_string(cfg.algo)) + " alpha=" + format_price(pp.alpha) +
                               " beta=" + format_price(pp.beta) + " order=" + describe(inst) +
                               " seed=" + std::to_string(s) + "] ";
                    };
                    InversionSortOptions opt;
                    opt.fault.drop_last_cross_comparison = cfg.inject_fault;
                    if (engine && (cfg.checks & check_backbone)) {
                        const bool bi = cfg.algo == Algorithm::inversion_sort;
                        opt.after_round = [&](const Backbone& bb, const RefinementTree& tree, std::uint64_t round) {
                            CheckReport r = check_backbone_invariants(bb, truth, bi);
                            if (bi) {
                                CheckReport snap = check_snapshot(bb, tree);
                                r.violations.insert(r.violations.end(), snap.violations.begin(),
                                                    snap.violations.end());
                            }
                            for (auto& v : r.violations)
                                found.push_back("round " + std::to_string(round) + ": " + v);
                        };
                    }
                    if (engine && (cfg.checks & check_certificate)) {
                        opt.on_certificate = [&](const Backbone& bb, Handle h) {
                            if (!no_inversion_between(bb, h, truth))
                                found.push_back("certificate finished subproblem (" + std::to_string(bb.rep(h)) +
                                                ", " + std::to_string(bb.rep(bb.next(h))) +
                                                ") with an inversion left");
                        };
                    }

                    ComparisonOracle oracle(inst);
                    SortResult res;
                    try {
                        switch (cfg.algo) {
                            case Algorithm::inversion_sort: res = inversion_sort(oracle, s, opt); break;
                            case Algorithm::both_then_merge: res = sort_both_then_merge(oracle); break;
                            case Algorithm::middle_regime: res = sort_middle_regime(oracle); break;
                            case Algorithm::multichromatic: res = multichromatic_sort(oracle, s, opt); break;
                        }
                    } catch (const RegimeError&) {
                        throw;
                    } catch (const std::exception& e) {
                        found.push_back(std::string("run aborted: ") + e.what());
                    }
                    if ((cfg.checks & check_sorted) && res.order != truth.true_sorted())
                        found.push_back("output differs from the true order");
                    if (cfg.checks & check_ledger) {
                        const CostLedger& l = oracle.ledger();
                        Price direct = inst.alpha() * Price(static_cast<std::int64_t>(l.count_rr())) +
                                       inst.beta() * Price(static_cast<std::int64_t>(l.count_bb())) +
                                       Price(static_cast<std::int64_t>(l.count_rb()));
                        if (!(direct == oracle.total_cost())) found.push_back("ledger total disagrees with counts");
                        if (!(res.report.component_sum() == res.report.total) || !(res.report.total == direct))
                            found.push_back("report components do not sum to the ledger total");
                    }
                    if (engine && (cfg.checks & check_tree) && cfg.algo == Algorithm::inversion_sort && !res.tree.empty()) {
                        CheckReport r = check_tree_structure(res.tree, inst);
                        for (auto& v : r.violations) found.push_back("tree: " + v);
                    }
                    if (!found.empty()) {
                        ++out.failures;
                        for (auto& f : found)
                            if (out.messages.size() < cfg.max_reports) out.messages.push_back(where() + f);
                    }
                }
            });
        }
    }
    return out;
}

}  // namespace priced_sort

#endif
