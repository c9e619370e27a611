// priced-sort: generate instances, run the sorting algorithms, sweep and verify.
//
// Exit codes: 0 success, 2 usage or input error, 3 price regime mismatch,
// 4 invariant violation (including a wrong output order).

#include "priced_sort/bench.hpp"
#include "priced_sort/priced_sort.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace ps = priced_sort;

namespace {

constexpr int kUsage = 2;
constexpr int kRegime = 3;
constexpr int kInvariant = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, sep);)
        if (!tok.empty()) out.push_back(tok);
    return out;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
    std::vector<std::size_t> out;
    for (const auto& tok : split(s, ',')) {
        try {
            std::size_t used = 0;
            unsigned long long v = std::stoull(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw UsageError("bad count '" + tok + "'");
        }
    }
    return out;
}

ps::Price parse_price(const std::string& s) {
    try {
        return ps::Price::parse(s);
    } catch (const std::exception&) {
        throw UsageError("bad price '" + s + "'");
    }
}

// "2:2,10:3,N:N" -> pairs; N stands for the cell size
std::vector<ps::PricePair> parse_price_pairs(const std::string& s, bool allow_n) {
    std::vector<ps::PricePair> out;
    for (const auto& tok : split(s, ',')) {
        auto parts = split(tok, ':');
        if (parts.size() != 2) throw UsageError("price pair must be alpha:beta, got '" + tok + "'");
        ps::PricePair p;
        ps::Price* slots[2] = {&p.alpha, &p.beta};
        bool* is_n[2] = {&p.alpha_is_n, &p.beta_is_n};
        for (int i = 0; i < 2; ++i) {
            if (parts[i] == "N") {
                if (!allow_n) throw UsageError("N is only allowed in sweeps");
                *is_n[i] = true;
            } else {
                *slots[i] = parse_price(parts[i]);
            }
        }
        out.push_back(p);
    }
    return out;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + path + "'");
    return file;
}

ps::PricedInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + path + "'");
    return ps::read_instance(in);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sorting with priced comparisons: InversionSort and variants"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Write a seeded instance file");
    std::string g_pattern = "uniform", g_out, g_alpha = "2", g_beta = "2", g_red, g_blue, g_gammas;
    std::size_t g_n = 0, g_m = 0;
    std::uint64_t g_seed = 0;
    double g_fraction = 0.5;
    gen->add_option("--pattern", g_pattern, "uniform | alternating | stripes | few-long");
    gen->add_option("--n", g_n, "red keys")->required();
    gen->add_option("--m", g_m, "blue keys")->required();
    gen->add_option("--alpha", g_alpha, "red-red price (decimal, p/q or inf)");
    gen->add_option("--beta", g_beta, "blue-blue price");
    gen->add_option("--seed", g_seed);
    gen->add_option("--red-stripes", g_red, "stripe lengths for --pattern stripes, e.g. 4,2");
    gen->add_option("--blue-stripes", g_blue);
    gen->add_option("--long-fraction", g_fraction, "few-long: share of the smaller color in long stripes");
    gen->add_option("--gammas", g_gammas, "k prices g1,..,gk: multichromatic instance of n+m keys");
    gen->add_option("-o,--output", g_out, "output file (default stdout)");

    // run
    auto* run = app.add_subcommand("run", "Sort an instance file and print a CSV row");
    std::string r_in, r_algo = "inversion_sort", r_trace, r_out, r_label = "file";
    std::uint64_t r_seed = 0;
    bool r_no_header = false;
    run->add_option("input", r_in, "instance file")->required();
    run->add_option("--algo", r_algo, "inversion_sort | sort_both_then_merge | sort_middle_regime | multichromatic");
    run->add_option("--seed", r_seed);
    run->add_option("--trace", r_trace, "write per-round trace lines to this file");
    run->add_option("--pattern", r_label, "value of the CSV pattern column");
    run->add_flag("--no-header", r_no_header);
    run->add_option("-o,--output", r_out);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run a grid of generated instances");
    std::string s_sizes, s_prices, s_patterns = "uniform", s_algo = "inversion_sort", s_out;
    ps::SweepConfig scfg;
    sweep->add_option("--sizes", s_sizes, "N values, e.g. 64,256,1024")->required();
    sweep->add_option("--prices", s_prices, "alpha:beta pairs; N means the cell size, e.g. 2:2,N:N")->required();
    sweep->add_option("--patterns", s_patterns, "comma-separated patterns");
    sweep->add_option("--seeds", scfg.seeds, "seeds per cell");
    sweep->add_option("--base-seed", scfg.base_seed);
    sweep->add_option("--long-fraction", scfg.long_fraction);
    sweep->add_option("--colors", scfg.colors, "multichromatic: number of colors");
    sweep->add_option("--algo", s_algo);
    sweep->add_option("-o,--output", s_out);

    // verify
    auto* verify = app.add_subcommand("verify", "Exhaustive small-N check with instrumentation");
    std::string v_algo = "inversion_sort", v_checks = "all", v_prices;
    ps::VerifyConfig vcfg;
    verify->add_option("--max-n", vcfg.max_n, "largest N enumerated (at most 12)");
    verify->add_option("--algo", v_algo);
    verify->add_option("--checks", v_checks, "ledger,backbone,sorted,tree,certificate");
    verify->add_option("--seeds", vcfg.seeds, "seeds per instance");
    verify->add_option("--prices", v_prices, "alpha:beta pairs");
    verify->add_flag("--inject-fault", vcfg.inject_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    try {
        if (*gen) {
            ps::PricedInstance inst;
            if (!g_gammas.empty()) {
                std::vector<ps::Price> gammas;
                for (const auto& t : split(g_gammas, ',')) gammas.push_back(parse_price(t));
                inst = ps::generate_multichromatic(g_n + g_m, std::move(gammas), g_seed);
            } else {
                ps::GenSpec spec;
                spec.n = g_n;
                spec.m = g_m;
                spec.alpha = parse_price(g_alpha);
                spec.beta = parse_price(g_beta);
                spec.pattern = ps::parse_pattern(g_pattern);
                spec.red_stripes = parse_sizes(g_red);
                spec.blue_stripes = parse_sizes(g_blue);
                spec.long_fraction = g_fraction;
                spec.seed = g_seed;
                inst = ps::generate(spec);
            }
            ps::GroundTruth truth(inst);
            std::ofstream file;
            std::ostream& os = open_out(g_out, file);
            ps::write_instance(os, inst, [&](ps::KeyId id) { return truth.rank(id); });
            std::ostream& info = (g_out.empty() || g_out == "-") ? std::cerr : std::cout;
            info << "N=" << inst.size() << " hamiltonian=" << ps::format_price(truth.hamiltonian_cost())
                 << " stripes=" << truth.stripes().size() << '\n';
            return 0;
        }
        if (*run) {
            const ps::Algorithm algo = ps::parse_algorithm(r_algo);
            ps::PricedInstance inst = load_instance(r_in);
            ps::GroundTruth truth(inst);
            ps::UnaffectedMeter meter(truth);
            ps::InversionSortOptions opt;
            if (!r_trace.empty() && algo == ps::Algorithm::inversion_sort) opt = ps::measuring_options(meter);
            ps::SortResult res = ps::run_algorithm(algo, inst, r_seed, opt);
            std::ofstream file;
            std::ostream& os = open_out(r_out, file);
            if (!r_no_header) os << ps::csv_header() << '\n';
            os << ps::csv_row(algo, inst, r_label, r_seed, res.report) << '\n';
            if (!r_trace.empty()) {
                std::ofstream tf(r_trace, std::ios::binary);
                if (!tf) throw UsageError("cannot write '" + r_trace + "'");
                ps::write_trace(tf, res.report);
            }
            return 0;
        }
        if (*sweep) {
            scfg.algo = ps::parse_algorithm(s_algo);
            scfg.sizes = parse_sizes(s_sizes);
            scfg.prices = parse_price_pairs(s_prices, true);
            for (const auto& p : split(s_patterns, ',')) scfg.patterns.push_back(ps::parse_pattern(p));
            ps::SweepResult res = ps::run_sweep(scfg);
            std::ofstream file;
            ps::write_sweep(open_out(s_out, file), scfg, res);
            return 0;
        }
        if (*verify) {
            vcfg.algo = ps::parse_algorithm(v_algo);
            vcfg.checks = ps::parse_checks(v_checks);
            if (!v_prices.empty()) vcfg.prices = parse_price_pairs(v_prices, false);
            ps::VerifyResult res = ps::run_verify(vcfg);
            for (const auto& m : res.messages) std::cout << "FAIL " << m << '\n';
            std::cout << (res.ok() ? "PASS" : "FAIL") << " instances=" << res.instances << " runs=" << res.runs
                      << " failures=" << res.failures << '\n';
            return res.ok() ? 0 : kInvariant;
        }
    } catch (const ps::RegimeError& e) {
        std::cerr << "regime error: " << e.what() << '\n';
        return kRegime;
    } catch (const ps::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kInvariant;
    } catch (const ps::SweepFailure& e) {
        std::cerr << "sweep failed: " << e.what() << '\n';
        return kInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
