#include "collatz/diagnostics.hpp"
#include "collatz/dynamics.hpp"
#include "collatz/fpseries.hpp"
#include "collatz/isometry.hpp"
#include "collatz/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace collatz;

constexpr const char* kVersion = PADIC_COLLATZ_VERSION;

// Bundled reference set of (p, q) pairs with known negative integer cycles.
const std::vector<std::pair<long, long>> kReferencePairs = {
    {2, 3},   {3, 11},  {3, 13},  {5, 7},   {5, 13},  {7, 17},  {7, 19},
    {11, 13}, {11, 19}, {11, 37}, {13, 19}, {13, 47}, {17, 29}, {17, 37},
    {17, 41}, {17, 73}, {19, 29}, {19, 83}, {23, 29}, {23, 53}, {29, 47},
    {37, 47}, {41, 53}, {47, 83}, {71, 97}, {73, 97}};

struct Output {
    std::string format = "json"; // json | csv | plain
    std::string path;            // empty: stdout

    void emit(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (!text.empty() && text.back() != '\n') std::cout << '\n';
        } else {
            std::ofstream f(path);
            if (!f) throw std::runtime_error("cannot open output file: " + path);
            f << text;
        }
    }
};

Json wrap(const std::string& command, const Json& config, Json result) {
    return Json{{"command", command},
                {"version", kVersion},
                {"config", config},
                {"result", std::move(result)}};
}

std::vector<Digit> parse_digit_list(const std::string& text) {
    std::vector<Digit> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const long v = std::stol(item);
        if (v < 0) throw std::domain_error("digit lists must be nonnegative");
        out.push_back(static_cast<Digit>(v));
    }
    return out;
}

std::pair<Integer, Integer> parse_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos)
        throw std::domain_error("range must look like A..B, got '" + text + "'");
    return {Integer(text.substr(0, pos)), Integer(text.substr(pos + 2))};
}

std::vector<std::pair<long, long>> parse_pairs(const std::string& text) {
    if (text == "paper" || text == "builtin") return kReferencePairs;
    std::vector<std::pair<long, long>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::domain_error("pair must look like P:Q, got '" + item + "'");
        out.emplace_back(std::stol(item.substr(0, colon)), std::stol(item.substr(colon + 1)));
    }
    if (out.empty()) throw std::domain_error("empty pair list");
    return out;
}

unsigned default_threads() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

// ---- command payloads ----------------------------------------------------

struct OrbitArgs {
    long p = 2, q = 3;
    std::string u = "1";
    long max_steps = 100000;
    Output out;
};

int cmd_orbit(const OrbitArgs& a) {
    const Params params(a.p, a.q);
    const Rational u = parse_rational(a.u);
    const OrbitRecord rec = orbit(u, params, a.max_steps);
    const Json config{{"p", a.p}, {"q", a.q}, {"u", a.u}, {"max_steps", a.max_steps}};
    if (a.out.format == "plain") {
        std::ostringstream txt;
        txt << "orbit of " << to_string(u) << " under (p,q)=(" << a.p << "," << a.q << ")\n";
        if (rec.cycle)
            txt << "cycle: preperiod " << rec.cycle->preperiod << ", period " << rec.cycle->period
                << "\n";
        else
            txt << "truncated after " << a.max_steps << " steps\n";
        txt << "states:";
        for (const auto& s : rec.states) txt << ' ' << to_string(s);
        txt << '\n';
        a.out.emit(txt.str());
    } else {
        a.out.emit(wrap("orbit", config, to_json(rec)).dump(2));
    }
    return rec.truncated ? 2 : 0;
}

struct TableArgs {
    std::string pairs = "paper";
    std::string range = "-6000..-1";
    long max_steps = 1'000'000;
    unsigned escape_bits = 256;
    unsigned threads = default_threads();
    Output out{.format = "csv"};
};

int cmd_table(const TableArgs& a) {
    const auto pair_list = parse_pairs(a.pairs);
    const auto [lo, hi] = parse_range(a.range);
    CycleSearchOptions opt;
    opt.max_steps = a.max_steps;
    opt.escape_bits = a.escape_bits;
    opt.threads = a.threads;

    std::vector<Params> params_list;
    std::vector<CycleSearchResult> results;
    for (const auto& [p, q] : pair_list) {
        params_list.emplace_back(p, q);
        results.push_back(integer_cycle_search(params_list.back(), lo, hi, opt));
    }
    const Json config{{"pairs", a.pairs},       {"range", a.range},
                      {"max_steps", a.max_steps}, {"escape_bits", a.escape_bits},
                      {"threads", a.threads}};
    if (a.out.format == "json") {
        Json items = Json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
            Json entry = to_json(results[i]);
            entry["p"] = params_list[i].p();
            entry["q"] = params_list[i].q();
            // full orbit record of each representative over one period
            for (std::size_t c = 0; c < results[i].cycles.size(); ++c) {
                const auto& cyc = results[i].cycles[c];
                entry["cycles"][c]["representative_orbit"] = to_json(
                    orbit(cyc.members.front(), params_list[i],
                          static_cast<long>(cyc.members.size()) + 1));
            }
            items.push_back(std::move(entry));
        }
        a.out.emit(wrap("table", config, items).dump(2));
    } else {
        a.out.emit(cycle_table_csv(results, params_list));
    }
    return 0;
}

struct PhiArgs {
    long p = 2, q = 3;
    std::string u = "1";
    long prec = 32;
    bool exact = false;
    bool qp = false;
    long max_steps = 100000;
    Output out;
};

int cmd_phi(const PhiArgs& a) {
    const Params params(a.p, a.q);
    const Rational u = parse_rational(a.u);
    const Json config{{"p", a.p}, {"q", a.q},         {"u", a.u},
                      {"prec", a.prec}, {"exact", a.exact}, {"max_steps", a.max_steps}};
    if (a.exact) {
        const auto digits = phi_exact(u, params, a.max_steps);
        if (!digits) {
            a.out.emit(wrap("phi", config, Json{{"verdict", "aperiodic within budget"}}).dump(2));
            return 2;
        }
        Json result = to_json(*digits);
        result["value"] = to_string(rational_from_digits(*digits));
        a.out.emit(wrap("phi", config, result).dump(2));
        return 0;
    }
    const PadicApprox ap =
        a.qp ? phi_qp(u, params, static_cast<std::size_t>(a.prec))
             : phi(u, params, static_cast<std::size_t>(a.prec));
    a.out.emit(wrap("phi", config, to_json(ap)).dump(2));
    return 0;
}

struct PhiInvArgs {
    long p = 2, q = 3;
    std::string preperiod, period, digits;
    Output out;
};

int cmd_phi_inv(const PhiInvArgs& a) {
    const Params params(a.p, a.q);
    const Json config{{"p", a.p},
                      {"q", a.q},
                      {"preperiod", a.preperiod},
                      {"period", a.period},
                      {"digits", a.digits}};
    if (!a.period.empty()) {
        const HenselDigits h =
            HenselDigits::make(a.p, parse_digit_list(a.preperiod), parse_digit_list(a.period));
        const Rational v = phi_inverse_exact(h, params);
        Json result{{"value", to_string(v)}, {"input", to_json(h)}};
        a.out.emit(wrap("phi-inv", config, result).dump(2));
        return 0;
    }
    if (a.digits.empty()) throw std::domain_error("phi-inv: need --period or --digits");
    const PadicApprox in{a.p, 0, parse_digit_list(a.digits)};
    a.out.emit(wrap("phi-inv", config, to_json(phi_inverse_approx(in, params))).dump(2));
    return 0;
}

struct PeriodicArgs {
    long p = 2, q = 3;
    long k = 1;
    Output out;
};

int cmd_periodic(const PeriodicArgs& a) {
    const Params params(a.p, a.q);
    const auto points = enumerate_periodic(a.k, params);
    Json values = Json::array();
    for (const auto& v : points) values.push_back(to_string(v));
    const Json config{{"p", a.p}, {"q", a.q}, {"k", a.k}};
    a.out.emit(
        wrap("periodic", config, Json{{"count", points.size()}, {"points", std::move(values)}})
            .dump(2));
    return 0;
}

struct CatalanArgs {
    long p = 2, q = 3;
    long bound = 64;
    long k_max = 0, ell_max = 0;
    Output out;
};

int cmd_catalan(const CatalanArgs& a) {
    const Params params(a.p, a.q);
    const long km = a.k_max > 0 ? a.k_max : a.bound;
    const long em = a.ell_max > 0 ? a.ell_max : a.bound;
    const auto sols = catalan_search(params, km, em);
    auto pairs_json = [](const std::vector<std::pair<long, long>>& v) {
        Json arr = Json::array();
        for (const auto& [k, ell] : v) arr.push_back(Json{{"k", k}, {"ell", ell}});
        return arr;
    };
    const Json config{{"p", a.p}, {"q", a.q}, {"k_max", km}, {"ell_max", em}};
    a.out.emit(wrap("catalan", config,
                    Json{{"minus_one", pairs_json(sols.minus_one)},
                         {"plus_one", pairs_json(sols.plus_one)}})
                   .dump(2));
    return 0;
}

struct MeanDriftArgs {
    long p = 2, q = 3;
    long m = 8;
    bool full = false;
    unsigned long long samples = 0;
    unsigned long long rng_seed = 1;
    unsigned threads = default_threads();
    Output out;
};

int cmd_mean_drift(const MeanDriftArgs& a) {
    const Params params(a.p, a.q);
    SampleSpec spec;
    spec.full = a.full || a.samples == 0;
    spec.count = a.samples;
    spec.rng_seed = a.rng_seed;
    const auto rep = mean_drift(params, a.m, spec, a.threads);
    const Json config{{"p", a.p},         {"q", a.q},
                      {"m", a.m},         {"full", spec.full},
                      {"samples", a.samples}, {"rng_seed", a.rng_seed},
                      {"threads", a.threads}};
    if (a.out.format == "csv")
        a.out.emit(mean_drift_csv(rep));
    else
        a.out.emit(wrap("stats mean-drift", config, to_json(rep)).dump(2));
    return 0;
}

struct SeedStatArgs {
    long p = 2, q = 3;
    std::string u = "1";
    long m = 8;
    long steps = 100;
    long min_height = -1;
    Output out;
};

int cmd_tranches(const SeedStatArgs& a) {
    const Params params(a.p, a.q);
    const auto stats =
        tranche_stats(parse_rational(a.u), params, a.m,
                      a.min_height >= 0 ? std::optional<long>(a.min_height) : std::nullopt);
    const Json config{{"p", a.p}, {"q", a.q}, {"u", a.u}, {"m", a.m}};
    a.out.emit(wrap("stats tranches", config, to_json(stats)).dump(2));
    return 0;
}

int cmd_nz_drift(const SeedStatArgs& a) {
    const Params params(a.p, a.q);
    const auto rep = nz_drift_check(parse_rational(a.u), params, a.m);
    const Json config{{"p", a.p}, {"q", a.q}, {"u", a.u}, {"m", a.m}};
    a.out.emit(wrap("stats nz-drift", config, to_json(rep)).dump(2));
    return 0;
}

int cmd_ratios(const SeedStatArgs& a) {
    const Params params(a.p, a.q);
    const auto series = asymptotic_ratios(parse_rational(a.u), params, a.steps);
    const Json config{{"p", a.p}, {"q", a.q}, {"u", a.u}, {"steps", a.steps}};
    a.out.emit(wrap("stats ratios", config, to_json(series)).dump(2));
    return 0;
}

struct CandidateArgs {
    long p = 2, q = 3;
    Output out;
};

int cmd_candidate(const CandidateArgs& a) {
    const Params params(a.p, a.q);
    const Json config{{"p", a.p}, {"q", a.q}};
    Json result{{"candidate", candidate_test(params)}};
    const auto r = tranche_r(params);
    result["tranche_r"] = r ? Json(*r) : Json("infinite");
    a.out.emit(wrap("stats candidate", config, result).dump(2));
    return 0;
}

struct DensityArgs {
    std::string u = "7";
    long n = 2;
    long max_steps = 1'000'000;
    Output out;
};

int cmd_density(const DensityArgs& a) {
    const Integer u(a.u);
    Json witnesses = Json::array();
    for (long i = 1; i <= a.n; ++i) witnesses.push_back(to_json(density_approximant(u, i, a.max_steps)));
    const Json config{{"u", a.u}, {"n", a.n}, {"max_steps", a.max_steps}, {"p", 2}, {"q", 3}};
    a.out.emit(wrap("density", config, std::move(witnesses)).dump(2));
    return 0;
}

struct PsiPrimeArgs {
    long p = 2, q = 3;
    std::string u = "1";
    std::string omega = "1";
    long n_max = 20;
    long max_steps = 1'000'000;
    Output out;
};

int cmd_psiprime(const PsiPrimeArgs& a) {
    const Params params(a.p, a.q);
    const auto series =
        psi_prime_omega(parse_rational(a.u), parse_rational(a.omega), a.n_max, params, a.max_steps);
    const Json config{{"p", a.p},        {"q", a.q},           {"u", a.u},
                      {"omega", a.omega}, {"n_max", a.n_max}, {"max_steps", a.max_steps}};
    a.out.emit(wrap("psiprime", config, to_json(series)).dump(2));
    return 0;
}

struct SeriesArgs {
    long p = 2;
    std::string op = "phi";
    std::string num = "1";
    std::string den = "1";
    std::string digits;
    std::string preperiod, period;
    long prec = 16;
    long max_steps = 1'000'000;
    Output out;
};

int cmd_series(const SeriesArgs& a) {
    const Json config{{"p", a.p},     {"op", a.op},       {"num", a.num},
                      {"den", a.den}, {"digits", a.digits}, {"prec", a.prec}};
    if (a.op == "phi-inv") {
        if (!a.period.empty()) {
            const auto f = phi_series_inverse_exact(a.p, parse_digit_list(a.preperiod),
                                                    parse_digit_list(a.period));
            a.out.emit(wrap("series", config, to_json(f)).dump(2));
            return 0;
        }
        const FpSeriesApprox in{a.p, parse_digit_list(a.digits)};
        a.out.emit(wrap("series", config, to_json(phi_series_inverse(in))).dump(2));
        return 0;
    }

    const auto f = FpRationalFunction::make(FpPoly::make(a.p, parse_digit_list(a.num)),
                                            FpPoly::make(a.p, parse_digit_list(a.den)));
    Json result;
    if (a.op == "smap") {
        result = to_json(smap(f));
    } else if (a.op == "orbit") {
        const auto orb = smap_orbit(f, a.max_steps);
        Json states = Json::array();
        for (const auto& s : orb.states) states.push_back(to_json(s));
        result = Json{{"preperiod", orb.preperiod}, {"period", orb.period}, {"states", states}};
    } else if (a.op == "phi") {
        result = to_json(phi_series(f, static_cast<std::size_t>(a.prec)));
    } else if (a.op == "expand") {
        result = to_json(series_expand(f, static_cast<std::size_t>(a.prec)));
    } else if (a.op == "height") {
        result = Json{{"height", series_height(f)}};
    } else {
        throw std::domain_error("series: unknown op '" + a.op + "'");
    }
    a.out.emit(wrap("series", config, result).dump(2));
    return 0;
}

void add_output_flags(CLI::App* cmd, Output& out, const std::string& default_format) {
    out.format = default_format;
    cmd->add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "plain"}));
    cmd->add_option("--output", out.path, "write the report to a file instead of stdout");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic for generalized Collatz maps on p-adic integers"};
    app.require_subcommand(1);

    OrbitArgs orbit_args;
    auto* c_orbit = app.add_subcommand("orbit", "iterate g_{p,q} with cycle detection");
    c_orbit->add_option("--p", orbit_args.p)->required();
    c_orbit->add_option("--q", orbit_args.q)->required();
    c_orbit->add_option("--u", orbit_args.u, "seed, as 'num' or 'num/den'")->required();
    c_orbit->add_option("--max-steps", orbit_args.max_steps);
    add_output_flags(c_orbit, orbit_args.out, "json");

    TableArgs table_args;
    auto* c_table = app.add_subcommand("table", "integer cycle search over a seed range");
    c_table->add_option("--pairs", table_args.pairs,
                        "'paper' for the bundled reference set, or P:Q[,P:Q...]");
    c_table->add_option("--range", table_args.range, "seed range A..B");
    c_table->add_option("--max-steps", table_args.max_steps);
    c_table->add_option("--escape-bits", table_args.escape_bits,
                        "treat |u| > 2^bits as suspected divergence");
    c_table->add_option("--threads", table_args.threads);
    add_output_flags(c_table, table_args.out, "csv");

    PhiArgs phi_args;
    auto* c_phi = app.add_subcommand("phi", "digit stream of the conjugating isometry");
    c_phi->add_option("--p", phi_args.p)->required();
    c_phi->add_option("--q", phi_args.q)->required();
    c_phi->add_option("--u", phi_args.u)->required();
    c_phi->add_option("--prec", phi_args.prec, "number of digits");
    c_phi->add_flag("--exact", phi_args.exact, "exact eventually-periodic stream");
    c_phi->add_flag("--qp", phi_args.qp, "allow seeds with p in the denominator");
    c_phi->add_option("--max-steps", phi_args.max_steps);
    add_output_flags(c_phi, phi_args.out, "json");

    PhiInvArgs phi_inv_args;
    auto* c_phi_inv = app.add_subcommand("phi-inv", "inverse isometry");
    c_phi_inv->add_option("--p", phi_inv_args.p)->required();
    c_phi_inv->add_option("--q", phi_inv_args.q)->required();
    c_phi_inv->add_option("--preperiod", phi_inv_args.preperiod, "comma-separated digits");
    c_phi_inv->add_option("--period", phi_inv_args.period, "comma-separated digits (exact mode)");
    c_phi_inv->add_option("--digits", phi_inv_args.digits, "truncated digits (approx mode)");
    add_output_flags(c_phi_inv, phi_inv_args.out, "json");

    PeriodicArgs periodic_args;
    auto* c_periodic = app.add_subcommand("periodic", "enumerate all p^k k-periodic points");
    c_periodic->add_option("--p", periodic_args.p)->required();
    c_periodic->add_option("--q", periodic_args.q)->required();
    c_periodic->add_option("--k", periodic_args.k)->required();
    add_output_flags(c_periodic, periodic_args.out, "json");

    CatalanArgs catalan_args;
    auto* c_catalan = app.add_subcommand("catalan", "solve q^ell - p^k = +-1 within bounds");
    c_catalan->add_option("--p", catalan_args.p)->required();
    c_catalan->add_option("--q", catalan_args.q)->required();
    c_catalan->add_option("--bound", catalan_args.bound);
    c_catalan->add_option("--k-max", catalan_args.k_max);
    c_catalan->add_option("--ell-max", catalan_args.ell_max);
    add_output_flags(c_catalan, catalan_args.out, "json");

    auto* c_stats = app.add_subcommand("stats", "height and drift diagnostics");
    c_stats->require_subcommand(1);

    MeanDriftArgs mean_args;
    auto* c_mean = c_stats->add_subcommand("mean-drift", "mean height drift over residue classes");
    c_mean->add_option("--p", mean_args.p)->required();
    c_mean->add_option("--q", mean_args.q)->required();
    c_mean->add_option("--m", mean_args.m)->required();
    c_mean->add_flag("--full", mean_args.full, "enumerate every class mod p^m");
    c_mean->add_option("--samples", mean_args.samples, "sampled class count");
    c_mean->add_option("--rng-seed", mean_args.rng_seed);
    c_mean->add_option("--threads", mean_args.threads);
    add_output_flags(c_mean, mean_args.out, "json");

    SeedStatArgs tranche_args;
    auto* c_tranche = c_stats->add_subcommand("tranches", "tranche composition of the digit stream");
    c_tranche->add_option("--p", tranche_args.p)->required();
    c_tranche->add_option("--q", tranche_args.q)->required();
    c_tranche->add_option("--u", tranche_args.u)->required();
    c_tranche->add_option("--m", tranche_args.m, "number of tranches")->required();
    c_tranche->add_option("--min-height", tranche_args.min_height);
    add_output_flags(c_tranche, tranche_args.out, "json");

    SeedStatArgs nz_args;
    auto* c_nz = c_stats->add_subcommand("nz-drift", "drift vs alpha_nz window");
    c_nz->add_option("--p", nz_args.p)->required();
    c_nz->add_option("--q", nz_args.q)->required();
    c_nz->add_option("--u", nz_args.u)->required();
    c_nz->add_option("--m", nz_args.m)->required();
    add_output_flags(c_nz, nz_args.out, "json");

    SeedStatArgs ratio_args;
    auto* c_ratios = c_stats->add_subcommand("ratios", "finite-horizon asymptotic ratios");
    c_ratios->add_option("--p", ratio_args.p)->required();
    c_ratios->add_option("--q", ratio_args.q)->required();
    c_ratios->add_option("--u", ratio_args.u)->required();
    c_ratios->add_option("--steps", ratio_args.steps);
    add_output_flags(c_ratios, ratio_args.out, "json");

    CandidateArgs cand_args;
    auto* c_cand = c_stats->add_subcommand("candidate", "q^(p-1) < p^p classifier");
    c_cand->add_option("--p", cand_args.p)->required();
    c_cand->add_option("--q", cand_args.q)->required();
    add_output_flags(c_cand, cand_args.out, "json");

    DensityArgs density_args;
    auto* c_density =
        app.add_subcommand("density", "integer approximants with periodic orbits, (p,q)=(2,3)");
    c_density->add_option("--u", density_args.u, "nonnegative integer seed")->required();
    c_density->add_option("--n", density_args.n, "witness depth")->required();
    c_density->add_option("--max-steps", density_args.max_steps);
    add_output_flags(c_density, density_args.out, "json");

    PsiPrimeArgs psi_args;
    auto* c_psi = app.add_subcommand("psiprime", "psi' exponents via discrete logarithms");
    c_psi->add_option("--u", psi_args.u)->required();
    c_psi->add_option("--omega", psi_args.omega)->required();
    c_psi->add_option("--n-max", psi_args.n_max)->required();
    c_psi->add_option("--p", psi_args.p);
    c_psi->add_option("--q", psi_args.q);
    c_psi->add_option("--max-steps", psi_args.max_steps);
    add_output_flags(c_psi, psi_args.out, "json");

    SeriesArgs series_args;
    auto* c_series = app.add_subcommand("series", "the F_p[[T]] analog");
    c_series->add_option("--p", series_args.p)->required();
    c_series->add_option("--op", series_args.op, "smap|orbit|phi|phi-inv|expand|height");
    c_series->add_option("--num", series_args.num, "numerator coefficients c0,c1,...");
    c_series->add_option("--den", series_args.den, "denominator coefficients");
    c_series->add_option("--digits", series_args.digits, "series coefficients (phi-inv approx)");
    c_series->add_option("--preperiod", series_args.preperiod);
    c_series->add_option("--period", series_args.period, "exact phi-inv of a periodic stream");
    c_series->add_option("--prec", series_args.prec);
    add_output_flags(c_series, series_args.out, "json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (app.got_subcommand(c_orbit)) return cmd_orbit(orbit_args);
        if (app.got_subcommand(c_table)) return cmd_table(table_args);
        if (app.got_subcommand(c_phi)) return cmd_phi(phi_args);
        if (app.got_subcommand(c_phi_inv)) return cmd_phi_inv(phi_inv_args);
        if (app.got_subcommand(c_periodic)) return cmd_periodic(periodic_args);
        if (app.got_subcommand(c_catalan)) return cmd_catalan(catalan_args);
        if (app.got_subcommand(c_stats)) {
            if (c_stats->got_subcommand(c_mean)) return cmd_mean_drift(mean_args);
            if (c_stats->got_subcommand(c_tranche)) return cmd_tranches(tranche_args);
            if (c_stats->got_subcommand(c_nz)) return cmd_nz_drift(nz_args);
            if (c_stats->got_subcommand(c_ratios)) return cmd_ratios(ratio_args);
            if (c_stats->got_subcommand(c_cand)) return cmd_candidate(cand_args);
        }
        if (app.got_subcommand(c_density)) return cmd_density(density_args);
        if (app.got_subcommand(c_psi)) return cmd_psiprime(psi_args);
        if (app.got_subcommand(c_series)) return cmd_series(series_args);
        std::cerr << "no command selected\n";
        return 64;
    } catch (const budget_error& e) {
        std::cerr << "inconclusive: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 65;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 65;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
