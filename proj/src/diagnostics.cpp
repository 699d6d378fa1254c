#include "collatz/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace collatz {

namespace {

long height_parts(const Integer& num_abs, const Integer& den, long p) {
    // minimal e with |u| < p^e equals H; search outward from e = 0
    if (num_abs >= den) {
        long e = 0;
        Integer t = den;
        while (num_abs >= t) {
            t *= p;
            ++e;
        }
        return e;
    }
    long f = 0;
    Integer av = num_abs;
    while (av * p < den) {
        av *= p;
        ++f;
    }
    return -f;
}

std::size_t mix64(std::size_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double ln_abs(const Rational& u) {
    long en = 0, ed = 0;
    const double mn = mpz_get_d_2exp(&en, u.get_num().get_mpz_t());
    const double md = mpz_get_d_2exp(&ed, u.get_den().get_mpz_t());
    return std::log(std::fabs(mn)) - std::log(md) + (en - ed) * std::log(2.0);
}

} // namespace

long height(const Rational& u, long p) {
    if (u == 0) throw std::domain_error("height: undefined for 0");
    return height_parts(abs(u.get_num()), u.get_den(), p);
}

Integer height_naive(const Rational& u) {
    Integer a = abs(u.get_num());
    return a > u.get_den() ? a : u.get_den();
}

std::optional<long> tranche_r(const Params& params) {
    if (params.q() < params.p()) return std::nullopt; // q^(r-1) < p^r for every r
    long r = 1;
    while (pow_z(params.q(), static_cast<unsigned long>(r)) <
           pow_z(params.p(), static_cast<unsigned long>(r + 1)))
        ++r;
    return r;
}

bool candidate_test(const Params& params) {
    return pow_z(params.q(), static_cast<unsigned long>(params.p() - 1)) <
           pow_z(params.p(), static_cast<unsigned long>(params.p()));
}

long alpha(long i, const Params& params) {
    if (i < 0) throw std::domain_error("alpha: index must be >= 0");
    if (i == 0) return -1; // no k has p^k < 1
    const Integer target = pow_z(params.q(), static_cast<unsigned long>(i));
    long k = 0;
    Integer ppow = 1;
    while (ppow * params.p() < target) {
        ppow *= params.p();
        ++k;
    }
    return k;
}

HeightProfile height_profile(const Rational& u, const Params& params, long n_steps) {
    if (u == 0) throw std::domain_error("height_profile: zero seed");
    HeightProfile out;
    out.seed = u;
    out.h0 = height(u, params.p());
    out.heights.reserve(static_cast<std::size_t>(n_steps) + 1);
    Rational v = u;
    for (long n = 0; n <= n_steps; ++n) {
        out.heights.push_back(height(v, params.p()));
        out.drifts.push_back(out.heights.back() - out.h0);
        if (n < n_steps) orbit_advance(v, params);
    }
    return out;
}

TrancheStats tranche_stats(const Rational& u, const Params& params, long m,
                           std::optional<long> min_height) {
    const auto r_opt = tranche_r(params);
    if (!r_opt) throw std::domain_error("tranche_stats: tranche length is unbounded for q < p");
    if (m < 1) throw std::domain_error("tranche_stats: m must be >= 1");
    if (u == 0) throw std::domain_error("tranche_stats: zero seed");
    const long r = *r_opt;

    TrancheStats out;
    out.r = r;
    out.m = m;
    out.ell.assign(static_cast<std::size_t>(r) + 1, 0);
    const long h0 = height(u, params.p());
    out.height_ok = h0 > min_height.value_or(m + r);

    Rational v = u;
    for (long block = 0; block < m; ++block) {
        int e = 0;
        for (long j = 0; j < r; ++j)
            if (orbit_advance(v, params) != 0) ++e;
        out.e_list.push_back(e);
        ++out.ell[static_cast<std::size_t>(e)];
        out.nonzero_total += e;
    }
    if (v == 0) throw std::domain_error("tranche_stats: orbit hit 0");
    out.drift = height(v, params.p()) - h0;
    return out;
}

NzDriftReport nz_drift_check(const Rational& u, const Params& params, long m) {
    if (m < 1) throw std::domain_error("nz_drift_check: m must be >= 1");
    if (u == 0) throw std::domain_error("nz_drift_check: zero seed");
    const long h0 = height(u, params.p());
    if (h0 <= m) throw std::domain_error("nz_drift_check: requires H(u) > m");

    NzDriftReport out;
    out.m = m;
    Rational v = u;
    for (long i = 0; i < m; ++i)
        if (orbit_advance(v, params) != 0) ++out.nz;
    if (out.nz == 0)
        throw std::domain_error("nz_drift_check: nz = 0 excluded (alpha_0 is a sentinel)");
    out.drift = height(v, params.p()) - h0;
    out.alpha_nz = alpha(out.nz, params);
    out.d = out.drift - (out.alpha_nz - m);
    out.within_two = out.d >= -2 && out.d <= 2;
    return out;
}

MeanDriftReport mean_drift(const Params& params, long m, const SampleSpec& sample,
                           unsigned threads) {
    if (m < 1) throw std::domain_error("mean_drift: m must be >= 1");
    const long p = params.p();
    const Integer pm = pow_z(p, static_cast<unsigned long>(m));

    MeanDriftReport rep;
    rep.p = p;
    rep.q = params.q();
    rep.m = m;
    rep.rng_seed = sample.rng_seed;
    rep.full_enumeration = sample.full;

    std::vector<Integer> classes;
    unsigned long long total = 0;
    if (sample.full) {
        if (pm > Integer(1L << 22))
            throw std::domain_error("mean_drift: p^m too large for full enumeration, sample instead");
        total = pm.get_ui();
    } else {
        if (sample.count == 0) throw std::domain_error("mean_drift: sample count must be positive");
        gmp_randclass rng(gmp_randinit_mt);
        rng.seed(static_cast<unsigned long>(sample.rng_seed));
        classes.reserve(sample.count);
        for (unsigned long long i = 0; i < sample.count; ++i) classes.push_back(rng.get_z_range(pm));
        total = sample.count;
    }
    rep.sample_size = total;

    // K is keyed off (seed, class) so results do not depend on threading.
    auto representative = [&](const Integer& cls) {
        const std::size_t h =
            mix64(mpz_fdiv_ui(cls.get_mpz_t(), 0x1fffffffffffffffUL) ^ mix64(sample.rng_seed));
        const Integer k_offset = Integer(h) % pm;
        return cls + pm * (pm + k_offset);
    };

    const unsigned nthreads = std::max(1u, threads);
    std::vector<long long> partial(nthreads, 0);
    auto worker = [&](unsigned t) {
        long long local = 0;
        for (unsigned long long i = t; i < total; i += nthreads) {
            const Integer cls = sample.full ? Integer(static_cast<unsigned long>(i))
                                            : classes[static_cast<std::size_t>(i)];
            Rational v(representative(cls));
            const long h0 = height(v, p);
            for (long s = 0; s < m; ++s) orbit_advance(v, params);
            local += height(v, p) - h0;
        }
        partial[t] = local;
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    long long sum = 0;
    for (long long x : partial) sum += x;

    rep.empirical_mean =
        make_rational(Integer(static_cast<long>(sum)), Integer(static_cast<unsigned long>(total)));
    rep.empirical_mean_d = rep.empirical_mean.get_d();
    const double mid =
        m * ((p - 1.0) / p * std::log(static_cast<double>(params.q())) / std::log(static_cast<double>(p)) - 1.0);
    rep.lower_bound = mid - 2.0;
    rep.upper_bound = mid + 2.0;
    rep.within_bounds =
        rep.empirical_mean_d >= rep.lower_bound && rep.empirical_mean_d <= rep.upper_bound;
    return rep;
}

RatioSeries asymptotic_ratios(const Rational& u, const Params& params, long n_steps) {
    if (n_steps < 1) throw std::domain_error("asymptotic_ratios: need at least one step");
    const OrbitRecord rec = orbit(u, params, n_steps);
    RatioSeries out;
    out.periodic = rec.cycle.has_value();
    out.cycle = rec.cycle;

    const double ln_p = std::log(static_cast<double>(params.p()));
    const double ln_q = std::log(static_cast<double>(params.q()));

    std::vector<long> psi;
    for (std::size_t i = 0; i < rec.digits.size(); ++i)
        if (rec.digits[i] != 0) psi.push_back(static_cast<long>(i));

    const long horizon = static_cast<long>(rec.states.size()) - 1;
    for (long n = 1; n <= horizon; ++n) {
        RatioPoint pt;
        pt.n = n;
        pt.r_over_n = static_cast<double>(rec.r[static_cast<std::size_t>(n)]) / n;
        if (n < static_cast<long>(psi.size()))
            pt.psi_over_n = static_cast<double>(psi[static_cast<std::size_t>(n)]) / n;
        const Rational& un = rec.states[static_cast<std::size_t>(n)];
        if (un != 0) pt.h_over_n = static_cast<double>(height(un, params.p())) / n;
        if (n + 1 <= horizon) {
            const Rational& next = rec.states[static_cast<std::size_t>(n) + 1];
            if (next != 0) {
                const double rn = static_cast<double>(rec.r[static_cast<std::size_t>(n)]);
                pt.growth_ratio = std::exp(ln_p + ln_abs(next) / n - rn / n * ln_q);
            }
        }
        out.points.push_back(pt);
    }
    return out;
}

} // namespace collatz
