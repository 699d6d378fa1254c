#include "collatz/dynamics.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <utility>

namespace collatz {

namespace {

long mod_inverse(long a, long p) {
    long t = 0, new_t = 1;
    long r = p, new_r = a;
    while (new_r != 0) {
        const long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return t < 0 ? t + p : t;
}

// Integer fast path of one g step; v must be an integer state.
void g_step_integer(Integer& v, long p, long q) {
    const unsigned long up = static_cast<unsigned long>(p);
    const unsigned long r = mpz_fdiv_ui(v.get_mpz_t(), up);
    if (r == 0) {
        mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), up);
        return;
    }
    const unsigned long qr = (static_cast<unsigned long>(q % p) * r) % up;
    const unsigned long d = (up - qr) % up;
    v *= q;
    v += d;
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), up);
}

} // namespace

Digit orbit_advance(Rational& u, const Params& params) {
    const long p = params.p();
    const long q = params.q();
    const unsigned long up = static_cast<unsigned long>(p);

    const unsigned long den_mod = mpz_fdiv_ui(u.get_den().get_mpz_t(), up);
    if (den_mod == 0) throw std::domain_error("g step: denominator divisible by p");
    const unsigned long num_mod = mpz_fdiv_ui(u.get_num().get_mpz_t(), up);

    if (num_mod == 0) { // p | u in Z_p
        u /= p;
        return 0;
    }
    const unsigned long inv_den = static_cast<unsigned long>(mod_inverse(static_cast<long>(den_mod), p));
    const unsigned long qu = (((static_cast<unsigned long>(q % p) * num_mod) % up) * inv_den) % up;
    const Digit d = static_cast<Digit>((up - qu) % up); // eps0(-q u), nonzero here
    u *= q;
    u += static_cast<unsigned long>(d);
    u /= p;
    return d;
}

Rational step(const Rational& u, const Params& params) {
    Rational v = u;
    orbit_advance(v, params);
    return v;
}

OrbitRecord orbit(const Rational& u, const Params& params, long max_steps) {
    if (max_steps < 1) throw std::domain_error("orbit: max_steps must be >= 1");
    const long p = params.p();
    const long q = params.q();

    OrbitRecord rec{.params = params};
    std::unordered_map<Rational, long, RationalHash> index;
    rec.states.push_back(u);
    index.emplace(u, 0);

    Rational cur = u;
    for (long n = 0;; ++n) {
        Rational next = cur;
        const Digit d = orbit_advance(next, params);
        rec.digits.push_back(d);
        rec.r.push_back((rec.r.empty() ? 0 : rec.r.back()) + (d != 0 ? 1 : 0));

        // Prop-8 recurrence holds by construction; recheck it exactly.
        Rational lhs = next;
        lhs *= p;
        Rational rhs = cur;
        if (d != 0) rhs *= q;
        rhs += static_cast<unsigned long>(d);
        if (lhs != rhs) throw std::logic_error("orbit: recurrence violated");

        auto it = index.find(next);
        if (it != index.end()) {
            rec.states.push_back(next);
            rec.digits.push_back(rec.digits[static_cast<std::size_t>(it->second)]);
            rec.r.push_back(rec.r.back() + (rec.digits.back() != 0 ? 1 : 0));
            rec.cycle = CycleInfo{it->second, n + 1 - it->second};
            return rec;
        }
        if (n + 1 >= max_steps) {
            rec.states.push_back(next);
            rec.truncated = true;
            // keep digits/r aligned with states
            Rational probe = next;
            const Digit dl = orbit_advance(probe, params);
            rec.digits.push_back(dl);
            rec.r.push_back(rec.r.back() + (dl != 0 ? 1 : 0));
            return rec;
        }
        rec.states.push_back(next);
        index.emplace(next, n + 1);
        cur = std::move(next);
    }
}

PeriodicityVerdict is_ultimately_periodic(const Rational& u, const Params& params, long max_steps,
                                          CycleDetector detector) {
    if (max_steps < 1) throw std::domain_error("is_ultimately_periodic: max_steps must be >= 1");
    if (detector == CycleDetector::HashSet) {
        std::unordered_map<Rational, long, RationalHash> index;
        Rational cur = u;
        for (long n = 0; n <= max_steps; ++n) {
            auto [it, inserted] = index.emplace(cur, n);
            if (!inserted)
                return PeriodicityVerdict{true, false, it->second, n - it->second};
            if (n == max_steps) break;
            orbit_advance(cur, params);
        }
        return PeriodicityVerdict{false, true, 0, 0};
    }

    // Brent: constant memory; may walk up to ~3x the hash-detector budget.
    Rational tortoise = u;
    Rational hare = step(u, params);
    long power = 1, lambda = 1;
    long walked = 1;
    const long budget = 3 * max_steps;
    while (tortoise != hare) {
        if (power == lambda) {
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        orbit_advance(hare, params);
        ++lambda;
        if (++walked > budget) return PeriodicityVerdict{false, true, 0, 0};
    }
    Rational a = u, b = u;
    for (long i = 0; i < lambda; ++i) orbit_advance(b, params);
    long mu = 0;
    while (a != b) {
        orbit_advance(a, params);
        orbit_advance(b, params);
        ++mu;
        if (mu > budget) return PeriodicityVerdict{false, true, 0, 0};
    }
    return PeriodicityVerdict{true, false, mu, lambda};
}

Integer theorem18_step_bound(const Rational& u, const Params& params) {
    const long p = params.p();
    const long q = params.q();
    if (q >= p) throw std::domain_error("theorem18_step_bound: requires q < p");
    // Numerators stay within max(|num|, ceil(den (p-1)/(p-q))), denominators
    // divide den(u): pigeonhole on the state count.
    const Integer den = u.get_den();
    Integer cap = den * (p - 1);
    mpz_cdiv_q_ui(cap.get_mpz_t(), cap.get_mpz_t(), static_cast<unsigned long>(p - q));
    Integer bound_num = abs(u.get_num());
    if (bound_num < cap) bound_num = cap;
    return (2 * bound_num + 1) * den + 1;
}

std::vector<PeriodicSpec> periodic_specs(long k, const Params& params) {
    if (k < 1) throw std::domain_error("periodic_specs: k must be >= 1");
    const long p = params.p();
    std::vector<PeriodicSpec> out;
    for (long ell = 0; ell <= k; ++ell) {
        // psi(0..ell-1) runs over ell-subsets of {0..k-1}, ascending.
        std::vector<long> comb(static_cast<std::size_t>(ell));
        for (long i = 0; i < ell; ++i) comb[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::vector<Digit> digits(static_cast<std::size_t>(ell), 1);
            while (true) {
                PeriodicSpec spec;
                spec.k = k;
                spec.ell = ell;
                spec.a = digits;
                spec.psi = comb;
                spec.psi.push_back(k);
                out.push_back(std::move(spec));
                // next digit tuple in {1..p-1}^ell
                long pos = ell - 1;
                while (pos >= 0) {
                    auto& d = digits[static_cast<std::size_t>(pos)];
                    if (d + 1 < static_cast<Digit>(p)) {
                        ++d;
                        break;
                    }
                    d = 1;
                    --pos;
                }
                if (pos < 0) break;
            }
            // next combination
            long i = ell - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] == k - ell + i) --i;
            if (i < 0) break;
            ++comb[static_cast<std::size_t>(i)];
            for (long j = i + 1; j < ell; ++j)
                comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
        if (ell == 0) continue; // single empty spec already emitted
    }
    return out;
}

Rational periodic_point(const PeriodicSpec& spec, const Params& params) {
    const long p = params.p();
    const long q = params.q();
    const Integer qk = pow_z(q, static_cast<unsigned long>(spec.ell));
    const Integer pk = pow_z(p, static_cast<unsigned long>(spec.k));
    if (qk == pk) throw std::logic_error("periodic_point: q^ell == p^k contradicts gcd(p,q)=1");
    Integer num = 0;
    for (long i = 0; i < spec.ell; ++i) {
        num += spec.a[static_cast<std::size_t>(i)] *
               pow_z(p, static_cast<unsigned long>(spec.psi[static_cast<std::size_t>(i)])) *
               pow_z(q, static_cast<unsigned long>(spec.ell - i - 1));
    }
    return make_rational(-num, qk - pk);
}

std::vector<Rational> enumerate_periodic(long k, const Params& params) {
    auto specs = periodic_specs(k, params);
    std::vector<Rational> out;
    out.reserve(specs.size());
    for (const auto& spec : specs) {
        Rational u = periodic_point(spec, params);
        Rational v = u;
        for (long i = 0; i < k; ++i) orbit_advance(v, params);
        if (v != u) throw std::logic_error("enumerate_periodic: candidate failed g^k(u) = u");
        out.push_back(std::move(u));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CatalanSolutions catalan_search(const Params& params, long k_max, long ell_max) {
    if (k_max < 1 || ell_max < 1) throw std::domain_error("catalan_search: bounds must be >= 1");
    CatalanSolutions out;
    Integer qe = 1; // q^ell
    for (long ell = 0; ell <= ell_max; ++ell) {
        Integer pk = static_cast<long>(params.p()); // p^k starting at k = 1
        for (long k = 1; k <= k_max; ++k) {
            const Integer diff = qe - pk;
            if (diff == -1) out.minus_one.emplace_back(k, ell);
            if (diff == 1) out.plus_one.emplace_back(k, ell);
            pk *= params.p();
        }
        qe *= params.q();
    }
    return out;
}

namespace {

// Rotation starting at the member of smallest |value|, negative preferred on
// magnitude ties.
std::vector<Integer> canonical_rotation(const std::vector<Integer>& members) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < members.size(); ++i) {
        const Integer ai = abs(members[i]);
        const Integer ab = abs(members[best]);
        if (ai < ab || (ai == ab && members[i] < members[best])) best = i;
    }
    std::vector<Integer> rotated;
    rotated.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
        rotated.push_back(members[(best + i) % members.size()]);
    return rotated;
}

struct ShardResult {
    std::map<std::vector<Integer>, bool> cycles; // canonical members -> seen
    std::vector<TruncatedSeed> truncated;
};

void search_shard(const Params& params, const Integer& lo, const Integer& hi,
                  const CycleSearchOptions& opt, ShardResult& out) {
    const long p = params.p();
    const long q = params.q();
    std::unordered_map<long long, int> memo; // classified integer -> local cycle id
    std::vector<std::vector<Integer>> local_cycles;

    auto memo_key = [&](const Integer& v) -> std::optional<long long> {
        if (!v.fits_slong_p()) return std::nullopt;
        const long long x = v.get_si();
        if (x > opt.memo_abs_cap || x < -opt.memo_abs_cap) return std::nullopt;
        return x;
    };

    std::vector<Integer> traj;
    std::unordered_map<Integer, std::size_t, IntegerHash> index;
    for (Integer seed = lo; seed <= hi; ++seed) {
        traj.clear();
        index.clear();
        Integer v = seed;
        long steps = 0;
        int cycle_id = -1;
        bool resolved = false;
        while (true) {
            if (auto key = memo_key(v)) {
                auto it = memo.find(*key);
                if (it != memo.end()) {
                    cycle_id = it->second;
                    resolved = true;
                    break;
                }
            }
            auto found = index.find(v);
            if (found != index.end()) {
                std::vector<Integer> members(traj.begin() + static_cast<long>(found->second),
                                             traj.end());
                auto canon = canonical_rotation(members);
                // re-verify closure through the rational step
                for (std::size_t i = 0; i < canon.size(); ++i) {
                    Rational m(canon[i]);
                    if (step(m, params) != Rational(canon[(i + 1) % canon.size()]))
                        throw std::logic_error("integer_cycle_search: cycle failed verification");
                }
                cycle_id = static_cast<int>(local_cycles.size());
                local_cycles.push_back(canon);
                out.cycles.emplace(std::move(canon), true);
                resolved = true;
                break;
            }
            if (steps >= opt.max_steps) {
                out.truncated.push_back({seed, false});
                break;
            }
            if (mpz_sizeinbase(v.get_mpz_t(), 2) > opt.escape_bits) {
                out.truncated.push_back({seed, true});
                break;
            }
            index.emplace(v, traj.size());
            traj.push_back(v);
            g_step_integer(v, p, q);
            ++steps;
        }
        if (resolved) {
            for (const auto& t : traj)
                if (auto key = memo_key(t)) memo.emplace(*key, cycle_id);
            if (auto key = memo_key(v)) memo.emplace(*key, cycle_id);
        }
    }
}

} // namespace

CycleSearchResult integer_cycle_search(const Params& params, const Integer& u_min,
                                       const Integer& u_max, const CycleSearchOptions& options) {
    if (u_min > u_max) throw std::domain_error("integer_cycle_search: empty seed range");
    const unsigned threads = std::max(1u, options.threads);
    const Integer span = u_max - u_min + 1;

    std::vector<ShardResult> results(threads);
    std::vector<std::thread> pool;
    Integer chunk = span / static_cast<long>(threads);
    Integer rem = span % static_cast<long>(threads);
    Integer lo = u_min;
    for (unsigned t = 0; t < threads; ++t) {
        Integer size = chunk + (Integer(t) < rem ? 1 : 0);
        if (size == 0) break;
        Integer hi = lo + size - 1;
        pool.emplace_back(
            [&params, &options, lo, hi, &results, t] { search_shard(params, lo, hi, options, results[t]); });
        lo = hi + 1;
    }
    for (auto& th : pool) th.join();

    std::map<std::vector<Integer>, bool> merged;
    CycleSearchResult out;
    for (auto& r : results) {
        for (auto& [members, flag] : r.cycles) merged.emplace(members, flag);
        out.truncated.insert(out.truncated.end(), r.truncated.begin(), r.truncated.end());
    }
    for (auto& [members, flag] : merged) {
        Cycle c{.params = params};
        c.members.reserve(members.size());
        for (const auto& m : members) c.members.emplace_back(m);
        out.cycles.push_back(std::move(c));
    }
    std::sort(out.cycles.begin(), out.cycles.end(),
              [](const Cycle& a, const Cycle& b) { return a.members.front() < b.members.front(); });
    std::sort(out.truncated.begin(), out.truncated.end(),
              [](const TruncatedSeed& a, const TruncatedSeed& b) { return a.seed < b.seed; });
    return out;
}

CycleIdentity cycle_identity(const Cycle& cycle) {
    if (cycle.members.empty()) throw std::domain_error("cycle_identity: empty cycle");
    const long p = cycle.params.p();
    const long q = cycle.params.q();
    const long k = static_cast<long>(cycle.members.size());

    std::vector<Digit> block;
    block.reserve(cycle.members.size());
    for (const auto& m : cycle.members) {
        Rational v = m;
        block.push_back(orbit_advance(v, cycle.params));
    }
    std::vector<long> psi;
    for (long i = 0; i < k; ++i)
        if (block[static_cast<std::size_t>(i)] != 0) psi.push_back(i);
    const long ell = static_cast<long>(psi.size());

    CycleIdentity id;
    id.numerator = 0;
    for (long j = 0; j < ell; ++j) {
        id.numerator += block[static_cast<std::size_t>(psi[static_cast<std::size_t>(j)])] *
                        pow_z(p, static_cast<unsigned long>(psi[static_cast<std::size_t>(j)])) *
                        pow_z(q, static_cast<unsigned long>(ell - 1 - j));
    }
    id.denominator = pow_z(q, static_cast<unsigned long>(ell)) - pow_z(p, static_cast<unsigned long>(k));

    const Rational rep = cycle.members.front();
    if (rep.get_den() != 1)
        throw std::domain_error("cycle_identity: representative is not an integer");
    id.quotient = -rep.get_num();
    if (id.quotient * id.denominator != id.numerator)
        throw std::logic_error("cycle_identity: divisibility identity failed");
    return id;
}

} // namespace collatz
