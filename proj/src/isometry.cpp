#include "collatz/isometry.hpp"

#include "collatz/discrete_log.hpp"

#include <stdexcept>

namespace collatz {

PadicApprox phi(const Rational& u, const Params& params, std::size_t count) {
    PadicApprox out{params.p(), 0, {}};
    out.digits.reserve(count);
    Rational v = u;
    for (std::size_t i = 0; i < count; ++i) out.digits.push_back(orbit_advance(v, params));
    return out;
}

std::optional<HenselDigits> phi_exact(const Rational& u, const Params& params, long max_steps) {
    const OrbitRecord rec = orbit(u, params, max_steps);
    if (!rec.cycle) return std::nullopt;
    const auto pre_len = static_cast<std::size_t>(rec.cycle->preperiod);
    const auto per_len = static_cast<std::size_t>(rec.cycle->period);
    std::vector<Digit> pre(rec.digits.begin(), rec.digits.begin() + static_cast<long>(pre_len));
    std::vector<Digit> per(rec.digits.begin() + static_cast<long>(pre_len),
                           rec.digits.begin() + static_cast<long>(pre_len + per_len));
    return HenselDigits::make(params.p(), std::move(pre), std::move(per));
}

Rational phi_inverse_exact(const HenselDigits& v, const Params& params) {
    if (v.p != params.p()) throw std::domain_error("phi_inverse_exact: digit base mismatch");
    const long p = params.p();
    const long q = params.q();
    const std::size_t s = v.preperiod.size();
    const std::size_t t = v.period.size();

    Rational acc = 0;
    long r = 0;
    Integer ppow = 1;
    for (std::size_t i = 0; i < s; ++i) {
        const Digit d = v.preperiod[i];
        if (d != 0) {
            ++r;
            acc += make_rational(d * ppow, pow_z(q, static_cast<unsigned long>(r)));
        }
        ppow *= p;
    }
    const long r_pre = r;

    long per_nonzero = 0;
    for (Digit d : v.period)
        if (d != 0) ++per_nonzero;

    Rational tail = 0;
    long rho = 0;
    for (std::size_t j = 0; j < t; ++j) {
        const Digit d = v.period[j];
        if (d != 0) {
            ++rho;
            tail += make_rational(d * ppow, pow_z(q, static_cast<unsigned long>(r_pre + rho)));
        }
        ppow *= p;
    }
    // Sum of the periodic tail: one period times q^R / (q^R - p^t).
    const Integer qR = pow_z(q, static_cast<unsigned long>(per_nonzero));
    const Rational factor = make_rational(qR, qR - pow_z(p, static_cast<unsigned long>(t)));
    return -(acc + factor * tail);
}

PadicApprox phi_inverse_approx(const PadicApprox& v, const Params& params) {
    if (v.p != params.p()) throw std::domain_error("phi_inverse_approx: digit base mismatch");
    const long p = params.p();
    const long q = params.q();
    const std::size_t n = v.digits.size();

    Rational acc = 0;
    long r = 0;
    Integer ppow = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const Digit d = v.digits[i];
        if (d != 0) {
            ++r;
            acc += make_rational(d * ppow, pow_z(q, static_cast<unsigned long>(r)));
        }
        ppow *= p;
    }
    acc = -acc;

    // Reduce the exact partial sum mod p^N and read off digits.
    const Integer pn = pow_z(p, static_cast<unsigned long>(n));
    Integer den_inv;
    if (mpz_invert(den_inv.get_mpz_t(), acc.get_den().get_mpz_t(), pn.get_mpz_t()) == 0)
        throw std::logic_error("phi_inverse_approx: denominator not invertible mod p^N");
    Integer x = acc.get_num() * den_inv % pn;
    if (x < 0) x += pn;

    PadicApprox out{p, v.valuation_offset, {}};
    out.digits.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.digits.push_back(
            static_cast<Digit>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(p))));
        mpz_fdiv_q_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
    }
    return out;
}

PadicApprox phi_qp(const Rational& u, const Params& params, std::size_t count) {
    if (u == 0) return PadicApprox{params.p(), 0, std::vector<Digit>(count, 0)};
    const long m = *padic_valuation(u, params.p());
    Rational unit = u;
    if (m > 0)
        unit /= Rational(pow_z(params.p(), static_cast<unsigned long>(m)));
    else if (m < 0)
        unit *= Rational(pow_z(params.p(), static_cast<unsigned long>(-m)));
    PadicApprox out = phi(unit, params, count);
    out.valuation_offset = m;
    return out;
}

bool conjugation_check(const Rational& u, const Params& params, std::size_t count) {
    if (count < 1) throw std::domain_error("conjugation_check: precision must be >= 1");
    const PadicApprox lhs = phi(step(u, params), params, count - 1);
    const PadicApprox rhs = delta_shift(phi(u, params, count));
    return lhs == rhs;
}

PsiFunction materialize_psi(const Rational& u, const Params& params, long count, long max_steps) {
    if (count < 0) throw std::domain_error("materialize_psi: count must be >= 0");
    PsiFunction out;
    const OrbitRecord rec = orbit(u, params, max_steps);
    if (!rec.cycle) {
        // only the digits actually seen
        const std::size_t horizon = rec.digits.size() - 1; // last digit belongs to the truncated state
        for (std::size_t i = 0; i < horizon && static_cast<long>(out.values.size()) < count; ++i) {
            if (rec.digits[i] != 0) {
                out.values.push_back(static_cast<long>(i));
                out.digits.push_back(rec.digits[i]);
            }
        }
        return out;
    }

    const long s = rec.cycle->preperiod;
    const long t = rec.cycle->period;
    for (long i = 0; i < s && static_cast<long>(out.values.size()) < count; ++i) {
        if (rec.digits[static_cast<std::size_t>(i)] != 0) {
            out.values.push_back(i);
            out.digits.push_back(rec.digits[static_cast<std::size_t>(i)]);
        }
    }
    std::vector<std::pair<long, Digit>> period_hits;
    for (long j = 0; j < t; ++j) {
        const Digit d = rec.digits[static_cast<std::size_t>(s + j)];
        if (d != 0) period_hits.emplace_back(j, d);
    }
    if (period_hits.empty()) {
        out.exhausted = true;
        return out;
    }
    for (long block = 0; static_cast<long>(out.values.size()) < count; ++block) {
        for (const auto& [off, d] : period_hits) {
            if (static_cast<long>(out.values.size()) >= count) break;
            out.values.push_back(s + block * t + off);
            out.digits.push_back(d);
        }
    }
    return out;
}

DensityWitness density_approximant(const Integer& u, long n, long max_steps) {
    if (u < 0) throw std::domain_error("density_approximant: seed must be nonnegative");
    if (n < 1) throw std::domain_error("density_approximant: n must be >= 1");
    const Params params(2, 3);

    DensityWitness w;
    w.n = n;
    if (u == 0) {
        w.psi_prime_n = 0;
        w.v_n = 0;
        w.w_n = 0;
        w.distance_exponent = std::nullopt;
        w.bound_achieved = true;
        w.orbit_periodic = true;
        return w;
    }

    const PsiFunction psi = materialize_psi(Rational(u), params, n + 1, max_steps);
    if (static_cast<long>(psi.values.size()) < n)
        throw budget_error("density_approximant: psi not materialized within budget");
    w.psi_n_minus_1 = psi.values[static_cast<std::size_t>(n - 1)];
    if (static_cast<long>(psi.values.size()) > n) w.psi_n = psi.values[static_cast<std::size_t>(n)];

    // S_n = sum_{i<n} 2^{psi(i)} 3^{n-1-i}
    Integer s_n = 0;
    for (long i = 0; i < n; ++i) {
        s_n += pow_z(2, static_cast<unsigned long>(psi.values[static_cast<std::size_t>(i)])) *
               pow_z(3, static_cast<unsigned long>(n - 1 - i));
    }

    const Integer modulus = pow_z(3, static_cast<unsigned long>(n));
    const Integer order = unit_group_order(3, n);
    Integer k = discrete_log(Integer(2), s_n % modulus, 3, n);
    while (k <= w.psi_n_minus_1) k += order;
    w.psi_prime_n = k;

    if (!k.fits_ulong_p() || k.get_ui() > 100'000'000UL)
        throw budget_error("density_approximant: exponent too large to materialize");
    Integer two_k;
    mpz_pow_ui(two_k.get_mpz_t(), Integer(2).get_mpz_t(), k.get_ui());
    Integer diff = two_k - s_n;
    if (diff % modulus != 0) throw std::logic_error("density_approximant: 3^n does not divide 2^k - S_n");
    w.w_n = diff / modulus;

    // v_n = sum_{i<n} 2^{psi(i)} + 2^k/(1-4)
    Integer head = 0;
    for (long i = 0; i < n; ++i)
        head += pow_z(2, static_cast<unsigned long>(psi.values[static_cast<std::size_t>(i)]));
    w.v_n = Rational(head) - make_rational(two_k, Integer(3));

    if (w.w_n == u) {
        w.distance_exponent = std::nullopt;
        w.bound_achieved = true;
    } else {
        const auto e = padic_valuation(Rational(u) - Rational(w.w_n), 2);
        w.distance_exponent = *e;
        if (*e <= w.psi_n_minus_1)
            throw std::logic_error("density_approximant: approximant too far from the seed");
        if (w.psi_n) w.bound_achieved = *e >= *w.psi_n;
    }

    w.orbit_periodic =
        is_ultimately_periodic(Rational(w.w_n), params, max_steps, CycleDetector::Brent).periodic;
    return w;
}

PsiPrimeSeries psi_prime_omega(const Rational& u, const Rational& omega, long n_max,
                               const Params& params, long max_steps) {
    const long p = params.p();
    const long q = params.q();
    if (n_max < 1) throw std::domain_error("psi_prime_omega: n_max must be >= 1");
    if (!generates_unit_group(p, q))
        throw std::domain_error("psi_prime_omega: p must generate the units mod q^n");
    if (mpz_fdiv_ui(omega.get_num().get_mpz_t(), static_cast<unsigned long>(q)) == 0 ||
        mpz_fdiv_ui(omega.get_den().get_mpz_t(), static_cast<unsigned long>(q)) == 0)
        throw std::domain_error("psi_prime_omega: omega must be a q-adic unit");

    const PsiFunction psi = materialize_psi(u, params, n_max, max_steps);
    if (static_cast<long>(psi.values.size()) < n_max)
        throw budget_error("psi_prime_omega: psi not materialized within budget");

    const Integer big_mod = pow_z(q, static_cast<unsigned long>(n_max));

    PsiPrimeSeries out;
    out.values.reserve(static_cast<std::size_t>(n_max));
    Integer s = 0; // S_n mod q^n_max, extended incrementally
    for (long n = 1; n <= n_max; ++n) {
        const long idx = n - 1;
        const Integer term =
            Integer(psi.digits[static_cast<std::size_t>(idx)]) *
            pow_mod(Integer(p), Integer(psi.values[static_cast<std::size_t>(idx)]), big_mod);
        s = (s * q + term) % big_mod;

        const Integer modulus = pow_z(q, static_cast<unsigned long>(n));
        // omega as a residue: num * den^{-1}
        Integer den_inv;
        Integer den_mod = omega.get_den() % modulus;
        if (den_mod < 0) den_mod += modulus;
        if (mpz_invert(den_inv.get_mpz_t(), den_mod.get_mpz_t(), modulus.get_mpz_t()) == 0)
            throw std::domain_error("psi_prime_omega: omega denominator not invertible");
        Integer num_mod = omega.get_num() % modulus;
        if (num_mod < 0) num_mod += modulus;
        const Integer omega_mod = num_mod * den_inv % modulus;
        Integer omega_inv;
        if (mpz_invert(omega_inv.get_mpz_t(), omega_mod.get_mpz_t(), modulus.get_mpz_t()) == 0)
            throw std::domain_error("psi_prime_omega: omega not invertible mod q^n");

        const Integer target = s % modulus * omega_inv % modulus;
        out.values.push_back(discrete_log(Integer(p), target, q, n));
        out.ratios.push_back(out.values.back().get_d() / static_cast<double>(n));
    }

    double best = out.ratios.back();
    for (long n = std::max(1L, n_max / 2); n <= n_max; ++n)
        best = std::min(best, out.ratios[static_cast<std::size_t>(n - 1)]);
    out.liminf_estimate = best;
    return out;
}

} // namespace collatz
