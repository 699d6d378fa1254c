#pragma once

#include "collatz/rational.hpp"

#include <random>

namespace collatz::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

/// Random reduced fraction with denominator coprime to p.
inline Rational random_padic_rational(std::mt19937_64& rng, long p, long num_bound = 1'000'000,
                                      long den_bound = 1'000) {
    std::uniform_int_distribution<long> num_dist(-num_bound, num_bound);
    std::uniform_int_distribution<long> den_dist(1, den_bound);
    while (true) {
        const long den = den_dist(rng);
        if (den % p == 0) continue;
        return make_rational(Integer(num_dist(rng)), Integer(den));
    }
}

inline Integer random_integer(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    return Integer(dist(rng));
}

/// Independent digit oracle: the first n digits of u are the base-p digits
/// of num * den^{-1} mod p^n.
inline std::vector<Digit> digits_by_modular_inverse(const Rational& u, long p, std::size_t n) {
    const Integer pn = pow_z(p, static_cast<unsigned long>(n));
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), u.get_den().get_mpz_t(), pn.get_mpz_t()) == 0)
        throw std::domain_error("digit oracle: denominator not invertible");
    Integer x = u.get_num() * inv % pn;
    if (x < 0) x += pn;
    std::vector<Digit> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(static_cast<Digit>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(p))));
        mpz_fdiv_q_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
    }
    return out;
}

/// Multiplicative order of p modulo m (m > 1 coprime to p), by iteration.
inline long multiplicative_order(long p, const Integer& m) {
    Integer cur = p % m;
    if (cur < 0) cur += m;
    long ord = 1;
    while (cur != 1) {
        cur = cur * p % m;
        ++ord;
        if (ord > 10'000'000) throw std::runtime_error("order too large");
    }
    return ord;
}

} // namespace collatz::testing
