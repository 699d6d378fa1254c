#include "collatz/discrete_log.hpp"

#include <stdexcept>

namespace collatz {

Integer pow_mod(const Integer& base, const Integer& exp, const Integer& mod) {
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

Integer unit_group_order(long q, long n) {
    if (n < 1) throw std::domain_error("unit_group_order: n must be >= 1");
    return (q - 1) * pow_z(q, static_cast<unsigned long>(n - 1));
}

namespace {

long order_mod(long g, const Integer& modulus, const Integer& group_order) {
    // order of g divides group_order; walk multiples directly (small groups only)
    Integer cur = 1;
    const Integer base(g);
    for (long e = 1; Integer(e) <= group_order; ++e) {
        cur = cur * base % modulus;
        if (cur == 1) return e;
    }
    return -1;
}

} // namespace

bool generates_unit_group(long g, long q) {
    if (q < 3) return false;
    Integer z(q);
    if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0) return false;
    if (g % q == 0) return false;
    const Integer q1(q);
    const Integer q2 = q1 * q1;
    return order_mod(g, q1, Integer(q - 1)) == q - 1 &&
           order_mod(g, q2, Integer(q) * (q - 1)) == static_cast<long>(q) * (q - 1);
}

Integer discrete_log(const Integer& g, const Integer& target, long q, long n) {
    if (n < 1) throw std::domain_error("discrete_log: n must be >= 1");
    const Integer modulus = pow_z(q, static_cast<unsigned long>(n));
    Integer t = target % modulus;
    if (t < 0) t += modulus;
    if (mpz_fdiv_ui(t.get_mpz_t(), static_cast<unsigned long>(q)) == 0)
        throw std::domain_error("discrete_log: target is not a unit");

    const Integer qn1 = pow_z(q, static_cast<unsigned long>(n - 1));

    // x mod (q-1): raise to the q-power part, landing in the order-(q-1)
    // subgroup, then scan.
    const Integer ga = pow_mod(g, qn1, modulus);
    const Integer ta = pow_mod(t, qn1, modulus);
    long a = -1;
    {
        Integer cur = 1;
        for (long e = 0; e < q - 1; ++e) {
            if (cur == ta) {
                a = e;
                break;
            }
            cur = cur * ga % modulus;
        }
    }
    if (a < 0) throw std::domain_error("discrete_log: no solution in the (q-1)-part");

    // x mod q^(n-1): lift digit by digit inside the 1 + qZ subgroup.
    Integer b = 0;
    if (n >= 2) {
        const Integer gb = pow_mod(g, Integer(q - 1), modulus); // order q^(n-1)
        const Integer tb = pow_mod(t, Integer(q - 1), modulus);
        const Integer zeta = pow_mod(gb, pow_z(q, static_cast<unsigned long>(n - 2)), modulus);
        Integer gb_inv;
        if (mpz_invert(gb_inv.get_mpz_t(), gb.get_mpz_t(), modulus.get_mpz_t()) == 0)
            throw std::logic_error("discrete_log: base not invertible");

        Integer remaining = tb;   // tb * gb^{-(found digits)}
        Integer gb_inv_pow = gb_inv; // gb^{-q^j}
        Integer qj = 1;
        for (long j = 0; j <= n - 2; ++j) {
            const Integer c =
                pow_mod(remaining, pow_z(q, static_cast<unsigned long>(n - 2 - j)), modulus);
            long digit = -1;
            Integer cur = 1;
            for (long e = 0; e < q; ++e) {
                if (cur == c) {
                    digit = e;
                    break;
                }
                cur = cur * zeta % modulus;
            }
            if (digit < 0) throw std::domain_error("discrete_log: lifting failed");
            if (digit != 0) {
                b += digit * qj;
                remaining = remaining * pow_mod(gb_inv_pow, Integer(digit), modulus) % modulus;
            }
            qj *= q;
            gb_inv_pow = pow_mod(gb_inv_pow, Integer(q), modulus);
        }
    }

    // CRT: x = a (mod q-1), x = b (mod q^(n-1)).
    const Integer m1(q - 1);
    Integer inv_qn1;
    Integer qn1_mod = qn1 % m1;
    if (mpz_invert(inv_qn1.get_mpz_t(), qn1_mod.get_mpz_t(), m1.get_mpz_t()) == 0)
        throw std::logic_error("discrete_log: CRT inversion failed");
    Integer diff = (Integer(a) - b) % m1;
    if (diff < 0) diff += m1;
    Integer x = b + qn1 * (diff * inv_qn1 % m1);

    if (pow_mod(g, x, modulus) != t)
        throw std::domain_error("discrete_log: base does not generate the target");
    return x;
}

} // namespace collatz
