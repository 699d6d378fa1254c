#include "collatz/params.hpp"

#include "collatz/rational.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace collatz {

namespace {

constexpr long kMaxBase = 2147483647L; // digits must fit Digit

bool is_prime(long n) {
    if (n < 2) return false;
    Integer z(n);
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

} // namespace

Params::Params(long p, long q) : p_(p), q_(q) {
    if (p < 2 || p > kMaxBase) throw std::domain_error("Params: p out of range");
    if (!is_prime(p)) throw std::domain_error("Params: p = " + std::to_string(p) + " is not prime");
    if (q < 2 || q > kMaxBase) throw std::domain_error("Params: q must be an integer >= 2");
    if (std::gcd(p, q) != 1) throw std::domain_error("Params: p and q must be coprime");
}

} // namespace collatz
