#pragma once

#include "collatz/dynamics.hpp"

#include <optional>
#include <vector>

namespace collatz {

/// Indices psi(0) < psi(1) < ... of the nonzero digits of phi(u), with the
/// digit found at each index. `exhausted` means the stream provably has no
/// further nonzero digits (all-zero periodic tail).
struct PsiFunction {
    std::vector<long> values;
    std::vector<Digit> digits;
    bool exhausted = false;
};

/// Integer approximant of a (2,3) seed whose orbit is ultimately periodic:
/// w_n agrees with u to 2-adic precision `distance_exponent`.
struct DensityWitness {
    long n = 0;
    Integer psi_prime_n;                    // the exponent k of the 2^k tail
    Rational v_n;                           // phi-image of the approximant
    Integer w_n;                            // the approximating integer
    std::optional<long> distance_exponent;  // e with |u - w_n|_2 = 2^-e; nullopt: w_n == u
    long psi_n_minus_1 = 0;
    std::optional<long> psi_n;              // when materialized
    bool bound_achieved = false;            // distance exponent >= psi(n), when psi(n) known
    bool orbit_periodic = false;
};

struct PsiPrimeSeries {
    std::vector<Integer> values;  // psi'_omega(n) for n = 1..n_max
    std::vector<double> ratios;   // psi'_omega(n)/n
    double liminf_estimate = 0.0; // min ratio over the tail half (finite horizon)
};

/// First `count` digits of phi_{p,q}(u): digit n is eps0(-q u_n) along the
/// orbit. An isometry of Z_p.
PadicApprox phi(const Rational& u, const Params& params, std::size_t count);

/// Exact eventually-periodic digit stream of phi(u), available as soon as
/// the orbit's cycle is detected; nullopt when no cycle appears within
/// budget (aperiodic as far as could be seen).
std::optional<HenselDigits> phi_exact(const Rational& u, const Params& params, long max_steps);

/// phi^{-1}(v) = -sum a_i p^i / q^{r_i}, summed exactly: preperiod part
/// plus the periodic tail via the closed form with factor
/// q^R / (q^R - p^K), K = period length, R = nonzero digits per period.
Rational phi_inverse_exact(const HenselDigits& v, const Params& params);

/// Partial sum -sum_{i<N} a_i p^i / q^{r_i} reduced mod p^N.
PadicApprox phi_inverse_approx(const PadicApprox& v, const Params& params);

/// phi extended to Q_p by phi(p^m w) = p^m phi(w): factors out the
/// valuation and carries it in the result offset.
PadicApprox phi_qp(const Rational& u, const Params& params, std::size_t count);

/// Checks phi(g(u)) == delta(phi(u)) to precision count - 1.
bool conjugation_check(const Rational& u, const Params& params, std::size_t count);

/// Materializes up to `count` nonzero-digit indices of phi(u) within the
/// given orbit budget (fewer when the budget runs out first).
PsiFunction materialize_psi(const Rational& u, const Params& params, long count, long max_steps);

/// (2,3) only. Finds the minimal k > psi(n-1) with 2^k = S_n (mod 3^n),
/// S_n = sum_{i<n} 2^{psi(i)} 3^{n-1-i}, and returns the integer
/// w_n = (2^k - S_n)/3^n together with the measured 2-adic distance to u
/// and a periodicity check of w_n's orbit.
DensityWitness density_approximant(const Integer& u, long n, long max_steps);

/// psi'_omega(n) = minimal k >= 0 with p^k = S_n omega^{-1} (mod q^n),
/// computed by discrete logarithm in the cyclic unit group. Requires q an
/// odd prime, p a generator of (Z/q^2)^*, and omega a q-adic unit.
PsiPrimeSeries psi_prime_omega(const Rational& u, const Rational& omega, long n_max,
                               const Params& params, long max_steps);

} // namespace collatz
