#pragma once

#include "collatz/rational.hpp"

#include <optional>
#include <vector>

namespace collatz {

/// Eventually periodic base-p digit expansion (preperiod, then a repeating
/// period), canonicalized to minimal period length and then minimal
/// preperiod length. Exact encoding of elements of Q inside Z_p; equality
/// is structural.
struct HenselDigits {
    long p = 2;
    std::vector<Digit> preperiod;
    std::vector<Digit> period; // nonempty

    static HenselDigits make(long p, std::vector<Digit> preperiod, std::vector<Digit> period);

    /// Digit at position i of the infinite stream.
    Digit at(std::size_t i) const;

    bool operator==(const HenselDigits&) const = default;
};

/// Truncated element of Q_p: N digits of the unit part, scaled by
/// p^valuation_offset.
struct PadicApprox {
    long p = 2;
    long valuation_offset = 0;
    std::vector<Digit> digits;

    std::size_t precision() const { return digits.size(); }
    bool operator==(const PadicApprox&) const = default;
};

/// The residue digit: eps0(u) in {0..p-1} with u = eps0(u) (mod p).
/// Requires den(u) coprime to p.
Digit eps0(const Rational& u, long p);

/// First `count` Hensel digits of u (den coprime to p).
PadicApprox hensel_digits(const Rational& u, long p, std::size_t count);

/// Exact eventually-periodic expansion, found by hashing the exact states
/// of the digit-shift map (the state space is finite).
HenselDigits detect_periodic_digits(const Rational& u, long p);

/// Exact inverse of detect_periodic_digits: preperiod part plus the
/// periodic tail summed as a geometric series in Q.
Rational rational_from_digits(const HenselDigits& h);

/// Digit left shift delta_p = (Id - eps0)/p.
HenselDigits delta_shift(const HenselDigits& h);
PadicApprox delta_shift(const PadicApprox& a);

/// nu_p(u); nullopt encodes +infinity (u = 0).
std::optional<long> padic_valuation(const Rational& u, long p);

} // namespace collatz
