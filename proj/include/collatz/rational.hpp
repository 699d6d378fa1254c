#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace collatz {

/// Exact rational in lowest terms with positive denominator (mpq_class
/// canonical form). The universal orbit state type.
using Rational = mpq_class;
using Integer = mpz_class;

/// A base-p digit; p is capped at 2^31 - 1 so digits always fit.
using Digit = std::uint32_t;

/// Budget exhaustion distinct from domain errors: the computation is
/// inconclusive, not wrong.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(const std::string& text); // "num" or "num/den"
std::string to_string(const Rational& u);

Integer pow_z(long base, unsigned long exp);

struct RationalHash {
    std::size_t operator()(const Rational& u) const noexcept;
};

struct IntegerHash {
    std::size_t operator()(const Integer& z) const noexcept;
};

} // namespace collatz
