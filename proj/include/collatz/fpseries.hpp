#pragma once

#include "collatz/rational.hpp"

#include <utility>
#include <vector>

namespace collatz {

/// Polynomial over F_p in canonical form: coefficients in [0, p), no
/// trailing zeros. degree() is -1 for the zero polynomial.
struct FpPoly {
    long p = 2;
    std::vector<Digit> coeffs; // coeffs[i] multiplies T^i

    static FpPoly make(long p, std::vector<Digit> coeffs);
    static FpPoly zero(long p) { return FpPoly{p, {}}; }
    static FpPoly one(long p) { return make(p, {1}); }
    static FpPoly monomial(long p, Digit c, std::size_t deg);

    bool is_zero() const { return coeffs.empty(); }
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    Digit at(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : 0; }
    Digit constant_term() const { return at(0); }

    bool operator==(const FpPoly&) const = default;
};

FpPoly add(const FpPoly& a, const FpPoly& b);
FpPoly sub(const FpPoly& a, const FpPoly& b);
FpPoly mul(const FpPoly& a, const FpPoly& b);
FpPoly mul_scalar(const FpPoly& a, Digit c);
std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly poly_gcd(FpPoly a, FpPoly b);
FpPoly poly_pow(const FpPoly& a, unsigned long e);

/// Reduced fraction of F_p polynomials with monic denominator and
/// den(0) != 0, i.e. a rational function lying in F_p[[T]].
struct FpRationalFunction {
    FpPoly num;
    FpPoly den;

    static FpRationalFunction make(FpPoly num, FpPoly den);
    static FpRationalFunction zero(long p);
    static FpRationalFunction one(long p);
    static FpRationalFunction from_poly(FpPoly f);

    long p() const { return num.p; }
    bool is_zero() const { return num.is_zero(); }

    bool operator==(const FpRationalFunction&) const = default;
};

FpRationalFunction add(const FpRationalFunction& a, const FpRationalFunction& b);
FpRationalFunction sub(const FpRationalFunction& a, const FpRationalFunction& b);
FpRationalFunction mul(const FpRationalFunction& a, const FpRationalFunction& b);
FpRationalFunction div(const FpRationalFunction& a, const FpRationalFunction& b);

struct FpSeriesApprox {
    long p = 2;
    std::vector<Digit> coeffs; // first N power-series coefficients

    bool operator==(const FpSeriesApprox&) const = default;
};

struct SmapOrbit {
    std::vector<FpRationalFunction> states;
    long preperiod = 0;
    long period = 0;
};

/// The shift map S: f/T when f(0) = 0, else ((1+T) f - f(0))/T. Height
/// never increases.
FpRationalFunction smap(const FpRationalFunction& f);

/// Orbit of S with exact (preperiod, period); rational functions of bounded
/// height form a finite set, so termination is guaranteed (max_steps is a
/// safety net only).
SmapOrbit smap_orbit(const FpRationalFunction& f, long max_steps = 1'000'000);

/// phi(f) = sum S^n(f)(0) T^n, truncated to `count` coefficients.
FpSeriesApprox phi_series(const FpRationalFunction& f, std::size_t count);

/// phi^{-1}(sum a_n T^n) = sum a_n T^n/(1+T)^{r_n}, truncated; r_n counts
/// nonzero coefficients with index <= n.
FpSeriesApprox phi_series_inverse(const FpSeriesApprox& g);

/// Exact phi^{-1} of an eventually periodic coefficient stream, the
/// periodic tail summed as a geometric series of rational functions.
FpRationalFunction phi_series_inverse_exact(long p, const std::vector<Digit>& preperiod,
                                            const std::vector<Digit>& period);

/// H(P/Q) = max(deg P, deg Q); 0 for the zero function by convention.
long series_height(const FpRationalFunction& f);

/// Power-series expansion of f to `count` coefficients.
FpSeriesApprox series_expand(const FpRationalFunction& f, std::size_t count);

} // namespace collatz
