#include "collatz/fpseries.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace collatz {

namespace {

void check_base(long p) {
    if (p < 2) throw std::domain_error("FpPoly: p must be >= 2");
}

Digit add_mod(Digit a, Digit b, long p) {
    return static_cast<Digit>((static_cast<unsigned long>(a) + b) % static_cast<unsigned long>(p));
}

Digit sub_mod(Digit a, Digit b, long p) {
    return static_cast<Digit>(
        (static_cast<unsigned long>(a) + static_cast<unsigned long>(p) - b) %
        static_cast<unsigned long>(p));
}

Digit mul_mod(Digit a, Digit b, long p) {
    return static_cast<Digit>(static_cast<unsigned long>(a) * b % static_cast<unsigned long>(p));
}

Digit inv_mod(Digit a, long p) {
    long t = 0, new_t = 1;
    long r = p, new_r = static_cast<long>(a);
    while (new_r != 0) {
        const long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw std::domain_error("inv_mod: not invertible");
    return static_cast<Digit>(t < 0 ? t + p : t);
}

void check_same_field(long a, long b) {
    if (a != b) throw std::domain_error("FpPoly: mixed characteristics");
}

} // namespace

FpPoly FpPoly::make(long p, std::vector<Digit> coeffs) {
    check_base(p);
    for (Digit c : coeffs)
        if (c >= static_cast<Digit>(p)) throw std::domain_error("FpPoly: coefficient out of range");
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return FpPoly{p, std::move(coeffs)};
}

FpPoly FpPoly::monomial(long p, Digit c, std::size_t deg) {
    std::vector<Digit> v(deg + 1, 0);
    v[deg] = c;
    return make(p, std::move(v));
}

FpPoly add(const FpPoly& a, const FpPoly& b) {
    check_same_field(a.p, b.p);
    std::vector<Digit> out(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = add_mod(a.at(i), b.at(i), a.p);
    return FpPoly::make(a.p, std::move(out));
}

FpPoly sub(const FpPoly& a, const FpPoly& b) {
    check_same_field(a.p, b.p);
    std::vector<Digit> out(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = sub_mod(a.at(i), b.at(i), a.p);
    return FpPoly::make(a.p, std::move(out));
}

FpPoly mul(const FpPoly& a, const FpPoly& b) {
    check_same_field(a.p, b.p);
    if (a.is_zero() || b.is_zero()) return FpPoly::zero(a.p);
    std::vector<Digit> out(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            out[i + j] = add_mod(out[i + j], mul_mod(a.coeffs[i], b.coeffs[j], a.p), a.p);
    }
    return FpPoly::make(a.p, std::move(out));
}

FpPoly mul_scalar(const FpPoly& a, Digit c) {
    std::vector<Digit> out(a.coeffs.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mul_mod(a.coeffs[i], c, a.p);
    return FpPoly::make(a.p, std::move(out));
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    check_same_field(a.p, b.p);
    if (b.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
    std::vector<Digit> rem = a.coeffs;
    const long db = b.degree();
    const Digit lead_inv = inv_mod(b.coeffs.back(), b.p);
    std::vector<Digit> quot(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db) + 1 : 0, 0);
    for (long i = a.degree(); i >= db; --i) {
        const Digit c = rem[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        const Digit f = mul_mod(c, lead_inv, a.p);
        quot[static_cast<std::size_t>(i - db)] = f;
        for (long j = 0; j <= db; ++j) {
            auto& r = rem[static_cast<std::size_t>(i - db + j)];
            r = sub_mod(r, mul_mod(f, b.at(static_cast<std::size_t>(j)), a.p), a.p);
        }
    }
    return {FpPoly::make(a.p, std::move(quot)), FpPoly::make(a.p, std::move(rem))};
}

FpPoly poly_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = mul_scalar(a, inv_mod(a.coeffs.back(), a.p)); // monic
    return a;
}

FpPoly poly_pow(const FpPoly& a, unsigned long e) {
    FpPoly result = FpPoly::one(a.p);
    FpPoly base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

FpRationalFunction FpRationalFunction::make(FpPoly num, FpPoly den) {
    check_same_field(num.p, den.p);
    if (den.is_zero()) throw std::domain_error("FpRationalFunction: zero denominator");
    if (num.is_zero()) {
        return FpRationalFunction{FpPoly::zero(num.p), FpPoly::one(num.p)};
    }
    const FpPoly g = poly_gcd(num, den);
    if (g.degree() > 0) {
        num = divmod(num, g).first;
        den = divmod(den, g).first;
    }
    const Digit lead_inv = inv_mod(den.coeffs.back(), den.p);
    num = mul_scalar(num, lead_inv);
    den = mul_scalar(den, lead_inv);
    if (den.constant_term() == 0)
        throw std::domain_error("FpRationalFunction: denominator vanishes at 0 (not a power series)");
    return FpRationalFunction{std::move(num), std::move(den)};
}

FpRationalFunction FpRationalFunction::zero(long p) {
    return FpRationalFunction{FpPoly::zero(p), FpPoly::one(p)};
}

FpRationalFunction FpRationalFunction::one(long p) {
    return FpRationalFunction{FpPoly::one(p), FpPoly::one(p)};
}

FpRationalFunction FpRationalFunction::from_poly(FpPoly f) {
    const long p = f.p;
    return FpRationalFunction{std::move(f), FpPoly::one(p)};
}

FpRationalFunction add(const FpRationalFunction& a, const FpRationalFunction& b) {
    return FpRationalFunction::make(add(mul(a.num, b.den), mul(b.num, a.den)), mul(a.den, b.den));
}

FpRationalFunction sub(const FpRationalFunction& a, const FpRationalFunction& b) {
    return FpRationalFunction::make(sub(mul(a.num, b.den), mul(b.num, a.den)), mul(a.den, b.den));
}

FpRationalFunction mul(const FpRationalFunction& a, const FpRationalFunction& b) {
    return FpRationalFunction::make(mul(a.num, b.num), mul(a.den, b.den));
}

FpRationalFunction div(const FpRationalFunction& a, const FpRationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("FpRationalFunction: division by zero");
    return FpRationalFunction::make(mul(a.num, b.den), mul(a.den, b.num));
}

FpRationalFunction smap(const FpRationalFunction& f) {
    const long p = f.p();
    if (f.is_zero()) return f;
    if (f.num.constant_term() == 0) {
        // f(0) = 0: divide the numerator by T
        std::vector<Digit> shifted(f.num.coeffs.begin() + 1, f.num.coeffs.end());
        return FpRationalFunction::make(FpPoly::make(p, std::move(shifted)), f.den);
    }
    const Digit c = mul_mod(f.num.constant_term(), inv_mod(f.den.constant_term(), p), p);
    // ((1+T) num - c den) / (T den)
    const FpPoly one_plus_t = FpPoly::make(p, {1, 1});
    FpPoly top = sub(mul(f.num, one_plus_t), mul_scalar(f.den, c));
    if (top.is_zero()) return FpRationalFunction::zero(p);
    if (top.constant_term() != 0) throw std::logic_error("smap: numerator not divisible by T");
    std::vector<Digit> shifted(top.coeffs.begin() + 1, top.coeffs.end());
    return FpRationalFunction::make(FpPoly::make(p, std::move(shifted)), f.den);
}

namespace {

struct FpRatHash {
    std::size_t operator()(const FpRationalFunction& f) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL ^ static_cast<std::size_t>(f.p());
        auto feed = [&h](const std::vector<Digit>& v) {
            for (Digit d : v) {
                h ^= d + 0x100;
                h *= 0x100000001b3ULL;
            }
            h ^= 0xff;
            h *= 0x100000001b3ULL;
        };
        feed(f.num.coeffs);
        feed(f.den.coeffs);
        return h;
    }
};

} // namespace

SmapOrbit smap_orbit(const FpRationalFunction& f, long max_steps) {
    SmapOrbit out;
    std::unordered_map<FpRationalFunction, long, FpRatHash> index;
    FpRationalFunction cur = f;
    for (long n = 0; n <= max_steps; ++n) {
        auto [it, inserted] = index.emplace(cur, n);
        if (!inserted) {
            out.preperiod = it->second;
            out.period = n - it->second;
            return out;
        }
        out.states.push_back(cur);
        cur = smap(cur);
    }
    // heights never increase, so the state space is finite
    throw std::logic_error("smap_orbit: no repeat within safety budget");
}

FpSeriesApprox phi_series(const FpRationalFunction& f, std::size_t count) {
    FpSeriesApprox out{f.p(), {}};
    out.coeffs.reserve(count);
    FpRationalFunction cur = f;
    for (std::size_t i = 0; i < count; ++i) {
        const Digit c0 = cur.is_zero()
                             ? 0
                             : mul_mod(cur.num.constant_term(),
                                       inv_mod(cur.den.constant_term(), f.p()), f.p());
        out.coeffs.push_back(c0);
        cur = smap(cur);
    }
    return out;
}

namespace {

// c = a * b truncated to n coefficients
std::vector<Digit> series_mul(const std::vector<Digit>& a, const std::vector<Digit>& b,
                              std::size_t n, long p) {
    std::vector<Digit> out(n, 0);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j)
            out[i + j] = add_mod(out[i + j], mul_mod(a[i], b[j], p), p);
    }
    return out;
}

} // namespace

FpSeriesApprox phi_series_inverse(const FpSeriesApprox& g) {
    const long p = g.p;
    const std::size_t n = g.coeffs.size();
    // 1/(1+T) = sum (-T)^j
    std::vector<Digit> inv_one_plus_t(n, 0);
    for (std::size_t j = 0; j < n; ++j)
        inv_one_plus_t[j] = static_cast<Digit>(j % 2 == 0 ? 1 : p - 1);

    std::vector<Digit> result(n, 0);
    std::vector<Digit> weight(n, 0); // (1+T)^{-r_n}, updated as r grows
    if (n > 0) weight[0] = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const Digit a = g.coeffs[i];
        if (a == 0) continue;
        weight = series_mul(weight, inv_one_plus_t, n, p); // r includes index i itself
        for (std::size_t j = 0; i + j < n; ++j)
            result[i + j] = add_mod(result[i + j], mul_mod(a, weight[j], p), p);
    }
    return FpSeriesApprox{p, std::move(result)};
}

FpRationalFunction phi_series_inverse_exact(long p, const std::vector<Digit>& preperiod,
                                            const std::vector<Digit>& period) {
    check_base(p);
    if (period.empty()) throw std::domain_error("phi_series_inverse_exact: empty period");
    const FpPoly one_plus_t = FpPoly::make(p, {1, 1});
    const std::size_t s = preperiod.size();
    const std::size_t t = period.size();

    FpRationalFunction acc = FpRationalFunction::zero(p);
    long r = 0;
    for (std::size_t i = 0; i < s; ++i) {
        const Digit d = preperiod[i];
        if (d == 0) continue;
        ++r;
        acc = add(acc, FpRationalFunction::make(FpPoly::monomial(p, d, i),
                                                poly_pow(one_plus_t, static_cast<unsigned long>(r))));
    }
    const long r_pre = r;
    long per_nonzero = 0;
    for (Digit d : period)
        if (d != 0) ++per_nonzero;
    if (per_nonzero == 0) return acc;

    FpRationalFunction tail = FpRationalFunction::zero(p);
    long rho = 0;
    for (std::size_t j = 0; j < t; ++j) {
        const Digit d = period[j];
        if (d == 0) continue;
        ++rho;
        tail = add(tail, FpRationalFunction::make(
                             FpPoly::monomial(p, d, s + j),
                             poly_pow(one_plus_t, static_cast<unsigned long>(r_pre + rho))));
    }
    // geometric tail: one period divided by 1 - T^t/(1+T)^R
    const FpPoly numer = poly_pow(one_plus_t, static_cast<unsigned long>(per_nonzero));
    const FpPoly denom = sub(numer, FpPoly::monomial(p, 1, t));
    const FpRationalFunction factor = FpRationalFunction::make(numer, denom);
    return add(acc, mul(factor, tail));
}

long series_height(const FpRationalFunction& f) {
    if (f.is_zero()) return 0; // convention for the zero function
    return std::max(f.num.degree(), f.den.degree());
}

FpSeriesApprox series_expand(const FpRationalFunction& f, std::size_t count) {
    const long p = f.p();
    FpSeriesApprox out{p, std::vector<Digit>(count, 0)};
    if (f.is_zero() || count == 0) return out;
    const Digit q0_inv = inv_mod(f.den.constant_term(), p);
    for (std::size_t i = 0; i < count; ++i) {
        // a_i = (p_i - sum_{j>=1} q_j a_{i-j}) / q_0
        Digit acc = f.num.at(i);
        for (std::size_t j = 1; j <= i && j < f.den.coeffs.size(); ++j)
            acc = sub_mod(acc, mul_mod(f.den.coeffs[j], out.coeffs[i - j], p), p);
        out.coeffs[i] = mul_mod(acc, q0_inv, p);
    }
    return out;
}

} // namespace collatz
