#include "collatz/padic.hpp"

#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace collatz {

namespace {

long mod_inverse(long a, long p) { // gcd(a, p) = 1, a in [1, p)
    long t = 0, new_t = 1;
    long r = p, new_r = a;
    while (new_r != 0) {
        const long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return t < 0 ? t + p : t;
}

void check_digit_base(long p) {
    if (p < 2) throw std::domain_error("digit base must be >= 2");
}

// One shift-map application: u <- (u - eps0(u))/p, returning the digit.
Digit extract_digit(Rational& u, long p) {
    const Digit d = eps0(u, p);
    if (d != 0) u -= static_cast<unsigned long>(d);
    u /= p;
    return d;
}

// Smallest block length whose repetition yields `per`.
std::size_t minimal_period(const std::vector<Digit>& per) {
    const std::size_t n = per.size();
    for (std::size_t len = 1; len <= n / 2; ++len) {
        if (n % len != 0) continue;
        bool ok = true;
        for (std::size_t i = len; i < n && ok; ++i) ok = per[i] == per[i - len];
        if (ok) return len;
    }
    return n;
}

} // namespace

HenselDigits HenselDigits::make(long p, std::vector<Digit> preperiod, std::vector<Digit> period) {
    check_digit_base(p);
    if (period.empty()) throw std::domain_error("HenselDigits: period must be nonempty");
    for (Digit d : preperiod)
        if (d >= static_cast<Digit>(p)) throw std::domain_error("HenselDigits: digit out of range");
    for (Digit d : period)
        if (d >= static_cast<Digit>(p)) throw std::domain_error("HenselDigits: digit out of range");

    const std::size_t len = minimal_period(period);
    period.resize(len);
    // Absorb preperiod digits that the (rotated) period already produces.
    while (!preperiod.empty() && preperiod.back() == period.back()) {
        period.pop_back();
        period.insert(period.begin(), preperiod.back());
        preperiod.pop_back();
    }
    return HenselDigits{p, std::move(preperiod), std::move(period)};
}

Digit HenselDigits::at(std::size_t i) const {
    if (i < preperiod.size()) return preperiod[i];
    return period[(i - preperiod.size()) % period.size()];
}

Digit eps0(const Rational& u, long p) {
    check_digit_base(p);
    const unsigned long up = static_cast<unsigned long>(p);
    const unsigned long den_mod = mpz_fdiv_ui(u.get_den().get_mpz_t(), up);
    if (den_mod == 0) throw std::domain_error("eps0: denominator divisible by p");
    const unsigned long num_mod = mpz_fdiv_ui(u.get_num().get_mpz_t(), up);
    const unsigned long inv = static_cast<unsigned long>(mod_inverse(static_cast<long>(den_mod), p));
    return static_cast<Digit>((num_mod * inv) % up);
}

PadicApprox hensel_digits(const Rational& u, long p, std::size_t count) {
    check_digit_base(p);
    if (mpz_fdiv_ui(u.get_den().get_mpz_t(), static_cast<unsigned long>(p)) == 0)
        throw std::domain_error("hensel_digits: denominator divisible by p");
    PadicApprox out{p, 0, {}};
    out.digits.reserve(count);
    Rational v = u;
    for (std::size_t i = 0; i < count; ++i) out.digits.push_back(extract_digit(v, p));
    return out;
}

HenselDigits detect_periodic_digits(const Rational& u, long p) {
    check_digit_base(p);
    if (mpz_fdiv_ui(u.get_den().get_mpz_t(), static_cast<unsigned long>(p)) == 0)
        throw std::domain_error("detect_periodic_digits: denominator divisible by p");
    // Shift-map states have bounded numerators and a fixed denominator pool,
    // so the first repeated state gives the minimal (preperiod, period).
    std::unordered_map<Rational, std::size_t, RationalHash> seen;
    std::vector<Digit> stream;
    Rational v = u;
    while (true) {
        auto [it, inserted] = seen.emplace(v, stream.size());
        if (!inserted) {
            const std::size_t s = it->second;
            std::vector<Digit> pre(stream.begin(), stream.begin() + static_cast<long>(s));
            std::vector<Digit> per(stream.begin() + static_cast<long>(s), stream.end());
            return HenselDigits::make(p, std::move(pre), std::move(per));
        }
        stream.push_back(extract_digit(v, p));
    }
}

Rational rational_from_digits(const HenselDigits& h) {
    const long p = h.p;
    Integer pre_val = 0;
    for (auto it = h.preperiod.rbegin(); it != h.preperiod.rend(); ++it) pre_val = pre_val * p + *it;
    Integer per_val = 0;
    for (auto it = h.period.rbegin(); it != h.period.rend(); ++it) per_val = per_val * p + *it;

    const Integer p_pre = pow_z(p, h.preperiod.size());
    const Integer p_per = pow_z(p, h.period.size());
    // u = pre_val + p^s * per_val / (1 - p^t)
    Rational tail = make_rational(p_pre * per_val, 1 - p_per);
    return Rational(pre_val) + tail;
}

HenselDigits delta_shift(const HenselDigits& h) {
    std::vector<Digit> pre = h.preperiod;
    std::vector<Digit> per = h.period;
    if (!pre.empty()) {
        pre.erase(pre.begin());
    } else {
        per.push_back(per.front());
        per.erase(per.begin());
    }
    return HenselDigits::make(h.p, std::move(pre), std::move(per));
}

PadicApprox delta_shift(const PadicApprox& a) {
    if (a.digits.empty()) throw std::domain_error("delta_shift: empty approximation");
    PadicApprox out{a.p, a.valuation_offset, {}};
    out.digits.assign(a.digits.begin() + 1, a.digits.end());
    return out;
}

std::optional<long> padic_valuation(const Rational& u, long p) {
    check_digit_base(p);
    if (u == 0) return std::nullopt;
    const Integer pz(p);
    Integer tmp;
    const long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), u.get_num().get_mpz_t(), pz.get_mpz_t()));
    const long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), u.get_den().get_mpz_t(), pz.get_mpz_t()));
    return vn - vd;
}

} // namespace collatz
