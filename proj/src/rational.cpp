#include "collatz/rational.hpp"

namespace collatz {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("make_rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        return make_rational(num, den);
    } catch (const std::invalid_argument&) {
        throw std::domain_error("parse_rational: malformed rational '" + text + "'");
    }
}

std::string to_string(const Rational& u) {
    return u.get_str(); // "num" or "num/den"
}

Integer pow_z(long base, unsigned long exp) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return r;
}

namespace {

constexpr unsigned long kHashMod = 0x1fffffffffffffffUL; // 2^61 - 1

std::size_t mix(std::size_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::size_t RationalHash::operator()(const Rational& u) const noexcept {
    const std::size_t hn = mpz_fdiv_ui(u.get_num().get_mpz_t(), kHashMod);
    const std::size_t hd = mpz_fdiv_ui(u.get_den().get_mpz_t(), kHashMod);
    const std::size_t sign = mpz_sgn(u.get_num().get_mpz_t()) < 0 ? 1u : 0u;
    return mix(hn ^ mix(hd ^ sign));
}

std::size_t IntegerHash::operator()(const Integer& z) const noexcept {
    const std::size_t h = mpz_fdiv_ui(z.get_mpz_t(), kHashMod);
    const std::size_t sign = mpz_sgn(z.get_mpz_t()) < 0 ? 1u : 0u;
    return mix(h ^ sign);
}

} // namespace collatz
