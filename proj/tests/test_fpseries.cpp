#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "collatz/fpseries.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace collatz;
using namespace collatz::testing;

namespace {

FpPoly P(long p, std::vector<Digit> c) { return FpPoly::make(p, std::move(c)); }

FpRationalFunction random_ratfun(std::mt19937_64& rng, long p, long max_height) {
    std::uniform_int_distribution<long> deg_dist(0, max_height);
    std::uniform_int_distribution<long> digit_dist(0, p - 1);
    while (true) {
        std::vector<Digit> num(static_cast<std::size_t>(deg_dist(rng)) + 1);
        std::vector<Digit> den(static_cast<std::size_t>(deg_dist(rng)) + 1);
        for (auto& d : num) d = static_cast<Digit>(digit_dist(rng));
        for (auto& d : den) d = static_cast<Digit>(digit_dist(rng));
        if (den[0] == 0) den[0] = 1; // keep den(0) != 0
        const FpPoly dp = P(p, den);
        if (dp.is_zero()) continue;
        return FpRationalFunction::make(P(p, num), dp);
    }
}

long first_difference(const std::vector<Digit>& a, const std::vector<Digit>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (a[i] != b[i]) return static_cast<long>(i);
    return -1;
}

} // namespace

TEST_CASE("polynomial arithmetic basics") {
    const FpPoly a = P(2, {1, 1});     // 1 + T
    const FpPoly b = P(2, {1, 1, 1});  // 1 + T + T^2
    CHECK(mul(a, a) == P(2, {1, 0, 1}));
    CHECK(add(a, a).is_zero());
    const auto [q, r] = divmod(b, a);
    CHECK(add(mul(q, a), r) == b);
    CHECK(poly_gcd(mul(a, b), mul(a, a)) == a);
}

TEST_CASE("rational functions reduce to canonical form") {
    const auto f = FpRationalFunction::make(P(2, {1, 0, 1}), P(2, {1, 1})); // (1+T)^2/(1+T)
    CHECK(f.num == P(2, {1, 1}));
    CHECK(f.den == FpPoly::one(2));
    // denominator must not vanish at 0
    CHECK_THROWS_AS(FpRationalFunction::make(P(2, {1}), P(2, {0, 1})), std::domain_error);
    // monic normalization over F_3
    const auto g = FpRationalFunction::make(P(3, {1}), P(3, {2, 0, 2}));
    CHECK(g.den.coeffs.back() == 1);
}

TEST_CASE("smap worked values") {
    // p=2, f = 1/(1+T): (1+T)f - 1 = 0
    const auto f = FpRationalFunction::make(FpPoly::one(2), P(2, {1, 1}));
    CHECK(smap(f).is_zero());

    CHECK(smap(FpRationalFunction::zero(3)).is_zero());

    // p=3, f = T/(1+T): f(0) = 0 branch
    const auto g = FpRationalFunction::make(P(3, {0, 1}), P(3, {1, 1}));
    CHECK(smap(g) == FpRationalFunction::make(FpPoly::one(3), P(3, {1, 1})));
}

TEST_CASE("smap never raises the height") {
    auto rng = make_rng(501);
    for (long p : {2L, 3L, 5L}) {
        for (int i = 0; i < 350; ++i) {
            const auto f = random_ratfun(rng, p, 8);
            CHECK(series_height(smap(f)) <= series_height(f));
        }
    }
}

TEST_CASE("smap_orbit worked values") {
    // 1/(1+T) reaches 0 in one step and stays
    const auto f = FpRationalFunction::make(FpPoly::one(2), P(2, {1, 1}));
    const auto orb = smap_orbit(f);
    CHECK(orb.preperiod == 1);
    CHECK(orb.period == 1);

    const auto z = smap_orbit(FpRationalFunction::zero(2));
    CHECK(z.preperiod == 0);
    CHECK(z.period == 1);

    // 1/(1+T+T^2) is 2-periodic
    const auto g = FpRationalFunction::make(FpPoly::one(2), P(2, {1, 1, 1}));
    const auto orb2 = smap_orbit(g);
    CHECK(orb2.preperiod == 0);
    CHECK(orb2.period == 2);
}

TEST_CASE("rationality implies a detected period for every input") {
    auto rng = make_rng(502);
    for (long p : {2L, 3L}) {
        for (int i = 0; i < 250; ++i) {
            const auto f = random_ratfun(rng, p, 8);
            const auto orb = smap_orbit(f);
            CHECK(orb.period >= 1);
            // verify the repeat explicitly
            FpRationalFunction cur = f;
            for (long s = 0; s < orb.preperiod; ++s) cur = smap(cur);
            FpRationalFunction again = cur;
            for (long s = 0; s < orb.period; ++s) again = smap(again);
            CHECK(again == cur);
        }
    }
}

TEST_CASE("phi_series worked values") {
    const auto f = FpRationalFunction::make(FpPoly::one(2), P(2, {1, 1}));
    CHECK(phi_series(f, 5).coeffs == std::vector<Digit>{1, 0, 0, 0, 0});

    CHECK(phi_series(FpRationalFunction::zero(2), 4).coeffs == std::vector<Digit>{0, 0, 0, 0});

    // phi(1) = sum T^n = 1/(1+T) over F_2
    CHECK(phi_series(FpRationalFunction::one(2), 6).coeffs ==
          std::vector<Digit>{1, 1, 1, 1, 1, 1});
}

TEST_CASE("phi_series_inverse worked values") {
    // phi^{-1}(1) = 1/(1+T): expansion 1,1,1,...
    const FpSeriesApprox one{2, {1, 0, 0, 0, 0, 0}};
    CHECK(phi_series_inverse(one).coeffs == std::vector<Digit>{1, 1, 1, 1, 1, 1});

    const FpSeriesApprox zero{2, {0, 0, 0}};
    CHECK(phi_series_inverse(zero).coeffs == std::vector<Digit>{0, 0, 0});

    // all-ones stream maps back to the constant 1
    const FpSeriesApprox ones{2, {1, 1, 1, 1, 1, 1, 1}};
    CHECK(phi_series_inverse(ones).coeffs == std::vector<Digit>{1, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("phi_series round trips against phi_series_inverse") {
    auto rng = make_rng(503);
    for (long p : {2L, 3L, 5L}) {
        for (int i = 0; i < 150; ++i) {
            const auto f = random_ratfun(rng, p, 6);
            const std::size_t n = 32;
            const auto img = phi_series(f, n);
            const auto back = phi_series_inverse(img);
            CHECK(back.coeffs == series_expand(f, n).coeffs);
        }
    }
}

TEST_CASE("exact inverse of periodic coefficient streams") {
    auto rng = make_rng(504);
    for (long p : {2L, 3L}) {
        std::uniform_int_distribution<long> digit_dist(0, p - 1);
        std::uniform_int_distribution<std::size_t> len_dist(1, 6);
        for (int i = 0; i < 120; ++i) {
            std::vector<Digit> pre(len_dist(rng) - 1), per(len_dist(rng));
            for (auto& d : pre) d = static_cast<Digit>(digit_dist(rng));
            for (auto& d : per) d = static_cast<Digit>(digit_dist(rng));
            if (std::all_of(per.begin(), per.end(), [](Digit d) { return d == 0; })) per[0] = 1;

            const auto f = phi_series_inverse_exact(p, pre, per);
            // phi of the reconstruction reproduces the stream
            const std::size_t n = pre.size() + per.size() * 6;
            const auto img = phi_series(f, n);
            for (std::size_t j = 0; j < n; ++j) {
                const Digit expect =
                    j < pre.size() ? pre[j] : per[(j - pre.size()) % per.size()];
                CHECK(img.coeffs[j] == expect);
            }
        }
    }
}

TEST_CASE("series_height worked values") {
    CHECK(series_height(FpRationalFunction::make(FpPoly::one(2), P(2, {1, 1}))) == 1);
    CHECK(series_height(FpRationalFunction::make(P(2, {1, 0, 1}), P(2, {1, 1, 0, 1}))) == 3);
    CHECK(series_height(FpRationalFunction::zero(2)) == 0);
}

TEST_CASE("phi_series is an isometry of the coefficient metric") {
    auto rng = make_rng(505);
    for (long p : {2L, 3L, 5L}) {
        for (int i = 0; i < 200; ++i) {
            const auto f = random_ratfun(rng, p, 6);
            const auto g = random_ratfun(rng, p, 6);
            if (f == g) continue;
            const std::size_t n = 64;
            const long lhs = first_difference(phi_series(f, n).coeffs, phi_series(g, n).coeffs);
            const long rhs = first_difference(series_expand(f, n).coeffs, series_expand(g, n).coeffs);
            CHECK(lhs == rhs);
        }
    }
}
