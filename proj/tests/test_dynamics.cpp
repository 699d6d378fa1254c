#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "collatz/dynamics.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <set>

using namespace collatz;
using namespace collatz::testing;

namespace {

// brute-force step straight off the definition
Rational step_oracle(const Rational& u, const Params& pr) {
    if (mpz_fdiv_ui(u.get_num().get_mpz_t(), static_cast<unsigned long>(pr.p())) == 0)
        return u / pr.p();
    const Rational qu = u * pr.q();
    for (long d = 0; d < pr.p(); ++d) {
        const Rational sum = qu + d;
        if (mpz_fdiv_ui(sum.get_num().get_mpz_t(), static_cast<unsigned long>(pr.p())) == 0)
            return sum / pr.p();
    }
    FAIL("no valid digit");
    return u;
}

std::set<Rational> member_set(const Cycle& c) {
    return std::set<Rational>(c.members.begin(), c.members.end());
}

} // namespace

TEST_CASE("Params validation") {
    CHECK_THROWS_AS(Params(4, 3), std::domain_error);
    CHECK_THROWS_AS(Params(3, 9), std::domain_error);
    CHECK_THROWS_AS(Params(2, 1), std::domain_error);
    CHECK_NOTHROW(Params(5, 2));
}

TEST_CASE("step worked values") {
    CHECK(step(Rational(7), Params(2, 3)) == Rational(11));
    CHECK(step(Rational(-2), Params(5, 13)) == Rational(-5));
    CHECK(step(Rational(0), Params(7, 19)) == Rational(0));
    CHECK(step(make_rational(1, 3), Params(2, 3)) == Rational(1));
    CHECK_THROWS_AS(step(make_rational(1, 2), Params(2, 3)), std::domain_error);
}

TEST_CASE("step agrees with the definition oracle") {
    auto rng = make_rng(201);
    for (const auto& pr : {Params(2, 3), Params(3, 5), Params(5, 13), Params(5, 2)}) {
        for (int i = 0; i < 200; ++i) {
            const Rational u = random_padic_rational(rng, pr.p());
            CHECK(step(u, pr) == step_oracle(u, pr));
        }
    }
}

TEST_CASE("orbit worked values") {
    const Params pr(2, 3);

    const auto one = orbit(Rational(1), pr, 100);
    REQUIRE(one.cycle.has_value());
    CHECK(one.cycle->preperiod == 0);
    CHECK(one.cycle->period == 2);
    CHECK(one.states[0] == Rational(1));
    CHECK(one.states[1] == Rational(2));
    CHECK(one.states[2] == Rational(1));

    const auto neg17 = orbit(Rational(-17), pr, 100);
    REQUIRE(neg17.cycle.has_value());
    CHECK(neg17.cycle->period == 11);
    CHECK(neg17.states[1] == Rational(-25));

    const auto zero = orbit(Rational(0), pr, 10);
    REQUIRE(zero.cycle.has_value());
    CHECK(zero.cycle->period == 1);
}

TEST_CASE("orbit invariants: digits, r, cycle closure") {
    auto rng = make_rng(202);
    for (const auto& pr : {Params(2, 3), Params(3, 5), Params(5, 2)}) {
        for (int i = 0; i < 40; ++i) {
            const Rational u = random_padic_rational(rng, pr.p(), 100000, 50);
            const auto rec = orbit(u, pr, 3000);
            REQUIRE(rec.states.size() == rec.digits.size());
            REQUIRE(rec.states.size() == rec.r.size());
            long count = 0;
            for (std::size_t n = 0; n < rec.states.size(); ++n) {
                // a_n = 0 exactly when p | u_n
                const bool div = mpz_fdiv_ui(rec.states[n].get_num().get_mpz_t(),
                                             static_cast<unsigned long>(pr.p())) == 0;
                CHECK(div == (rec.digits[n] == 0));
                count += rec.digits[n] != 0 ? 1 : 0;
                CHECK(rec.r[n] == count);
            }
            if (rec.cycle) {
                const auto pre = static_cast<std::size_t>(rec.cycle->preperiod);
                const auto per = static_cast<std::size_t>(rec.cycle->period);
                CHECK(rec.states[pre + per] == rec.states[pre]);
            }
        }
    }
}

TEST_CASE("partial-sum identity along orbits") {
    // u + sum_{i<=n} a_i p^i / q^{r_i} = u_{n+1} p^{n+1} / q^{r_n}
    auto rng = make_rng(203);
    for (const auto& pr : {Params(2, 3), Params(3, 5), Params(5, 13)}) {
        for (int i = 0; i < 25; ++i) {
            const Rational u = random_padic_rational(rng, pr.p(), 10000, 30);
            const auto rec = orbit(u, pr, 64);
            const long horizon = static_cast<long>(rec.states.size()) - 2;
            Rational acc = u;
            for (long n = 0; n <= horizon; ++n) {
                acc += make_rational(
                    Integer(rec.digits[static_cast<std::size_t>(n)]) *
                        pow_z(pr.p(), static_cast<unsigned long>(n)),
                    pow_z(pr.q(), static_cast<unsigned long>(rec.r[static_cast<std::size_t>(n)])));
                const Rational rhs =
                    rec.states[static_cast<std::size_t>(n) + 1] *
                    Rational(make_rational(
                        pow_z(pr.p(), static_cast<unsigned long>(n + 1)),
                        pow_z(pr.q(), static_cast<unsigned long>(rec.r[static_cast<std::size_t>(n)]))));
                CHECK(acc == rhs);
            }
        }
    }
}

TEST_CASE("is_ultimately_periodic verdicts") {
    CHECK(is_ultimately_periodic(Rational(123456789), Params(5, 2), 100000).periodic);
    CHECK(is_ultimately_periodic(Rational(27), Params(2, 3), 1000).periodic);
    const auto zero = is_ultimately_periodic(Rational(0), Params(2, 3), 10);
    CHECK(zero.periodic);
    CHECK(zero.preperiod == 0);
    CHECK(zero.period == 1);
    // truncation is reported as such, not as "false"
    const auto trunc = is_ultimately_periodic(Rational(7), Params(2, 5), 5);
    CHECK(!trunc.periodic);
    CHECK(trunc.truncated);
}

TEST_CASE("hash and Brent detectors agree") {
    auto rng = make_rng(204);
    for (int i = 0; i < 60; ++i) {
        const Rational u = random_padic_rational(rng, 2, 5000, 25);
        const auto a = is_ultimately_periodic(u, Params(2, 3), 100000, CycleDetector::HashSet);
        const auto b = is_ultimately_periodic(u, Params(2, 3), 100000, CycleDetector::Brent);
        REQUIRE(a.periodic);
        REQUIRE(b.periodic);
        CHECK(a.preperiod == b.preperiod);
        CHECK(a.period == b.period);
    }
}

TEST_CASE("q < p: periodic within the explicit pigeonhole bound") {
    auto rng = make_rng(205);
    for (const auto& pr : {Params(5, 2), Params(7, 3), Params(5, 3)}) {
        for (int i = 0; i < 40; ++i) {
            Rational u = random_padic_rational(rng, pr.p(), 5000, 2);
            // keep the naive height within the regime used for the bound
            const Integer bound = theorem18_step_bound(u, pr);
            REQUIRE(bound.fits_slong_p());
            const auto verdict = is_ultimately_periodic(u, pr, bound.get_si());
            CHECK(verdict.periodic);
        }
    }
}

TEST_CASE("enumerate_periodic worked values") {
    const Params pr(2, 3);
    const auto k1 = enumerate_periodic(1, pr);
    CHECK(k1 == std::vector<Rational>{Rational(-1), Rational(0)});

    const auto k2 = enumerate_periodic(2, pr);
    CHECK(k2 == std::vector<Rational>{Rational(-1), Rational(0), Rational(1), Rational(2)});

    const auto k11 = enumerate_periodic(11, pr);
    CHECK(std::find(k11.begin(), k11.end(), Rational(-17)) != k11.end());
}

TEST_CASE("periodic census: p^k points, all verified") {
    for (const auto& [pr, kmax] : {std::pair<Params, long>{Params(2, 3), 12},
                                   std::pair<Params, long>{Params(3, 5), 9},
                                   std::pair<Params, long>{Params(5, 13), 6}}) {
        Integer expected = 1;
        for (long k = 1; k <= kmax; ++k) {
            expected *= pr.p();
            const auto pts = enumerate_periodic(k, pr);
            CHECK(Integer(static_cast<unsigned long>(pts.size())) == expected);
        }
    }
}

TEST_CASE("catalan_search") {
    const auto sols = catalan_search(Params(2, 3), 64, 64);
    CHECK(sols.minus_one == std::vector<std::pair<long, long>>{{1, 0}, {2, 1}});
    CHECK(sols.plus_one == std::vector<std::pair<long, long>>{{1, 1}, {3, 2}});

    const auto none = catalan_search(Params(5, 7), 64, 64);
    CHECK(none.minus_one.empty());
    CHECK(none.plus_one.empty());

    // exhaustive-scan oracle over a smaller box
    const Params pr(2, 3);
    std::vector<std::pair<long, long>> minus, plus;
    for (long ell = 0; ell <= 20; ++ell)
        for (long k = 1; k <= 20; ++k) {
            const Integer d = pow_z(3, ell) - pow_z(2, k);
            if (d == -1) minus.emplace_back(k, ell);
            if (d == 1) plus.emplace_back(k, ell);
        }
    const auto small = catalan_search(pr, 20, 20);
    auto sorted = [](std::vector<std::pair<long, long>> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    CHECK(sorted(small.minus_one) == sorted(minus));
    CHECK(sorted(small.plus_one) == sorted(plus));
}

TEST_CASE("integer_cycle_search finds the known (2,3) cycles") {
    CycleSearchOptions opt;
    opt.max_steps = 100000;
    const auto res = integer_cycle_search(Params(2, 3), Integer(-200), Integer(-1), opt);
    REQUIRE(res.truncated.empty());

    bool found17 = false;
    for (const auto& c : res.cycles) {
        if (c.members.front() == Rational(-17)) {
            found17 = true;
            CHECK(c.members.size() == 11);
            CHECK(member_set(c) == std::set<Rational>{Rational(-17), Rational(-25), Rational(-37),
                                                      Rational(-55), Rational(-82), Rational(-41),
                                                      Rational(-61), Rational(-91), Rational(-136),
                                                      Rational(-68), Rational(-34)});
        }
    }
    CHECK(found17);
}

TEST_CASE("integer_cycle_search worked ranges") {
    CycleSearchOptions opt;
    opt.max_steps = 100000;

    const auto r1 = integer_cycle_search(Params(7, 19), Integer(-100), Integer(-1), opt);
    bool found = false;
    for (const auto& c : r1.cycles)
        if (member_set(c) == std::set<Rational>{Rational(-35), Rational(-5), Rational(-13)}) {
            found = true;
            CHECK(c.members.front() == Rational(-5)); // canonical rotation
        }
    CHECK(found);

    const auto r2 = integer_cycle_search(Params(2, 3), Integer(1), Integer(100), opt);
    REQUIRE(r2.cycles.size() == 1);
    CHECK(member_set(r2.cycles[0]) == std::set<Rational>{Rational(1), Rational(2)});
}

TEST_CASE("cycle closure under step") {
    CycleSearchOptions opt;
    opt.max_steps = 100000;
    const auto res = integer_cycle_search(Params(5, 7), Integer(-100), Integer(-1), opt);
    for (const auto& c : res.cycles) {
        for (std::size_t i = 0; i < c.members.size(); ++i) {
            const Rational next = step(c.members[i], c.params);
            CHECK(next == c.members[(i + 1) % c.members.size()]);
        }
    }
}

TEST_CASE("search is deterministic across thread counts") {
    CycleSearchOptions one;
    one.max_steps = 100000;
    one.threads = 1;
    CycleSearchOptions four = one;
    four.threads = 4;
    const auto a = integer_cycle_search(Params(3, 11), Integer(-400), Integer(-1), one);
    const auto b = integer_cycle_search(Params(3, 11), Integer(-400), Integer(-1), four);
    REQUIRE(a.cycles.size() == b.cycles.size());
    for (std::size_t i = 0; i < a.cycles.size(); ++i)
        CHECK(a.cycles[i].members == b.cycles[i].members);
    REQUIRE(a.truncated.size() == b.truncated.size());
    for (std::size_t i = 0; i < a.truncated.size(); ++i)
        CHECK(a.truncated[i].seed == b.truncated[i].seed);
}

TEST_CASE("escape cutoff reports suspected divergence distinctly") {
    CycleSearchOptions opt;
    opt.max_steps = 1000000;
    opt.escape_bits = 64;
    // (2,5) positive seeds climb; nothing below the cutoff should linger
    const auto res = integer_cycle_search(Params(2, 5), Integer(7), Integer(7), opt);
    REQUIRE(res.truncated.size() == 1);
    CHECK(res.truncated[0].escaped);
}

TEST_CASE("cycle_identity worked values") {
    const Params pr(2, 3);
    CycleSearchOptions opt;
    opt.max_steps = 100000;
    const auto res = integer_cycle_search(pr, Integer(-20), Integer(-17), opt);
    const Cycle* c17 = nullptr;
    for (const auto& c : res.cycles)
        if (c.members.front() == Rational(-17)) c17 = &c;
    REQUIRE(c17 != nullptr);
    const auto id = cycle_identity(*c17);
    CHECK(id.numerator == 2363);
    CHECK(id.denominator == 139); // 3^7 - 2^11
    CHECK(id.quotient == 17);

    const Cycle one_two{pr, {Rational(1), Rational(2)}};
    const auto id12 = cycle_identity(one_two);
    CHECK(id12.denominator == -1); // 3 - 4
    CHECK(id12.quotient == -1);
    CHECK(id12.numerator == 1);

    const Cycle zero{pr, {Rational(0)}};
    const auto id0 = cycle_identity(zero);
    CHECK(id0.numerator == 0);
    CHECK(id0.denominator == 1 - 2); // q^0 - p^1
    CHECK(id0.quotient == 0);
}

TEST_CASE("identity holds for every found cycle") {
    CycleSearchOptions opt;
    opt.max_steps = 100000;
    for (const auto& pr : {Params(2, 3), Params(5, 7), Params(7, 17)}) {
        const auto res = integer_cycle_search(pr, Integer(-150), Integer(-1), opt);
        for (const auto& c : res.cycles) {
            const auto id = cycle_identity(c);
            CHECK(id.quotient * id.denominator == id.numerator);
            CHECK(Rational(-id.quotient) == c.members.front());
        }
    }
}
