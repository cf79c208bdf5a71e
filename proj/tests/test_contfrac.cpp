#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcf/contfrac.hpp"
#include "testutil.hpp"

using namespace lcf;
using lcftest::Rng;

namespace {

RationalFn random_element_of_I(Rng& rng, FieldSpec f, int max_den_deg) {
    Poly den = lcftest::random_poly_of_degree(rng, f, 1 + static_cast<int>(rng.below(static_cast<std::uint32_t>(max_den_deg))));
    Poly num = lcftest::random_poly(rng, f, deg(den) - 1);
    return make_rational_fn(num, den);
}

}  // namespace

TEST_CASE("expand_rational examples") {
    FieldSpec f2(2), f3(3);

    CFExpansion a = expand_rational(Poly::z(f2), poly_from_string(f2, "z^2+1"));
    REQUIRE(a.quotients.size() == 2);
    CHECK(a.quotients[0] == Poly::z(f2));
    CHECK(a.quotients[1] == Poly::z(f2));
    CHECK(a.terminated);
    CHECK(a.certified == 2);

    CFExpansion b = expand_rational(Poly::constant(f2, 1), Poly::z(f2));
    REQUIRE(b.quotients.size() == 1);
    CHECK(b.quotients[0] == Poly::z(f2));

    CFExpansion c = expand_rational(Poly::constant(f3, 1), poly_from_string(f3, "z+1"));
    REQUIRE(c.quotients.size() == 1);
    CHECK(c.quotients[0] == poly_from_string(f3, "z+1"));

    CHECK_THROWS_AS(expand_rational(Poly::z(f2), Poly::zero(f2)), std::domain_error);
    CHECK_THROWS_AS(expand_rational(Poly::z(f2), Poly::constant(f2, 1)), std::invalid_argument);
}

TEST_CASE("convergent recursion examples") {
    FieldSpec f(2);
    CFExpansion cf{f, {Poly::z(f), Poly::z(f)}, 2, true};
    auto cs = convergents(cf);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].p == Poly::constant(f, 1));
    CHECK(cs[0].q == Poly::z(f));
    CHECK(cs[1].p == Poly::z(f));
    CHECK(cs[1].q == poly_from_string(f, "z^2+1"));

    CFExpansion cf3{f, {Poly::z(f), Poly::z(f), Poly::z(f)}, 3, true};
    auto cs3 = convergents(cf3);
    CHECK(cs3[2].q == poly_from_string(f, "z^3"));

    // Q_1 = A_1 for any expansion
    Rng rng(3);
    for (int it = 0; it < 50; ++it) {
        FieldSpec ff(3);
        Poly a1 = lcftest::random_poly_of_degree(rng, ff, 1 + static_cast<int>(rng.below(3)));
        CFExpansion one{ff, {a1}, 1, true};
        CHECK(convergents(one)[0].q == a1);
    }
}

TEST_CASE("expand_truncated certification") {
    FieldSpec f(2);

    CHECK_THROWS_AS(expand_truncated(LaurentSeries(Poly::z(f), {1})), std::invalid_argument);

    CFExpansion a = expand_truncated(LaurentSeries::from_frac(f, {1}));
    REQUIRE(a.quotients.size() == 1);
    CHECK(a.quotients[0] == Poly::z(f));
    CHECK(a.certified == 0);
    CHECK(!a.terminated);

    CFExpansion b = expand_truncated(LaurentSeries::from_frac(f, {1, 0}));
    CHECK(b.certified == 1);

    LaurentSeries x = series_from_rational(Poly::z(f), poly_from_string(f, "z^2+1"), 8);
    CFExpansion c = expand_truncated(x);
    REQUIRE(c.quotients.size() == 2);
    CHECK(c.quotients[0] == Poly::z(f));
    CHECK(c.quotients[1] == Poly::z(f));
    CHECK(c.certified == 2);
    CHECK(!c.terminated);

    // all quotients of degree 1 at precision 10: certified 5
    // x = [z, z, z, ...] reconstructed from a deep convergent
    CFExpansion golden{f, std::vector<Poly>(8, Poly::z(f)), 8, true};
    auto cs = convergents(golden);
    LaurentSeries g = series_from_rational(cs.back().p, cs.back().q, 10);
    CFExpansion d = expand_truncated(g);
    CHECK(d.certified == 5);
    for (std::size_t i = 0; i < d.certified; ++i) CHECK(d.quotients[i] == Poly::z(f));
}

TEST_CASE("roundtrip: expand then reconstruct is the identity on lowest terms") {
    Rng rng(101);
    for (std::uint32_t q : {2u, 3u}) {
        FieldSpec f(q);
        for (int it = 0; it < 500; ++it) {
            RationalFn x = random_element_of_I(rng, f, 9);
            CFExpansion cf = expand_rational(x.num, x.den);
            for (const Poly& a : cf.quotients) CHECK(deg(a) >= 1);
            RationalFn back = reconstruct(cf);
            CHECK(back.num == x.num);
            CHECK(back.den == x.den);
            // |Q_n| strictly increasing in n
            int prev = 0;
            for (const Convergent& c : convergents(cf)) {
                CHECK(deg(c.q) > prev);
                prev = deg(c.q);
            }
        }
    }
}

TEST_CASE("agreement: truncated expansion matches exact expansion on the certified prefix") {
    Rng rng(202);
    for (std::uint32_t q : {2u, 3u}) {
        FieldSpec f(q);
        for (int it = 0; it < 200; ++it) {
            RationalFn x = random_element_of_I(rng, f, 7);
            int N = 1 + static_cast<int>(rng.below(24));
            LaurentSeries s = series_from_rational(x.num, x.den, N);
            CFExpansion exact = expand_rational(x.num, x.den);
            CFExpansion approx = expand_truncated(s);
            REQUIRE(approx.certified <= approx.quotients.size());
            for (std::size_t i = 0; i < approx.certified; ++i) {
                REQUIRE(i < exact.quotients.size());
                CHECK(approx.quotients[i] == exact.quotients[i]);
            }
        }
    }
}

TEST_CASE("expansion agrees with direct Gauss-map iteration on the certified prefix") {
    Rng rng(303);
    FieldSpec f(2);
    for (int it = 0; it < 100; ++it) {
        RationalFn x = random_element_of_I(rng, f, 6);
        LaurentSeries s = series_from_rational(x.num, x.den, 20);
        CFExpansion cf = expand_truncated(s);
        LaurentSeries cur = s;
        for (std::size_t i = 0; i < cf.certified; ++i) {
            Valuation v = norm(cur);
            REQUIRE(!v.zero_up_to_precision());
            LaurentSeries rec = reciprocal(cur);
            CHECK(rec.int_part() == cf.quotients[i]);
            cur = gauss_map(cur);
        }
    }
}

TEST_CASE("check_identities examples and property") {
    FieldSpec f(2);
    RationalFn x = make_rational_fn(Poly::z(f), poly_from_string(f, "z^2+1"));

    IdentityReport rep = check_identities(x, 1);
    CHECK(rep.all_ok);  // Q_1 P_0 - P_1 Q_0 = -1 = 1 in F_2

    IdentityReport rep2 = check_identities(x, 2);  // n = expansion length: zero error
    CHECK(rep2.all_ok);

    Rng rng(404);
    FieldSpec f3(3);
    for (int it = 0; it < 200; ++it) {
        RationalFn y = random_element_of_I(rng, f3, 11);
        CFExpansion cf = expand_rational(y.num, y.den);
        for (int n = 1; n <= static_cast<int>(cf.quotients.size()) && n <= 10; ++n) {
            IdentityReport r = check_identities(y, n);
            INFO("n=" << n << " x=" << to_string(y.num) << "/" << to_string(y.den));
            CHECK(r.all_ok);
        }
    }
}

TEST_CASE("relative error log") {
    FieldSpec f(2);
    CFExpansion zz = expand_rational(Poly::z(f), poly_from_string(f, "z^2+1"));
    CHECK(relative_error_log(zz, 1) == 2);

    // quotient degrees (2, 3) at positions n, n+1
    CFExpansion deg23{f, {poly_from_string(f, "z^2"), poly_from_string(f, "z^3+z")}, 2, true};
    CHECK(relative_error_log(deg23, 1) == 5);

    CFExpansion one = expand_rational(Poly::constant(f, 1), Poly::z(f));
    CHECK_THROWS_AS(relative_error_log(one, 1), std::domain_error);

    Rng rng(505);
    for (std::uint32_t q : {2u, 3u}) {
        FieldSpec ff(q);
        for (int it = 0; it < 100; ++it) {
            RationalFn x = random_element_of_I(rng, ff, 9);
            CFExpansion cf = expand_rational(x.num, x.den);
            for (int n = 1; n + 1 <= static_cast<int>(cf.quotients.size()); ++n) {
                int expect = deg(cf.quotients[static_cast<std::size_t>(n) - 1]) +
                             deg(cf.quotients[static_cast<std::size_t>(n)]);
                CHECK(relative_error_log_checked(x, n) == expect);
            }
        }
    }
}
