#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcf/laurent.hpp"
#include "testutil.hpp"

using namespace lcf;
using lcftest::Rng;

namespace {

LaurentSeries random_series(Rng& rng, FieldSpec f, int precision, int max_int_deg) {
    Poly ip = rng.below(2) ? lcftest::random_poly(rng, f, max_int_deg) : Poly::zero(f);
    std::vector<std::uint32_t> frac(static_cast<std::size_t>(precision));
    for (auto& c : frac) c = rng.below(f.q);
    return LaurentSeries(std::move(ip), std::move(frac));
}

}  // namespace

TEST_CASE("norm examples") {
    FieldSpec f(2);
    LaurentSeries a(poly_from_string(f, "z^2+1"), {0, 0, 0});
    CHECK(norm(a).index() == -2);
    CHECK(norm(a).norm(f) == Rational(4));

    LaurentSeries b = LaurentSeries::from_frac(f, {0, 1, 0, 0, 1});  // z^-2 + z^-5
    CHECK(norm(b).index() == 2);
    CHECK(norm(b).norm(f) == Rational(1, 4));

    LaurentSeries c = LaurentSeries::zero(f, 8);
    CHECK(norm(c).zero_up_to_precision());
    CHECK(norm(c).precision == 8);
    CHECK(norm(c).norm(f) == Rational(0));
}

TEST_CASE("split examples") {
    FieldSpec f(2);
    LaurentSeries a(Poly::z(f), {1});  // z + z^-1
    auto [ip, fr] = split(a);
    CHECK(ip == Poly::z(f));
    CHECK(fr.in_unit_ideal());
    CHECK(fr.frac() == std::vector<std::uint32_t>{1});

    LaurentSeries b = LaurentSeries::from_frac(f, {0, 0, 1});  // z^-3
    auto [ip2, fr2] = split(b);
    CHECK(ip2.is_zero());
    CHECK(fr2 == b);

    LaurentSeries c(poly_from_string(f, "z^2+z+1"), {1, 1});
    auto [ip3, fr3] = split(c);
    CHECK(ip3 == poly_from_string(f, "z^2+z+1"));
    CHECK(fr3.frac() == std::vector<std::uint32_t>{1, 1});
    // x = [x] + {x} coefficientwise
    CHECK(ip3.coeff(0) + 0 == *c.coeff(0));
}

TEST_CASE("reciprocal examples") {
    FieldSpec f(2);

    // 1/z^-1 = z
    LaurentSeries a = LaurentSeries::from_frac(f, {1, 0});
    LaurentSeries ra = reciprocal(a);
    CHECK(ra.int_part() == Poly::z(f));
    CHECK(ra.precision() == 0);

    // 1/(z^-1+z^-2+z^-3+z^-4): polynomial part z+1, then two zero digits
    LaurentSeries b = LaurentSeries::from_frac(f, {1, 1, 1, 1});
    LaurentSeries rb = reciprocal(b);
    CHECK(rb.int_part() == poly_from_string(f, "z+1"));
    CHECK(rb.frac() == std::vector<std::uint32_t>{0, 0});

    // 1/(z^2+1) = z^-2 + z^-4 + ... ; input precision 4 determines 8 digits
    LaurentSeries c(poly_from_string(f, "z^2+1"), {0, 0, 0, 0});
    LaurentSeries rc = reciprocal(c);
    CHECK(rc.int_part().is_zero());
    CHECK(rc.precision() == 8);
    CHECK(rc.frac() == std::vector<std::uint32_t>{0, 1, 0, 1, 0, 1, 0, 1});

    CHECK_THROWS_AS(reciprocal(LaurentSeries::zero(f, 5)), std::domain_error);
    // 2v > N: polynomial part of the output not determined
    CHECK_THROWS_AS(reciprocal(LaurentSeries::from_frac(f, {0, 1, 0})), PrecisionError);
}

TEST_CASE("gauss map examples") {
    FieldSpec f(2);

    LaurentSeries a = LaurentSeries::from_frac(f, {1, 0, 0, 0});
    LaurentSeries ta = gauss_map(a);  // 1/x = z exactly
    CHECK(ta.is_zero_up_to_precision());
    CHECK(ta.precision() == 2);

    LaurentSeries b = LaurentSeries::from_frac(f, {0, 1, 0, 0});  // z^-2
    LaurentSeries tb = gauss_map(b);
    CHECK(tb.is_zero_up_to_precision());
    CHECK(tb.precision() == 0);

    LaurentSeries c = LaurentSeries::from_frac(f, {1, 0, 1, 0, 0, 0});  // z^-1 + z^-3
    LaurentSeries tc = gauss_map(c);
    CHECK(tc.precision() == 4);
    CHECK(tc.frac() == std::vector<std::uint32_t>{1, 0, 1, 0});

    // T(0) := 0, flagged, never an error
    LaurentSeries z0 = LaurentSeries::zero(f, 7);
    CHECK(gauss_map(z0).is_zero_up_to_precision());
    CHECK(gauss_map(z0).precision() == 7);

    CHECK_THROWS_AS(gauss_map(LaurentSeries(Poly::z(f), {1})), std::invalid_argument);
}

TEST_CASE("ultrametric inequality on random pairs") {
    Rng rng(11);
    for (std::uint32_t q : {2u, 3u}) {
        FieldSpec f(q);
        for (int it = 0; it < 400; ++it) {
            LaurentSeries x = random_series(rng, f, 12, 3);
            LaurentSeries y = random_series(rng, f, 12, 3);
            Valuation vx = norm(x), vy = norm(y);
            if (vx.zero_up_to_precision() || vy.zero_up_to_precision()) continue;
            Valuation vs = norm(x + y);
            if (!vs.zero_up_to_precision())
                CHECK(vs.index() >= std::min(vx.index(), vy.index()));
            if (vx.index() != vy.index()) {
                REQUIRE(!vs.zero_up_to_precision());
                CHECK(vs.index() == std::min(vx.index(), vy.index()));
            }
        }
    }
}

TEST_CASE("norm is multiplicative on random pairs") {
    Rng rng(13);
    for (std::uint32_t q : {2u, 3u}) {
        FieldSpec f(q);
        for (int it = 0; it < 400; ++it) {
            LaurentSeries x = random_series(rng, f, 12, 3);
            LaurentSeries y = random_series(rng, f, 12, 3);
            Valuation vx = norm(x), vy = norm(y);
            if (vx.zero_up_to_precision() || vy.zero_up_to_precision()) continue;
            Valuation vp = norm(x * y);
            REQUIRE(!vp.zero_up_to_precision());
            CHECK(vp.index() == vx.index() + vy.index());
        }
    }
}

TEST_CASE("reciprocal roundtrip: x * (1/x) = 1 on every determined coefficient") {
    Rng rng(17);
    for (std::uint32_t q : {2u, 3u, 5u}) {
        FieldSpec f(q);
        for (int it = 0; it < 300; ++it) {
            LaurentSeries x = random_series(rng, f, 14, 3);
            Valuation v = norm(x);
            if (v.zero_up_to_precision()) continue;
            if (x.precision() - 2 * v.index() < 0) continue;
            LaurentSeries y = reciprocal(x);
            LaurentSeries prod = x * y;
            for (int idx = -20; idx <= prod.precision(); ++idx) {
                std::uint32_t expect = idx == 0 ? 1u : 0u;
                auto got = prod.coeff(idx);
                if (got) CHECK(*got == expect);
            }
        }
    }
}

TEST_CASE("series_from_rational long division") {
    FieldSpec f(2);
    LaurentSeries s = series_from_rational(Poly::z(f), poly_from_string(f, "z^2+1"), 8);
    CHECK(s.int_part().is_zero());
    CHECK(s.frac() == std::vector<std::uint32_t>{1, 0, 1, 0, 1, 0, 1, 0});

    LaurentSeries t = series_from_rational(poly_from_string(f, "z^3+z"), Poly::z(f), 4);
    CHECK(t.int_part() == poly_from_string(f, "z^2+1"));
    CHECK(t.frac() == std::vector<std::uint32_t>{0, 0, 0, 0});

    // x * Q = P on the determined window
    FieldSpec f3(3);
    Poly P = poly_from_string(f3, "z+2"), Q = poly_from_string(f3, "z^3+2*z+1");
    LaurentSeries x = series_from_rational(P, Q, 12);
    LaurentSeries back = mul_poly(x, Q);
    for (int idx = -3; idx <= back.precision(); ++idx) {
        auto got = back.coeff(idx);
        REQUIRE(got.has_value());
        CHECK(*got == P.coeff(-idx));
    }
}

TEST_CASE("mismatched fields are rejected") {
    FieldSpec f2(2), f3(3);
    LaurentSeries a = LaurentSeries::from_frac(f2, {1, 0});
    LaurentSeries b = LaurentSeries::from_frac(f3, {1, 0});
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
    CHECK_THROWS_AS(mul_poly(a, Poly::z(f3)), std::invalid_argument);
}

TEST_CASE("series text format roundtrip") {
    FieldSpec f(3);
    LaurentSeries a(poly_from_string(f, "z+1"), {1, 0, 2});
    CHECK(to_string(a) == "int=z+1; frac=1,0,2");
    CHECK(series_from_string(f, to_string(a)) == a);

    LaurentSeries b = LaurentSeries::zero(f, 0);
    CHECK(to_string(b) == "int=0; frac=");
    CHECK(series_from_string(f, to_string(b)) == b);

    CHECK_THROWS_AS(series_from_string(f, "frac=1,2"), std::invalid_argument);
    CHECK_THROWS_AS(series_from_string(f, "int=z; frac=1,,2"), std::invalid_argument);

    Rng rng(23);
    for (int it = 0; it < 100; ++it) {
        LaurentSeries x = random_series(rng, f, 6, 2);
        CHECK(series_from_string(f, to_string(x)) == x);
    }
}
