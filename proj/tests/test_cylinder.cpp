#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcf/cylinder.hpp"
#include "lcf/poly.hpp"

using namespace lcf;

namespace {

// Independent counting oracle: walk every k-tuple of polynomials with
// the prescribed total degree, one concrete tuple per leaf.
void walk_tuples(FieldSpec f, int m, int k, std::uint64_t& count) {
    if (k == 0) {
        if (m == 0) ++count;
        return;
    }
    for (int d = 1; d + (k - 1) <= m; ++d)
        enumerate_polys(f, d, [&](const Poly&) { walk_tuples(f, m - d, k - 1, count); });
}

std::uint64_t count_by_enumeration(FieldSpec f, int m, int k) {
    std::uint64_t count = 0;
    walk_tuples(f, m, k, count);
    return count;
}

}  // namespace

TEST_CASE("cylinder diameter and measure") {
    FieldSpec f2(2), f3(3);
    CHECK(cylinder_diameter({f2, {1}}) == Rational(1, 8));
    CHECK(cylinder_diameter({f2, {1, 1}}) == Rational(1, 32));
    CHECK(cylinder_diameter({f3, {2}}) == Rational(1, 243));

    CHECK(cylinder_measure({f2, {1}}) == Rational(1, 4));
    CHECK(cylinder_measure({f2, {1, 1}}) == Rational(1, 16));

    // two degree-1 quotients over F_2, each of measure 1/4
    Rational sum = 0;
    enumerate_polys(f2, 1, [&](const Poly& p) { sum += cylinder_measure({f2, {deg(p)}}); });
    CHECK(sum == Rational(1, 2));
    CHECK(sum == measure_degree_sum(f2, 1, 1));

    CHECK_THROWS_AS(cylinder_measure({f2, {0}}), std::invalid_argument);

    // explicit quotients carry the same data through their degrees
    CylinderSpec fromq = cylinder_of({Poly::z(f2), poly_from_string(f2, "z^2+z")});
    CHECK(fromq.degrees == std::vector<int>{1, 2});
    CHECK(cylinder_measure(fromq) == q_pow(2, -6));
    CHECK_THROWS_AS(cylinder_of({Poly::constant(f2, 1)}), std::invalid_argument);
}

TEST_CASE("G-set diameter") {
    FieldSpec f2(2), f3(3);
    CHECK(gset_diameter(f2, {}, 3) == Rational(1, 8));
    CHECK(gset_diameter(f2, {1}, 2) == Rational(1, 16));
    CHECK(gset_diameter(f3, {1, 1}, 1) == q_pow(3, -5));
    CHECK_THROWS_AS(gset_diameter(f2, {}, 0), std::invalid_argument);
}

TEST_CASE("count_cylinders examples") {
    FieldSpec f2(2), f3(3);
    CHECK(count_cylinders(f2, 3, 2) == 16);
    CHECK(count_cylinders(f3, 2, 1) == 18);
    CHECK(count_cylinders(f2, 3, 3) == 8);
    CHECK(count_cylinders(f2, 1, 2) == 0);  // m < k
    CHECK_THROWS_AS(count_cylinders(f2, 3, 0), std::invalid_argument);
}

TEST_CASE("count_cylinders equals exhaustive enumeration") {
    for (std::uint32_t q : {2u, 3u}) {
        FieldSpec f(q);
        for (int k = 1; k <= 3; ++k)
            for (int m = 1; m <= 8; ++m) {
                BigInt expected = count_cylinders(f, m, k);
                std::uint64_t counted = count_by_enumeration(f, m, k);
                INFO("q=" << q << " m=" << m << " k=" << k);
                CHECK(expected == BigInt(static_cast<unsigned long>(counted)));
            }
    }
}

TEST_CASE("measure_degree_sum examples and normalization") {
    FieldSpec f2(2);
    CHECK(measure_degree_sum(f2, 1, 1) == Rational(1, 2));
    CHECK(measure_degree_sum(f2, 2, 2) == Rational(1, 4));
    CHECK(measure_degree_sum(f2, 2, 2) == Rational(count_cylinders(f2, 2, 2)) * q_pow(2, -4));

    for (std::uint32_t q : {2u, 3u, 5u}) {
        FieldSpec f(q);
        for (int k = 1; k <= 3; ++k) {
            Rational total = 0;
            for (int m = k; m <= 200; ++m) total += measure_degree_sum(f, m, k);
            total += tail_measure(f, 201, k);
            INFO("q=" << q << " k=" << k);
            CHECK(total == Rational(1));
        }
    }
}

TEST_CASE("tail_measure examples") {
    FieldSpec f2(2);
    CHECK(tail_measure(f2, 1, 1) == Rational(1));
    CHECK(tail_measure(f2, 2, 2) == Rational(1));
    CHECK(tail_measure(f2, 3, 2) == Rational(3, 4));
    CHECK(tail_measure(f2, 3, 2) == Rational(1) - measure_degree_sum(f2, 2, 2));
    CHECK(tail_measure(f2, 0, 2) == Rational(1));  // M < k: whole space
}

TEST_CASE("tail recursion equals brute-force partial sums exactly") {
    for (std::uint32_t q : {2u, 3u, 5u}) {
        FieldSpec f(q);
        for (int k = 1; k <= 3; ++k)
            for (int M : {k, k + 1, k + 5, 20}) {
                Rational partial = 0;
                const int T = 200;
                for (int m = M; m <= T; ++m) partial += measure_degree_sum(f, m, k);
                // the exact remainder of the brute-force sum is the tail at T+1
                CHECK(tail_measure(f, M, k) == partial + tail_measure(f, T + 1, k));
                CHECK(to_double(tail_measure(f, T + 1, k)) < 1e-40);
            }
    }
}

TEST_CASE("tail_measure is comparable to M^(k-1) q^-M with bounded constants") {
    for (std::uint32_t q : {2u, 3u, 5u}) {
        FieldSpec f(q);
        for (int k = 1; k <= 3; ++k) {
            double lo = 1e300, hi = 0;
            for (int M = k + 1; M <= 60; ++M) {
                Rational scale = q_pow(q, -M);  // M^(k-1) q^-M
                for (int i = 0; i < k - 1; ++i) scale *= M;
                double ratio = to_double(tail_measure(f, M, k) / scale);
                CHECK(ratio > 0);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
            INFO("q=" << q << " k=" << k << " ratio range [" << lo << ", " << hi << "]");
            CHECK(hi / lo <= 4.0);
        }
    }
}
