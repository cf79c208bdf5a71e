#include "lcf/cylinder.hpp"

#include <stdexcept>

namespace lcf {

namespace {

long checked_degree_sum(const std::vector<int>& degrees) {
    long sum = 0;
    for (int d : degrees) {
        if (d < 1) throw std::invalid_argument("cylinder: all degrees must be >= 1");
        sum += d;
    }
    return sum;
}

}  // namespace

CylinderSpec cylinder_of(const std::vector<Poly>& quotients) {
    if (quotients.empty()) throw std::invalid_argument("cylinder_of: empty quotient list");
    CylinderSpec spec{quotients.front().field(), {}};
    for (const Poly& a : quotients) {
        if (a.is_zero() || deg(a) < 1)
            throw std::invalid_argument("cylinder_of: quotients must have degree >= 1");
        if (!(a.field() == spec.field)) throw std::invalid_argument("cylinder_of: mismatched fields");
        spec.degrees.push_back(deg(a));
    }
    return spec;
}

Rational cylinder_diameter(const CylinderSpec& c) {
    return q_pow(c.field.q, -(2 * checked_degree_sum(c.degrees) + 1));
}

Rational cylinder_measure(const CylinderSpec& c) {
    return q_pow(c.field.q, -2 * checked_degree_sum(c.degrees));
}

Rational gset_diameter(FieldSpec f, const std::vector<int>& prefix_degrees, int m) {
    if (m < 1) throw std::invalid_argument("gset_diameter: m must be >= 1");
    return q_pow(f.q, -(m + 2 * checked_degree_sum(prefix_degrees)));
}

BigInt count_cylinders(FieldSpec f, int m, int k) {
    if (k < 1) throw std::invalid_argument("count_cylinders: k must be >= 1");
    if (m < k) return 0;  // no compositions of m into k positive parts
    return binomial(static_cast<unsigned long>(m) - 1, static_cast<unsigned long>(k) - 1) *
           big_pow(f.q - 1, static_cast<unsigned long>(k)) *
           big_pow(f.q, static_cast<unsigned long>(m));
}

Rational measure_degree_sum(FieldSpec f, int m, int k) {
    if (k < 1) throw std::invalid_argument("measure_degree_sum: k must be >= 1");
    if (m < k) return Rational(0);
    Rational r = Rational(count_cylinders(f, m, k)) * q_pow(f.q, -2L * m);
    r.canonicalize();
    return r;
}

Rational tail_measure(FieldSpec f, int M, int k) {
    if (k < 1) throw std::invalid_argument("tail_measure: k must be >= 1");
    if (M <= k) return Rational(1);  // minimum degree sum is k

    const Rational x(1, f.q);
    const Rational one_minus_x = Rational(1) - x;
    const Rational xM = q_pow(f.q, -M);

    Rational s = xM / one_minus_x;  // S_1(M)
    for (int j = 2; j <= k; ++j) {
        s = (Rational(binomial(static_cast<unsigned long>(M) - 1, static_cast<unsigned long>(j) - 1)) * xM +
             x * s) /
            one_minus_x;
    }
    Rational r = Rational(big_pow(f.q - 1, static_cast<unsigned long>(k))) * s;
    r.canonicalize();
    return r;
}

}  // namespace lcf
