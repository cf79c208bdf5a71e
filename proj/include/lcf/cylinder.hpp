#pragma once

#include <vector>

#include "lcf/field.hpp"
#include "lcf/poly.hpp"
#include "lcf/rational.hpp"

namespace lcf {

/// Degree data of an nth order cylinder I(A_1,...,A_n); only the
/// degrees of the quotients enter its Haar measure and diameter.
struct CylinderSpec {
    FieldSpec field;
    std::vector<int> degrees;  // each >= 1
};

/// The cylinder of an explicit quotient prefix.
CylinderSpec cylinder_of(const std::vector<Poly>& quotients);

/// q^(-2 sum d_i - 1).
Rational cylinder_diameter(const CylinderSpec& c);

/// q^(-2 sum d_i).
Rational cylinder_measure(const CylinderSpec& c);

/// Diameter of G(A_1,...,A_n) = union over deg A_{n+1} >= m of the
/// order-(n+1) cylinders below a fixed prefix: q^(-m - 2 sum prefix).
Rational gset_diameter(FieldSpec f, const std::vector<int>& prefix_degrees, int m);

/// Number of order-k cylinders with degree sum m:
/// C(m-1, k-1) (q-1)^k q^m; zero when m < k.
BigInt count_cylinders(FieldSpec f, int m, int k);

/// nu({x : deg A_1 + ... + deg A_k = m}) = C(m-1,k-1) (q-1)^k q^-m.
Rational measure_degree_sum(FieldSpec f, int m, int k);

/// Exact infinite tail sum_{m >= M} C(m-1,k-1) (q-1)^k q^-m, i.e.
/// nu({x : deg A_1 + ... + deg A_k >= M}). Computed by the terminating
/// recursion (1-x) S_k(M) = C(M-1,k-1) x^M + x S_{k-1}(M) with
/// S_1(M) = x^M/(1-x) at x = 1/q, which follows from Pascal's rule.
/// Returns 1 when M <= k (the event is the whole space).
Rational tail_measure(FieldSpec f, int M, int k);

}  // namespace lcf
