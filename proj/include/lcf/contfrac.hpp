#pragma once

#include <string>
#include <vector>

#include "lcf/laurent.hpp"
#include "lcf/poly.hpp"

namespace lcf {

/// Continued-fraction expansion produced by Artin's algorithm. Every
/// quotient has degree >= 1. `certified` counts the prefix guaranteed
/// correct at the input precision: for truncated input it is the largest
/// n with 2*sum_{i<=n} deg A_i <= N. Any series agreeing with the input
/// on the first N coefficients lies in the same order-n cylinder for
/// such n, because the cylinder I(A_1,...,A_n) is a disc of diameter
/// q^{-2 sum deg A_i - 1} and the two series are q^{-N-1}-close.
/// `terminated` records that an exact rational input was exhausted;
/// a truncation can never certify termination of the underlying series.
struct CFExpansion {
    FieldSpec field;
    std::vector<Poly> quotients;
    std::size_t certified = 0;
    bool terminated = false;
};

struct Convergent {
    Poly p;
    Poly q;
    int index;
};

/// A rational function in lowest terms with a monic denominator.
struct RationalFn {
    Poly num;
    Poly den;
};

RationalFn make_rational_fn(const Poly& num, const Poly& den);

/// Exact terminated expansion of P/Q in I via the Euclidean algorithm.
CFExpansion expand_rational(const Poly& P, const Poly& Q);

/// Expansion of a truncated series: the Gauss map is iterated on the
/// zero-padded truncation (each Euclid step below is one application of
/// T to the padded value). Quotients are emitted while any coefficient
/// of the iterate is still input-determined; the `certified` rule above
/// marks how many are independent of the padding. Pass max_quotients >= 0
/// to cap the output length.
CFExpansion expand_truncated(const LaurentSeries& x, long max_quotients = -1);

/// Convergents from the recursion P_n = A_n P_{n-1} + P_{n-2},
/// Q_n = A_n Q_{n-1} + Q_{n-2} seeded with P_{-1}=1, P_0=0, Q_{-1}=0,
/// Q_0=1; returned for indices 1..n.
std::vector<Convergent> convergents(const CFExpansion& cf);

/// Value of the expansion in lowest terms.
RationalFn reconstruct(const CFExpansion& cf);

struct IdentityCheck {
    std::string name;
    bool ok;
    std::string detail;
};

struct IdentityReport {
    int n;
    std::vector<IdentityCheck> checks;
    bool all_ok;
};

/// Exact verification of the four convergent identities at index n:
///   (i)   gcd(P_n, Q_n) = 1
///   (ii)  Q_n P_{n-1} - P_n Q_{n-1} = (-1)^n
///   (iii) deg Q_n = sum deg A_i
///   (iv)  |x - P_n/Q_n| = 1/(|Q_n| |Q_{n+1}|)
/// (iv) is vacuous (zero error) when x equals its nth convergent.
IdentityReport check_identities(const RationalFn& x, int n);

/// deg A_n + deg A_{n+1}; requires the expansion certified past n+1.
int relative_error_log(const CFExpansion& cf, int n);

/// Same value, cross-checked exactly against
/// log_q(|x - P_{n-1}/Q_{n-1}| / |x - P_n/Q_n|).
int relative_error_log_checked(const RationalFn& x, int n);

}  // namespace lcf
