#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace lcf {

/// Exact arithmetic for all Haar-measure and counting computations.
/// Rational values are kept reduced with a positive denominator
/// (mpq canonical form); floating point enters only in the dimension
/// solvers.
using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt big_pow(std::uint32_t base, unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

/// q^e as an exact rational; e may be negative.
inline Rational q_pow(std::uint32_t q, long e) {
    BigInt p = big_pow(q, static_cast<unsigned long>(e < 0 ? -e : e));
    Rational r = e < 0 ? Rational(1, p) : Rational(p);
    r.canonicalize();
    return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

/// "num/den", or just "num" when the denominator is 1.
inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace lcf
