#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcf/field.hpp"

namespace lcf {

/// Polynomial in F_q[z]. Coefficients are stored ascending by power of z
/// in canonical form: the leading coefficient is nonzero, and the zero
/// polynomial has an empty coefficient vector. Its degree is a
/// distinguished "minus infinity" marker (nullopt), never an ordinary
/// integer, so degree sums cannot silently absorb it.
class Poly {
public:
    explicit Poly(FieldSpec f) : field_(f) {}
    Poly(FieldSpec f, std::vector<std::uint32_t> coeffs);

    static Poly zero(FieldSpec f) { return Poly(f); }
    static Poly constant(FieldSpec f, std::uint32_t c);
    static Poly monomial(FieldSpec f, std::uint32_t c, int power);
    static Poly z(FieldSpec f) { return monomial(f, 1, 1); }

    const FieldSpec& field() const noexcept { return field_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    std::optional<int> degree() const noexcept {
        if (coeffs_.empty()) return std::nullopt;
        return static_cast<int>(coeffs_.size()) - 1;
    }
    /// Coefficient of z^power; 0 beyond the degree.
    std::uint32_t coeff(int power) const noexcept {
        if (power < 0 || power >= static_cast<int>(coeffs_.size())) return 0;
        return coeffs_[static_cast<std::size_t>(power)];
    }
    std::uint32_t leading() const;
    bool is_monic() const { return !is_zero() && leading() == 1; }
    const std::vector<std::uint32_t>& coeffs() const noexcept { return coeffs_; }

    bool operator==(const Poly& o) const noexcept {
        return field_ == o.field_ && coeffs_ == o.coeffs_;
    }

    Poly operator-() const;

private:
    FieldSpec field_;
    std::vector<std::uint32_t> coeffs_;

    void normalize();
};

/// Degree of a nonzero polynomial; throws std::domain_error on zero.
int deg(const Poly& p);

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(std::uint32_t c, const Poly& a);

/// Quotient and remainder with deg r < deg b. Throws on division by the
/// zero polynomial or mismatched fields.
std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);

Poly monic(const Poly& a);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// Number of polynomials of exact degree d: (q-1) q^d.
/// Throws std::invalid_argument for d < 1 and std::overflow_error if the
/// count does not fit in 64 bits.
std::uint64_t poly_count_of_degree(FieldSpec f, int d);

/// Visits each polynomial of exact degree d once, in a fixed
/// lexicographic order.
void enumerate_polys(FieldSpec f, int d, const std::function<void(const Poly&)>& fn);

std::vector<Poly> all_polys_of_degree(FieldSpec f, int d);

/// Symbolic text form, e.g. "z^2+1" or "2*z^3+z+2". The parser accepts
/// terms in any order, an optional '*', and repeated terms (summed mod q).
std::string to_string(const Poly& p);
Poly poly_from_string(FieldSpec f, std::string_view text);

std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace lcf
