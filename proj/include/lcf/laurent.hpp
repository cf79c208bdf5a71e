#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lcf/poly.hpp"
#include "lcf/rational.hpp"

namespace lcf {

/// Raised when an operation cannot determine all coefficients it is
/// contracted to emit from the known window of its inputs.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A truncated element of F_q((z^-1)): an exact polynomial part plus the
/// first `precision` fractional coefficients. frac()[n-1] is the
/// coefficient of z^-n. Coefficients past the precision window are
/// unknown, not zero; every operation records how many output fractional
/// coefficients are fully determined by its inputs, and consumers must
/// not read past that.
class LaurentSeries {
public:
    LaurentSeries(Poly int_part, std::vector<std::uint32_t> frac);
    static LaurentSeries zero(FieldSpec f, int precision);
    static LaurentSeries from_frac(FieldSpec f, std::vector<std::uint32_t> frac);

    const FieldSpec& field() const noexcept { return int_part_.field(); }
    const Poly& int_part() const noexcept { return int_part_; }
    const std::vector<std::uint32_t>& frac() const noexcept { return frac_; }
    int precision() const noexcept { return static_cast<int>(frac_.size()); }

    /// True when the polynomial part is zero, i.e. the series lies in the
    /// valuation ideal I = {x : |x|_inf < 1}.
    bool in_unit_ideal() const noexcept { return int_part_.is_zero(); }

    /// All known coefficients vanish. Says nothing about coefficients
    /// beyond the precision window.
    bool is_zero_up_to_precision() const noexcept;

    /// Coefficient of z^-idx (idx <= 0 addresses the polynomial part);
    /// nullopt when idx lies beyond the known window.
    std::optional<std::uint32_t> coeff(int idx) const noexcept;

    LaurentSeries truncated(int new_precision) const;

    bool operator==(const LaurentSeries& o) const noexcept {
        return int_part_ == o.int_part_ && frac_ == o.frac_;
    }

private:
    Poly int_part_;
    std::vector<std::uint32_t> frac_;
};

/// The valuation of a truncated series: v is the index of the first
/// nonzero coefficient and |x|_inf = q^-v. A series whose known
/// coefficients all vanish is flagged "zero up to precision" and v is
/// absent (|0|_inf := 0).
struct Valuation {
    std::optional<int> v;
    int precision = 0;

    bool zero_up_to_precision() const noexcept { return !v.has_value(); }
    int index() const {
        if (!v) throw std::domain_error("Valuation: zero up to precision, no finite index");
        return *v;
    }
    Rational norm(FieldSpec f) const { return v ? q_pow(f.q, -*v) : Rational(0); }
    double norm_double(FieldSpec f) const;
};

Valuation norm(const LaurentSeries& x);

/// ([x], {x}) with x = [x] + {x}; the fractional part keeps the
/// precision window of x.
std::pair<Poly, LaurentSeries> split(const LaurentSeries& x);

/// y with x*y = 1 on every determined coefficient. If v is the valuation
/// index of x and N its precision, the long-division recurrence
/// determines the output coefficient of z^-(v+t... ) at offset t exactly
/// from c_v..c_{v+t}, so the emitted window ends at index N - 2v: the
/// output precision is N - 2v. Throws PrecisionError when even the
/// polynomial part of the output is not input-determined (2v > N), and
/// std::domain_error on a zero-up-to-precision input.
LaurentSeries reciprocal(const LaurentSeries& x);

/// The Gauss map T(x) = 1/x - [1/x] on the valuation ideal, T(0) := 0.
/// A zero-up-to-precision input maps to a zero-up-to-precision output of
/// the same precision rather than an error. Output precision is
/// max(N - 2v, 0).
LaurentSeries gauss_map(const LaurentSeries& x);

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);

/// Product; the output window is min(Na + vb, Nb + va) where a
/// zero-up-to-precision operand contributes v = N + 1.
LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

LaurentSeries mul_poly(const LaurentSeries& x, const Poly& g);

/// Expansion of P/Q (deg P < deg Q allowed to fail: the polynomial part
/// is split off) to N fractional coefficients, exact by long division.
LaurentSeries series_from_rational(const Poly& P, const Poly& Q, int N);

/// Text form "int=<poly>; frac=<c1,c2,...,cN>"; parser and printer
/// roundtrip. An empty frac list is written "frac=".
std::string to_string(const LaurentSeries& x);
LaurentSeries series_from_string(FieldSpec f, std::string_view text);

std::ostream& operator<<(std::ostream& os, const LaurentSeries& x);

}  // namespace lcf
