#include "lcf/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace lcf {

namespace {

void require_same_field(const LaurentSeries& a, const LaurentSeries& b) {
    if (!(a.field() == b.field()))
        throw std::invalid_argument("LaurentSeries: mismatched coefficient fields");
}

// Index of the lowest possibly-nonzero coefficient (most positive power of z).
int lowest_index(const LaurentSeries& x) {
    if (!x.int_part().is_zero()) return -deg(x.int_part());
    return 1;
}

// Valuation index, with the convention N+1 for a zero-up-to-precision series.
int valuation_or_sentinel(const LaurentSeries& x) {
    Valuation val = norm(x);
    return val.v ? *val.v : x.precision() + 1;
}

}  // namespace

LaurentSeries::LaurentSeries(Poly int_part, std::vector<std::uint32_t> frac)
    : int_part_(std::move(int_part)), frac_(std::move(frac)) {
    for (auto& c : frac_) c %= field().q;
}

LaurentSeries LaurentSeries::zero(FieldSpec f, int precision) {
    if (precision < 0) throw std::invalid_argument("LaurentSeries::zero: negative precision");
    return LaurentSeries(Poly::zero(f), std::vector<std::uint32_t>(static_cast<std::size_t>(precision), 0));
}

LaurentSeries LaurentSeries::from_frac(FieldSpec f, std::vector<std::uint32_t> frac) {
    return LaurentSeries(Poly::zero(f), std::move(frac));
}

bool LaurentSeries::is_zero_up_to_precision() const noexcept {
    if (!int_part_.is_zero()) return false;
    return std::all_of(frac_.begin(), frac_.end(), [](std::uint32_t c) { return c == 0; });
}

std::optional<std::uint32_t> LaurentSeries::coeff(int idx) const noexcept {
    if (idx <= 0) return int_part_.coeff(-idx);
    if (idx > precision()) return std::nullopt;
    return frac_[static_cast<std::size_t>(idx) - 1];
}

LaurentSeries LaurentSeries::truncated(int new_precision) const {
    if (new_precision < 0 || new_precision > precision())
        throw std::invalid_argument("LaurentSeries::truncated: precision not within the known window");
    return LaurentSeries(int_part_, std::vector<std::uint32_t>(frac_.begin(), frac_.begin() + new_precision));
}

double Valuation::norm_double(FieldSpec f) const {
    return v ? std::pow(static_cast<double>(f.q), -static_cast<double>(*v)) : 0.0;
}

Valuation norm(const LaurentSeries& x) {
    Valuation val;
    val.precision = x.precision();
    if (!x.int_part().is_zero()) {
        val.v = -deg(x.int_part());
        return val;
    }
    for (int j = 1; j <= x.precision(); ++j) {
        if (x.frac()[static_cast<std::size_t>(j) - 1] != 0) {
            val.v = j;
            return val;
        }
    }
    return val;
}

std::pair<Poly, LaurentSeries> split(const LaurentSeries& x) {
    return {x.int_part(), LaurentSeries(Poly::zero(x.field()), x.frac())};
}

namespace {

// Long-division coefficients of 1/x: d_0 = 1/c_v and
//   d_t = -1/c_v * sum_{i=1..t} c_{v+i} d_{t-i},
// where d_t sits at index -v+t of the output. Every c the loop touches
// has index <= v + t_max, which the callers keep within the known window.
std::vector<std::uint32_t> reciprocal_digits(const LaurentSeries& x, int v, int t_max) {
    const FieldSpec f = x.field();
    std::vector<std::uint32_t> d(static_cast<std::size_t>(t_max) + 1, 0);
    const std::uint32_t lead_inv = f.inv(*x.coeff(v));
    d[0] = lead_inv;
    for (int t = 1; t <= t_max; ++t) {
        std::uint32_t acc = 0;
        for (int i = 1; i <= t; ++i) {
            auto c = x.coeff(v + i);
            acc = f.add(acc, f.mul(c.value_or(0), d[static_cast<std::size_t>(t - i)]));
        }
        d[static_cast<std::size_t>(t)] = f.mul(f.neg(acc), lead_inv);
    }
    return d;
}

}  // namespace

LaurentSeries reciprocal(const LaurentSeries& x) {
    Valuation val = norm(x);
    if (val.zero_up_to_precision())
        throw std::domain_error("reciprocal: input is zero up to precision");
    const int v = val.index();
    const int N = x.precision();
    const int out_precision = N - 2 * v;
    if (out_precision < 0)
        throw PrecisionError("reciprocal: polynomial part of the output is not determined at precision " +
                             std::to_string(N));

    const int t_max = v + out_precision;  // output indices run -v .. -v+t_max = out_precision
    auto d = reciprocal_digits(x, v, t_max);

    const FieldSpec f = x.field();
    std::vector<std::uint32_t> int_coeffs(static_cast<std::size_t>(std::max(v, 0)) + 1, 0);
    std::vector<std::uint32_t> frac(static_cast<std::size_t>(out_precision), 0);
    for (int t = 0; t <= t_max; ++t) {
        int idx = -v + t;
        if (idx <= 0)
            int_coeffs[static_cast<std::size_t>(-idx)] = d[static_cast<std::size_t>(t)];
        else
            frac[static_cast<std::size_t>(idx) - 1] = d[static_cast<std::size_t>(t)];
    }
    return LaurentSeries(Poly(f, std::move(int_coeffs)), std::move(frac));
}

LaurentSeries gauss_map(const LaurentSeries& x) {
    if (!x.in_unit_ideal())
        throw std::invalid_argument("gauss_map: input must lie in the valuation ideal");
    Valuation val = norm(x);
    if (val.zero_up_to_precision()) return x;  // T(0) := 0
    const int v = val.index();
    const int N = x.precision();
    const int out_precision = std::max(N - 2 * v, 0);
    const int t_max = v + out_precision;
    auto d = reciprocal_digits(x, v, t_max);
    std::vector<std::uint32_t> frac(static_cast<std::size_t>(out_precision), 0);
    for (int j = 1; j <= out_precision; ++j)
        frac[static_cast<std::size_t>(j) - 1] = d[static_cast<std::size_t>(v + j)];
    return LaurentSeries::from_frac(x.field(), std::move(frac));
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    require_same_field(a, b);
    const int p = std::min(a.precision(), b.precision());
    std::vector<std::uint32_t> frac(static_cast<std::size_t>(p), 0);
    for (int j = 1; j <= p; ++j)
        frac[static_cast<std::size_t>(j) - 1] = a.field().add(*a.coeff(j), *b.coeff(j));
    return LaurentSeries(a.int_part() + b.int_part(), std::move(frac));
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
    require_same_field(a, b);
    const int p = std::min(a.precision(), b.precision());
    std::vector<std::uint32_t> frac(static_cast<std::size_t>(p), 0);
    for (int j = 1; j <= p; ++j)
        frac[static_cast<std::size_t>(j) - 1] = a.field().sub(*a.coeff(j), *b.coeff(j));
    return LaurentSeries(a.int_part() - b.int_part(), std::move(frac));
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    require_same_field(a, b);
    const FieldSpec f = a.field();
    const int va = valuation_or_sentinel(a);
    const int vb = valuation_or_sentinel(b);
    const int out_precision = std::min(a.precision() + vb, b.precision() + va);
    if (out_precision < 0)
        throw PrecisionError("series product: polynomial part of the output is not determined");

    const int lo_a = lowest_index(a), lo_b = lowest_index(b);
    const int lo = lo_a + lo_b;  // lowest index the product can touch
    std::vector<std::uint32_t> int_coeffs(static_cast<std::size_t>(std::max(-lo, 0)) + 1, 0);
    std::vector<std::uint32_t> frac(static_cast<std::size_t>(out_precision), 0);
    for (int t = lo; t <= out_precision; ++t) {
        std::uint32_t acc = 0;
        const int i_lo = std::max(lo_a, t - b.precision());
        const int i_hi = std::min(a.precision(), t - lo_b);
        for (int i = i_lo; i <= i_hi; ++i)
            acc = f.add(acc, f.mul(*a.coeff(i), *b.coeff(t - i)));
        if (t <= 0)
            int_coeffs[static_cast<std::size_t>(-t)] = acc;
        else
            frac[static_cast<std::size_t>(t) - 1] = acc;
    }
    return LaurentSeries(Poly(f, std::move(int_coeffs)), std::move(frac));
}

LaurentSeries mul_poly(const LaurentSeries& x, const Poly& g) {
    if (!(x.field() == g.field()))
        throw std::invalid_argument("mul_poly: mismatched coefficient fields");
    const FieldSpec f = x.field();
    if (g.is_zero()) return LaurentSeries::zero(f, x.precision());
    const int dg = deg(g);
    const int out_precision = x.precision() - dg;
    if (out_precision < 0)
        throw PrecisionError("mul_poly: polynomial part of the output is not determined");
    const int lo = lowest_index(x) - dg;
    std::vector<std::uint32_t> int_coeffs(static_cast<std::size_t>(std::max(-lo, 0)) + 1, 0);
    std::vector<std::uint32_t> frac(static_cast<std::size_t>(out_precision), 0);
    for (int t = lo; t <= out_precision; ++t) {
        std::uint32_t acc = 0;
        for (int j = 0; j <= dg; ++j) {
            int xi = t + j;  // coefficient of z^j in g pairs with index t+j in x
            if (xi < lowest_index(x) || xi > x.precision()) continue;
            acc = f.add(acc, f.mul(g.coeff(j), *x.coeff(xi)));
        }
        if (t <= 0)
            int_coeffs[static_cast<std::size_t>(-t)] = acc;
        else
            frac[static_cast<std::size_t>(t) - 1] = acc;
    }
    return LaurentSeries(Poly(f, std::move(int_coeffs)), std::move(frac));
}

LaurentSeries series_from_rational(const Poly& P, const Poly& Q, int N) {
    if (Q.is_zero()) throw std::domain_error("series_from_rational: zero denominator");
    if (N < 0) throw std::invalid_argument("series_from_rational: negative precision");
    auto [ip, rem] = divrem(P, Q);
    const Poly zpoly = Poly::z(P.field());
    std::vector<std::uint32_t> frac;
    frac.reserve(static_cast<std::size_t>(N));
    Poly cur = rem;
    for (int n = 1; n <= N; ++n) {
        cur = cur * zpoly;
        auto [d, r] = divrem(cur, Q);
        frac.push_back(d.coeff(0));
        cur = r;
    }
    return LaurentSeries(std::move(ip), std::move(frac));
}

std::string to_string(const LaurentSeries& x) {
    std::ostringstream os;
    os << "int=" << to_string(x.int_part()) << "; frac=";
    for (std::size_t i = 0; i < x.frac().size(); ++i) {
        if (i) os << ',';
        os << x.frac()[i];
    }
    return os.str();
}

LaurentSeries series_from_string(FieldSpec f, std::string_view text) {
    auto semi = text.find(';');
    if (semi == std::string_view::npos)
        throw std::invalid_argument("series_from_string: expected 'int=...; frac=...'");
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    std::string_view int_field = trim(text.substr(0, semi));
    std::string_view frac_field = trim(text.substr(semi + 1));
    if (!int_field.starts_with("int=") || !frac_field.starts_with("frac="))
        throw std::invalid_argument("series_from_string: expected 'int=...; frac=...'");
    Poly ip = poly_from_string(f, int_field.substr(4));
    std::string_view list = trim(frac_field.substr(5));
    std::vector<std::uint32_t> frac;
    if (!list.empty()) {
        std::size_t pos = 0;
        while (pos <= list.size()) {
            std::size_t comma = list.find(',', pos);
            std::string tok(trim(list.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                  : comma - pos)));
            if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) {
                    return std::isdigit(static_cast<unsigned char>(c));
                }))
                throw std::invalid_argument("series_from_string: bad fractional coefficient '" + tok + "'");
            frac.push_back(static_cast<std::uint32_t>(std::stoul(tok) % f.q));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
    }
    return LaurentSeries(std::move(ip), std::move(frac));
}

std::ostream& operator<<(std::ostream& os, const LaurentSeries& x) { return os << to_string(x); }

}  // namespace lcf
