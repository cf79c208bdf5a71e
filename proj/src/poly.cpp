#include "lcf/poly.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace lcf {

namespace {

void require_same_field(const Poly& a, const Poly& b) {
    if (!(a.field() == b.field()))
        throw std::invalid_argument("Poly: mismatched coefficient fields");
}

}  // namespace

Poly::Poly(FieldSpec f, std::vector<std::uint32_t> coeffs) : field_(f), coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c %= field_.q;
    normalize();
}

void Poly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::constant(FieldSpec f, std::uint32_t c) {
    return Poly(f, std::vector<std::uint32_t>{c % f.q});
}

Poly Poly::monomial(FieldSpec f, std::uint32_t c, int power) {
    if (power < 0) throw std::invalid_argument("Poly::monomial: negative power");
    std::vector<std::uint32_t> v(static_cast<std::size_t>(power) + 1, 0);
    v.back() = c % f.q;
    return Poly(f, std::move(v));
}

std::uint32_t Poly::leading() const {
    if (coeffs_.empty()) throw std::domain_error("Poly::leading: zero polynomial");
    return coeffs_.back();
}

Poly Poly::operator-() const {
    std::vector<std::uint32_t> v(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] = field_.neg(coeffs_[i]);
    return Poly(field_, std::move(v));
}

int deg(const Poly& p) {
    auto d = p.degree();
    if (!d) throw std::domain_error("deg: zero polynomial has no finite degree");
    return *d;
}

Poly operator+(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    const auto& f = a.field();
    std::vector<std::uint32_t> v(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return Poly(f, std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    const auto& f = a.field();
    std::vector<std::uint32_t> v(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.sub(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    return Poly(f, std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    const auto& f = a.field();
    if (a.is_zero() || b.is_zero()) return Poly::zero(f);
    std::vector<std::uint32_t> v(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            v[i + j] = f.add(v[i + j], f.mul(a.coeffs()[i], b.coeffs()[j]));
    }
    return Poly(f, std::move(v));
}

Poly operator*(std::uint32_t c, const Poly& a) {
    const auto& f = a.field();
    std::vector<std::uint32_t> v(a.coeffs());
    for (auto& x : v) x = f.mul(c % f.q, x);
    return Poly(f, std::move(v));
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    if (b.is_zero()) throw std::domain_error("divrem: division by the zero polynomial");
    const auto& f = a.field();
    if (a.is_zero() || deg(a) < deg(b)) return {Poly::zero(f), a};

    std::vector<std::uint32_t> rem(a.coeffs());
    const int db = deg(b);
    const std::uint32_t lb_inv = f.inv(b.leading());
    std::vector<std::uint32_t> quot(a.coeffs().size() - b.coeffs().size() + 1, 0);
    for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
        std::uint32_t c = rem[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        std::uint32_t qc = f.mul(c, lb_inv);
        quot[static_cast<std::size_t>(i - db)] = qc;
        for (int j = 0; j <= db; ++j) {
            auto& r = rem[static_cast<std::size_t>(i - db + j)];
            r = f.sub(r, f.mul(qc, b.coeff(j)));
        }
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Poly(f, std::move(quot)), Poly(f, std::move(rem))};
}

Poly monic(const Poly& a) {
    if (a.is_zero()) return a;
    return a.field().inv(a.leading()) * a;
}

Poly gcd(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divrem(x, y).second;
        x = y;
        y = r;
    }
    return monic(x);
}

std::uint64_t poly_count_of_degree(FieldSpec f, int d) {
    if (d < 1) throw std::invalid_argument("poly_count_of_degree: degree must be >= 1");
    std::uint64_t n = f.q - 1;
    for (int i = 0; i < d; ++i) {
        if (n > UINT64_MAX / f.q) throw std::overflow_error("poly_count_of_degree: count exceeds 64 bits");
        n *= f.q;
    }
    return n;
}

void enumerate_polys(FieldSpec f, int d, const std::function<void(const Poly&)>& fn) {
    if (d < 1) throw std::invalid_argument("enumerate_polys: degree must be >= 1");
    std::vector<std::uint32_t> c(static_cast<std::size_t>(d) + 1, 0);
    for (std::uint32_t lead = 1; lead < f.q; ++lead) {
        c.back() = lead;
        std::fill(c.begin(), c.end() - 1, 0);
        for (;;) {
            fn(Poly(f, c));
            // odometer over the d lower coefficients
            int i = 0;
            while (i < d && ++c[static_cast<std::size_t>(i)] == f.q) {
                c[static_cast<std::size_t>(i)] = 0;
                ++i;
            }
            if (i == d) break;
        }
    }
}

std::vector<Poly> all_polys_of_degree(FieldSpec f, int d) {
    std::vector<Poly> out;
    out.reserve(poly_count_of_degree(f, d));
    enumerate_polys(f, d, [&](const Poly& p) { out.push_back(p); });
    return out;
}

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(p); i >= 0; --i) {
        std::uint32_t c = p.coeff(i);
        if (c == 0) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0) {
            os << c;
        } else {
            if (c != 1) os << c << '*';
            os << 'z';
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

Poly poly_from_string(FieldSpec f, std::string_view text) {
    std::string s;
    s.reserve(text.size());
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("poly_from_string: empty input");
    if (s.find('-') != std::string::npos)
        throw std::invalid_argument("poly_from_string: coefficients are residues in 0..q-1; '-' not accepted");

    std::vector<std::uint32_t> coeffs;
    auto add_term = [&](std::uint64_t c, int power) {
        if (power >= static_cast<int>(coeffs.size())) coeffs.resize(static_cast<std::size_t>(power) + 1, 0);
        coeffs[static_cast<std::size_t>(power)] = f.add(coeffs[static_cast<std::size_t>(power)], f.reduce(c));
    };

    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = s.find('+', pos);
        std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? s.size() : end + 1;
        if (term.empty()) throw std::invalid_argument("poly_from_string: empty term");

        std::uint64_t c = 1;
        std::size_t i = 0;
        if (std::isdigit(static_cast<unsigned char>(term[0]))) {
            c = 0;
            while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) {
                c = c * 10 + static_cast<std::uint64_t>(term[i] - '0');
                if (c > (1ull << 62)) c %= f.q;
                ++i;
            }
            if (i < term.size() && term[i] == '*') ++i;
            if (i == term.size()) {
                add_term(c, 0);
                continue;
            }
        }
        if (i >= term.size() || term[i] != 'z')
            throw std::invalid_argument("poly_from_string: bad term '" + term + "'");
        ++i;
        int power = 1;
        if (i < term.size()) {
            if (term[i] != '^') throw std::invalid_argument("poly_from_string: bad term '" + term + "'");
            ++i;
            if (i == term.size()) throw std::invalid_argument("poly_from_string: missing exponent in '" + term + "'");
            power = 0;
            while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) {
                power = power * 10 + (term[i] - '0');
                if (power > 1'000'000) throw std::invalid_argument("poly_from_string: exponent too large");
                ++i;
            }
            if (i != term.size()) throw std::invalid_argument("poly_from_string: bad exponent in '" + term + "'");
        }
        add_term(c, power);
    }
    return Poly(f, std::move(coeffs));
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

}  // namespace lcf
