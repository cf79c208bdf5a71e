#include "lcf/contfrac.hpp"

#include <sstream>

namespace lcf {

RationalFn make_rational_fn(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw std::domain_error("make_rational_fn: zero denominator");
    if (num.is_zero()) return {Poly::zero(num.field()), Poly::constant(den.field(), 1)};
    Poly g = gcd(num, den);
    Poly n = divrem(num, g).first;
    Poly d = divrem(den, g).first;
    std::uint32_t lead_inv = d.field().inv(d.leading());
    return {lead_inv * n, lead_inv * d};
}

CFExpansion expand_rational(const Poly& P, const Poly& Q) {
    if (Q.is_zero()) throw std::domain_error("expand_rational: zero denominator");
    CFExpansion cf{P.field(), {}, 0, true};
    RationalFn x = make_rational_fn(P, Q);
    if (x.num.is_zero()) return cf;
    if (deg(x.num) >= deg(x.den))
        throw std::invalid_argument("expand_rational: P/Q must lie in the valuation ideal (deg P < deg Q)");
    Poly r = x.num, s = x.den;  // value r/s, deg r < deg s
    while (!r.is_zero()) {
        auto [a, rem] = divrem(s, r);
        cf.quotients.push_back(a);
        s = r;
        r = rem;
    }
    cf.certified = cf.quotients.size();
    return cf;
}

CFExpansion expand_truncated(const LaurentSeries& x, long max_quotients) {
    if (!x.in_unit_ideal())
        throw std::invalid_argument("expand_truncated: input must lie in the valuation ideal");
    const FieldSpec f = x.field();
    const int N = x.precision();
    CFExpansion cf{f, {}, 0, false};

    // Zero-padded truncation as an exact rational: R/S with S = z^N.
    std::vector<std::uint32_t> rc(static_cast<std::size_t>(N), 0);
    for (int n = 1; n <= N; ++n) rc[static_cast<std::size_t>(N - n)] = x.frac()[static_cast<std::size_t>(n) - 1];
    Poly r(f, std::move(rc));
    Poly s = Poly::monomial(f, 1, N);

    int window = N;  // fractional coefficients of the current iterate still input-determined
    while (window > 0 && !r.is_zero()) {
        if (max_quotients >= 0 && static_cast<long>(cf.quotients.size()) >= max_quotients) break;
        int v = deg(s) - deg(r);
        if (v > window) break;  // iterate is zero up to the determined window
        auto [a, rem] = divrem(s, r);
        cf.quotients.push_back(a);
        window -= 2 * v;
        s = r;
        r = rem;
    }

    long acc = 0;
    for (const Poly& a : cf.quotients) {
        acc += 2 * deg(a);
        if (acc > N) break;
        ++cf.certified;
    }
    return cf;
}

std::vector<Convergent> convergents(const CFExpansion& cf) {
    std::vector<Convergent> out;
    out.reserve(cf.quotients.size());
    Poly p_prev2 = Poly::constant(cf.field, 1), p_prev1 = Poly::zero(cf.field);
    Poly q_prev2 = Poly::zero(cf.field), q_prev1 = Poly::constant(cf.field, 1);
    int idx = 0;
    for (const Poly& a : cf.quotients) {
        ++idx;
        Poly p = a * p_prev1 + p_prev2;
        Poly q = a * q_prev1 + q_prev2;
        out.push_back({p, q, idx});
        p_prev2 = p_prev1;
        p_prev1 = p;
        q_prev2 = q_prev1;
        q_prev1 = q;
    }
    return out;
}

RationalFn reconstruct(const CFExpansion& cf) {
    if (cf.quotients.empty()) return {Poly::zero(cf.field), Poly::constant(cf.field, 1)};
    auto cs = convergents(cf);
    return make_rational_fn(cs.back().p, cs.back().q);
}

namespace {

// Exact norm exponent of a nonzero rational function: log_q |num/den|.
int norm_exponent(const RationalFn& x) { return deg(x.num) - deg(x.den); }

RationalFn sub_exact(const RationalFn& x, const Poly& p, const Poly& q) {
    return make_rational_fn(x.num * q - p * x.den, x.den * q);
}

}  // namespace

IdentityReport check_identities(const RationalFn& x, int n) {
    if (n < 1) throw std::invalid_argument("check_identities: n must be >= 1");
    CFExpansion cf = expand_rational(x.num, x.den);
    if (static_cast<std::size_t>(n) > cf.quotients.size())
        throw std::invalid_argument("check_identities: expansion has only " +
                                    std::to_string(cf.quotients.size()) + " quotients");
    auto cs = convergents(cf);
    const FieldSpec f = cf.field;
    const Convergent& cn = cs[static_cast<std::size_t>(n) - 1];
    Poly p_prev = n >= 2 ? cs[static_cast<std::size_t>(n) - 2].p : Poly::zero(f);
    Poly q_prev = n >= 2 ? cs[static_cast<std::size_t>(n) - 2].q : Poly::constant(f, 1);

    IdentityReport rep{n, {}, true};
    auto add = [&](std::string name, bool ok, std::string detail) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
        rep.all_ok = rep.all_ok && ok;
    };

    {
        Poly g = gcd(cn.p, cn.q);
        add("coprime", g == Poly::constant(f, 1), "gcd(P_n,Q_n) = " + to_string(g));
    }
    {
        Poly lhs = cn.q * p_prev - cn.p * q_prev;
        Poly rhs = Poly::constant(f, n % 2 == 0 ? 1 : f.neg(1));
        add("determinant", lhs == rhs,
            "Q_n P_{n-1} - P_n Q_{n-1} = " + to_string(lhs) + ", expected " + to_string(rhs));
    }
    {
        int sum = 0;
        for (int i = 0; i < n; ++i) sum += deg(cf.quotients[static_cast<std::size_t>(i)]);
        bool ok = deg(cn.q) == sum;
        add("norm_product", ok,
            "deg Q_n = " + std::to_string(deg(cn.q)) + ", sum deg A_i = " + std::to_string(sum));
    }
    {
        RationalFn diff = sub_exact(x, cn.p, cn.q);
        if (diff.num.is_zero()) {
            add("approx_error", true, "x equals its convergent at n = " + std::to_string(n));
        } else if (static_cast<std::size_t>(n) < cs.size()) {
            int lhs = norm_exponent(diff);
            int rhs = -(deg(cn.q) + deg(cs[static_cast<std::size_t>(n)].q));
            add("approx_error", lhs == rhs,
                "log_q|x - P_n/Q_n| = " + std::to_string(lhs) + ", expected " + std::to_string(rhs));
        } else {
            add("approx_error", false, "nonzero error but no Q_{n+1} available");
        }
    }
    return rep;
}

int relative_error_log(const CFExpansion& cf, int n) {
    if (n < 1) throw std::invalid_argument("relative_error_log: n must be >= 1");
    if (cf.certified < static_cast<std::size_t>(n) + 1)
        throw std::domain_error("relative_error_log: expansion not certified past n+1");
    return deg(cf.quotients[static_cast<std::size_t>(n) - 1]) +
           deg(cf.quotients[static_cast<std::size_t>(n)]);
}

int relative_error_log_checked(const RationalFn& x, int n) {
    CFExpansion cf = expand_rational(x.num, x.den);
    int value = relative_error_log(cf, n);
    auto cs = convergents(cf);
    const FieldSpec f = cf.field;
    Poly p_prev = n >= 2 ? cs[static_cast<std::size_t>(n) - 2].p : Poly::zero(f);
    Poly q_prev = n >= 2 ? cs[static_cast<std::size_t>(n) - 2].q : Poly::constant(f, 1);
    RationalFn e_prev = sub_exact(x, p_prev, q_prev);
    RationalFn e_n = sub_exact(x, cs[static_cast<std::size_t>(n) - 1].p, cs[static_cast<std::size_t>(n) - 1].q);
    if (e_prev.num.is_zero() || e_n.num.is_zero())
        throw std::domain_error("relative_error_log_checked: x equals a convergent in range");
    int observed = norm_exponent(e_prev) - norm_exponent(e_n);
    if (observed != value) {
        std::ostringstream os;
        os << "relative_error_log_checked: degree sum " << value << " but norm ratio " << observed;
        throw std::logic_error(os.str());
    }
    return value;
}

}  // namespace lcf
