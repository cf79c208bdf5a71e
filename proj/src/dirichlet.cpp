#include "lcf/dirichlet.hpp"

#include <sstream>

namespace lcf {

// ---------------------------------------------------------------------------
// ApproxFunction

ApproxFunction ApproxFunction::reciprocal() { return ApproxFunction(); }

ApproxFunction ApproxFunction::scaled(Rational c) {
    if (c <= 0) throw std::invalid_argument("ApproxFunction::scaled: c must be positive");
    ApproxFunction a;
    a.kind_ = Kind::Scaled;
    a.param_ = std::move(c);
    return a;
}

ApproxFunction ApproxFunction::power_law(Rational tau) {
    if (tau < 0) throw std::invalid_argument("ApproxFunction::power_law: tau must be >= 0 (non-increasing)");
    ApproxFunction a;
    a.kind_ = Kind::PowerLaw;
    a.param_ = std::move(tau);
    return a;
}

ApproxFunction ApproxFunction::table(std::map<long, Rational> values) {
    if (values.empty()) throw std::invalid_argument("ApproxFunction::table: empty table");
    const Rational* prev = nullptr;
    for (const auto& [n, v] : values) {
        if (v <= 0) throw std::invalid_argument("ApproxFunction::table: values must be positive");
        if (prev && v > *prev)
            throw std::invalid_argument("ApproxFunction::table: phi must be non-increasing");
        prev = &v;
    }
    ApproxFunction a;
    a.kind_ = Kind::Table;
    a.table_ = std::move(values);
    return a;
}

bool ApproxFunction::tends_to_zero() const noexcept {
    switch (kind_) {
        case Kind::Reciprocal:
        case Kind::Scaled: return true;
        case Kind::PowerLaw: return param_ > 0;
        case Kind::Table: return false;  // finite data cannot witness the limit
    }
    return false;
}

bool ApproxFunction::defined_at(long m) const noexcept {
    return kind_ != Kind::Table || table_.count(m) > 0;
}

Rational ApproxFunction::value_at(FieldSpec f, long m) const {
    switch (kind_) {
        case Kind::Reciprocal: return q_pow(f.q, -m);
        case Kind::Scaled: {
            Rational r = param_ * q_pow(f.q, -m);
            r.canonicalize();
            return r;
        }
        case Kind::PowerLaw: {
            Rational e = param_ * m;  // q^(-tau m)
            if (e.get_den() != 1)
                throw std::invalid_argument("ApproxFunction::value_at: t^-tau is not rational at this point");
            if (!e.get_num().fits_slong_p())
                throw std::overflow_error("ApproxFunction::value_at: exponent out of range");
            return q_pow(f.q, -e.get_num().get_si());
        }
        case Kind::Table: {
            auto it = table_.find(m);
            if (it == table_.end())
                throw std::invalid_argument("ApproxFunction: phi undefined at q^m for m = " + std::to_string(m));
            return it->second;
        }
    }
    throw std::logic_error("ApproxFunction: bad kind");
}

bool ApproxFunction::criterion_at(FieldSpec f, long m) const {
    switch (kind_) {
        case Kind::Reciprocal: return true;  // equality
        case Kind::Scaled: return param_ >= 1;
        case Kind::PowerLaw: return param_ * m <= m;  // tau m <= m, exactly
        case Kind::Table: {
            auto it = table_.find(m);
            if (it == table_.end())
                throw std::invalid_argument("ApproxFunction: phi undefined at q^m for m = " + std::to_string(m));
            return it->second >= q_pow(f.q, -m);
        }
    }
    throw std::logic_error("ApproxFunction: bad kind");
}

std::string ApproxFunction::description() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Reciprocal: os << "1/t"; break;
        case Kind::Scaled: os << to_string(param_) << "/t"; break;
        case Kind::PowerLaw: os << "t^-" << to_string(param_); break;
        case Kind::Table: os << "table[" << table_.size() << " points]"; break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Lattice distance and witnesses

Rational dist_to_lattice(const LaurentSeries& x) {
    Valuation v = norm(split(x).second);
    return v.norm(x.field());
}

Rational dist_to_lattice(const RationalFn& x) {
    Poly rem = divrem(x.num, x.den).second;
    if (rem.is_zero()) return Rational(0);
    return q_pow(x.den.field().q, deg(rem) - deg(x.den));
}

namespace {

DirichletWitness witness_from_convergents(const std::vector<Convergent>& cs, FieldSpec f,
                                          const Rational& e, bool complete) {
    // find n with deg Q_n < e <= deg Q_{n+1}; Q_0 = 1 has degree 0 < e
    Poly p_prev = Poly::zero(f);
    Poly q_prev = Poly::constant(f, 1);
    int idx_prev = 0;
    for (const Convergent& c : cs) {
        if (Rational(deg(c.q)) >= e) return {p_prev, q_prev, idx_prev};
        p_prev = c.p;
        q_prev = c.q;
        idx_prev = c.index;
    }
    if (complete) return {p_prev, q_prev, idx_prev};  // handled by the rational branch upstream
    throw PrecisionError("dirichlet_witness: certification does not reach |Q| >= t");
}

}  // namespace

DirichletWitness dirichlet_witness(const RationalFn& x, const Rational& e) {
    if (e <= 0) throw std::domain_error("dirichlet_witness: requires t = q^e > 1");
    if (Rational(deg(x.den)) < e) {
        // t > |B|: (A, B) solves both inequalities with |Bx - A| = 0
        return {x.num, x.den, -1};
    }
    CFExpansion cf = expand_rational(divrem(x.num, x.den).second, x.den);
    return witness_from_convergents(convergents(cf), x.den.field(), e, true);
}

DirichletWitness dirichlet_witness(const LaurentSeries& x, const Rational& e) {
    if (e <= 0) throw std::domain_error("dirichlet_witness: requires t = q^e > 1");
    CFExpansion cf = expand_truncated(split(x).second);
    // only certified convergents may be used
    cf.quotients.erase(cf.quotients.begin() + static_cast<long>(cf.certified), cf.quotients.end());
    return witness_from_convergents(convergents(cf), x.field(), e, false);
}

WitnessCheck verify_witness(const RationalFn& x, const Poly& P, const Poly& Q, const Rational& e) {
    WitnessCheck chk{false, false};
    chk.size_ok = !Q.is_zero() && Rational(deg(Q)) < e;
    Poly err_num = Q * x.num - P * x.den;  // (Qx - P) * den
    if (err_num.is_zero()) {
        chk.approx_ok = true;  // exact hit
    } else {
        // |Qx - P| = q^(deg err_num - deg den) <= q^-e
        chk.approx_ok = Rational(deg(err_num) - deg(x.den)) <= -e;
    }
    return chk;
}

// ---------------------------------------------------------------------------
// Improvability

ImprovabilityVerdict is_improvable(const CFExpansion& cf, const ApproxFunction& phi, long n_lo,
                                   long n_hi, FieldSpec f) {
    if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("is_improvable: bad n range");
    ImprovabilityVerdict v;
    v.n_lo = n_lo;
    v.n_hi = n_hi;

    long available = cf.terminated ? static_cast<long>(cf.quotients.size())
                                   : static_cast<long>(cf.certified);
    if (!cf.terminated && available < n_hi)
        throw PrecisionError("is_improvable: expansion certified only through n = " +
                             std::to_string(available));
    v.n_hi_checked = std::min(n_hi, available);
    v.clipped = v.n_hi_checked < n_hi;

    long m = 0;
    for (long n = 1; n <= v.n_hi_checked; ++n) {
        m += deg(cf.quotients[static_cast<std::size_t>(n) - 1]);
        if (n < n_lo) continue;
        if (!phi.criterion_at(f, m)) {
            v.holds_all = false;
            if (!v.first_fail_n) v.first_fail_n = n;
        }
    }
    return v;
}

ImprovabilityVerdict is_improvable(const RationalFn& x, const ApproxFunction& phi, long n_lo, long n_hi) {
    CFExpansion cf = expand_rational(divrem(x.num, x.den).second, x.den);
    return is_improvable(cf, phi, n_lo, n_hi, x.den.field());
}

ImprovabilityVerdict is_improvable(const LaurentSeries& x, const ApproxFunction& phi, long n_lo, long n_hi) {
    CFExpansion cf = expand_truncated(split(x).second);
    return is_improvable(cf, phi, n_lo, n_hi, x.field());
}

LaurentSeries counterexample_series(FieldSpec f, int N) {
    if (N < 1) throw std::invalid_argument("counterexample_series: N must be >= 1");
    // [z, z, z, ...]: convergents agree with the infinite expansion to
    // 2n+1 coefficients, so n = ceil(N/2) quotients suffice
    int n = (N + 1) / 2 + 1;
    CFExpansion cf{f, std::vector<Poly>(static_cast<std::size_t>(n), Poly::z(f)), static_cast<std::size_t>(n), true};
    auto cs = convergents(cf);
    return series_from_rational(cs.back().p, cs.back().q, N);
}

}  // namespace lcf
