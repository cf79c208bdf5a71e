#include "lcf/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lcf {

namespace {

constexpr double kBracketFloor = 0.5 + 1e-9;
constexpr double kResidualTol = 1e-13;
constexpr double kWidthTol = 1e-15;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_s_domain(double s) {
    if (!(s > 0.0 && s <= 1.0))
        throw std::domain_error("f_k: s must lie in (0, 1]");
}

}  // namespace

double f_k_recursive(double s, int k) {
    check_s_domain(s);
    if (k < 1) throw std::invalid_argument("f_k: k must be >= 1");
    double f = s;
    for (int i = 1; i < k; ++i) f = s * f / (1.0 - s + f);
    return f;
}

double f_k_closed(double s, int k) {
    check_s_domain(s);
    if (k < 1) throw std::invalid_argument("f_k: k must be >= 1");
    if (s == 0.5) return 1.0 / (2.0 * k);
    double sk = std::pow(s, k), tk = std::pow(1.0 - s, k);
    return sk * (2.0 * s - 1.0) / (sk - tk);
}

double pressure(double s, FieldSpec f, int k, double B) {
    if (!(s > 0.5)) throw std::domain_error("pressure: series diverges for s <= 1/2");
    check_s_domain(s);
    const double lq = std::log(static_cast<double>(f.q));
    const double r = std::exp((1.0 - 2.0 * s) * lq);
    const double one_minus_r = -std::expm1((1.0 - 2.0 * s) * lq);
    return (f.q - 1.0) * r / one_minus_r * std::exp(-B * f_k_recursive(s, k) * lq);
}

double pressure_finite(double s, FieldSpec f, int k, double B, int M) {
    if (M < 1) throw std::invalid_argument("pressure_finite: M must be >= 1");
    if (!(s > 0.5)) throw std::domain_error("pressure_finite: s must exceed 1/2");
    check_s_domain(s);
    const double lq = std::log(static_cast<double>(f.q));
    const double tail_factor = std::exp(-B * f_k_recursive(s, k) * lq);
    double sum = 0;
    for (int j = 1; j <= M; ++j)
        sum += (f.q - 1.0) * std::exp(static_cast<double>(j) * (1.0 - 2.0 * s) * lq);
    return sum * tail_factor;
}

namespace {

// Bisection for a strictly decreasing g with g(lo) >= 1 >= g(hi);
// returns the abscissa with the smallest |g - 1| seen.
double bisect_decreasing(const std::function<double(double)>& g, double lo, double hi,
                         SolverStats& stats) {
    double best_s = lo, best_r = std::abs(g(lo) - 1.0);
    auto consider = [&](double s, double val) {
        double r = std::abs(val - 1.0);
        if (r < best_r) {
            best_r = r;
            best_s = s;
        }
    };
    consider(hi, g(hi));
    int it = 0;
    while (hi - lo > kWidthTol && best_r > kResidualTol && it < 200) {
        ++it;
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        consider(mid, gm);
        if (gm >= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    stats.iterations = it;
    stats.lo = lo;
    stats.hi = hi;
    stats.residual = best_r;
    return best_s;
}

}  // namespace

DimensionResult solve_s_k(FieldSpec f, int k, double B) {
    if (!(B > 0.0) || std::isinf(B))
        throw std::domain_error("solve_s_k: requires 0 < B < infinity; use dim_F for the B = 0 and B = infinity cases");
    if (k < 1) throw std::invalid_argument("solve_s_k: k must be >= 1");

    DimensionResult res;
    res.tag = DimCase::BFinite;
    auto g = [&](double s) { return pressure(s, f, k, B); };

    const double lo = kBracketFloor, hi = 1.0;
    if (g(lo) < 1.0) {
        // root is squeezed between 1/2 and the bracket floor
        res.value = lo;
        res.solver = {0, 0.5, lo, std::abs(g(lo) - 1.0), true};
        return res;
    }
    res.value = bisect_decreasing(g, lo, hi, res.solver);
    return res;
}

double solve_s_kM(FieldSpec f, int k, double B, int M, SolverStats* stats) {
    if (M < 2) throw std::invalid_argument("solve_s_kM: M must be >= 2");
    if (!(B > 0.0) || std::isinf(B))
        throw std::domain_error("solve_s_kM: requires 0 < B < infinity");
    auto g = [&](double s) { return pressure_finite(s, f, k, B, M); };
    const double lo = kBracketFloor, hi = 1.0;
    if (g(lo) < 1.0) {
        std::ostringstream os;
        os << "solve_s_kM: no root in (1/2, 1): truncated pressure at s -> 1/2+ is " << g(lo)
           << " < 1; increase M for B = " << B;
        throw std::domain_error(os.str());
    }
    SolverStats local;
    double s = bisect_decreasing(g, lo, hi, local);
    if (stats) *stats = local;
    return s;
}

std::vector<double> alpha_params(int k, double B, double s) {
    if (k < 1) throw std::invalid_argument("alpha_params: k must be >= 1");
    if (!(B > 0.0)) throw std::invalid_argument("alpha_params: B must be positive");
    std::vector<double> alpha(static_cast<std::size_t>(k));
    if (s == 0.5) {
        std::fill(alpha.begin(), alpha.end(), B / k);
    } else if (s > 0.5 && s < 1.0) {
        const double denom = std::pow(s, k) - std::pow(1.0 - s, k);
        for (int i = 1; i <= k; ++i)
            alpha[static_cast<std::size_t>(i) - 1] =
                std::pow(s, k - i) * (2.0 * s - 1.0) * std::pow(1.0 - s, i - 1) * B / denom;
    } else {
        throw std::domain_error("alpha_params: s must lie in [1/2, 1)");
    }

    const double tol = 1e-12 * std::max(1.0, B);
    double sum = 0;
    for (double a : alpha) sum += a;
    if (std::abs(sum - B) > tol)
        throw std::logic_error("alpha_params: sum alpha_i deviates from B");
    for (int i = 2; i <= k; ++i)
        if (std::abs(s * alpha[static_cast<std::size_t>(i) - 1] -
                     (1.0 - s) * alpha[static_cast<std::size_t>(i) - 2]) > tol)
            throw std::logic_error("alpha_params: recursion s a_i = (1-s) a_{i-1} violated");
    if (std::abs(B * f_k_recursive(s, k) - s * alpha[0]) > tol)
        throw std::logic_error("alpha_params: B f_k(s) = s alpha_1 violated");
    return alpha;
}

GammaSplit gamma_split(FieldSpec f, int k, double B) {
    if (k < 1) throw std::invalid_argument("gamma_split: k must be >= 1");
    DimensionResult s_res = solve_s_k(f, k + 1, B);
    const double st = s_res.value;
    const double fk = f_k_recursive(st, k);
    GammaSplit out;
    out.s_tilde = st;
    out.gamma = B * st / (1.0 - st + fk);
    out.lhs = B * st - (1.0 - st) * out.gamma;
    out.mid = out.gamma * fk;
    out.rhs = B * f_k_recursive(st, k + 1);
    const double tol = 1e-10 * std::max(1.0, B);
    out.ok = std::abs(out.lhs - out.mid) <= tol && std::abs(out.mid - out.rhs) <= tol;
    return out;
}

// ---------------------------------------------------------------------------
// Growth functions

GrowthFunction GrowthFunction::linear(Rational slope) {
    if (slope <= 0) throw std::invalid_argument("GrowthFunction::linear: slope must be positive");
    GrowthFunction g;
    g.kind_ = Kind::Linear;
    g.exact_param_ = slope;
    g.p1_ = to_double(slope);
    return g;
}

GrowthFunction GrowthFunction::power(double exponent) {
    if (!(exponent > 0)) throw std::invalid_argument("GrowthFunction::power: exponent must be positive");
    GrowthFunction g;
    g.kind_ = Kind::Power;
    g.p1_ = exponent;
    return g;
}

GrowthFunction GrowthFunction::exponential(Rational base, double exponent_power) {
    if (base <= 1) throw std::invalid_argument("GrowthFunction::exponential: base must exceed 1");
    if (!(exponent_power > 0))
        throw std::invalid_argument("GrowthFunction::exponential: exponent power must be positive");
    GrowthFunction g;
    g.kind_ = Kind::Exponential;
    g.exact_param_ = base;
    g.p1_ = to_double(base);
    g.p2_ = exponent_power;
    return g;
}

GrowthFunction GrowthFunction::log_scale() {
    GrowthFunction g;
    g.kind_ = Kind::LogScale;
    return g;
}

GrowthFunction GrowthFunction::table(std::vector<std::pair<long, double>> points) {
    GrowthFunction g;
    g.kind_ = Kind::Table;
    std::sort(points.begin(), points.end());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].second <= 0)
            throw std::invalid_argument("GrowthFunction::table: values must be positive");
        if (i && points[i].first == points[i - 1].first)
            throw std::invalid_argument("GrowthFunction::table: duplicate n");
    }
    if (points.empty()) throw std::invalid_argument("GrowthFunction::table: empty table");
    g.points_ = std::move(points);
    return g;
}

namespace {

Rational parse_rational_number(std::string_view s) {
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        BigInt num(std::string(s.substr(0, slash)));
        BigInt den(std::string(s.substr(slash + 1)));
        if (den == 0) throw std::invalid_argument("zero denominator");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    auto dot = s.find('.');
    if (dot != std::string_view::npos) {
        std::string digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
        unsigned long places = s.size() - dot - 1;
        Rational r(BigInt(digits), big_pow(10, places));
        r.canonicalize();
        return r;
    }
    return Rational(BigInt(std::string(s)));
}

}  // namespace

GrowthFunction GrowthFunction::parse(std::string_view spec) {
    auto colon = spec.find(':');
    std::string_view head = spec.substr(0, colon);
    try {
        if (head == "log") {
            if (colon != std::string_view::npos)
                throw std::invalid_argument("log takes no parameter");
            return log_scale();
        }
        if (colon == std::string_view::npos)
            throw std::invalid_argument("expected '<kind>:<param>'");
        std::string_view rest = spec.substr(colon + 1);
        if (head == "linear") return linear(parse_rational_number(rest));
        if (head == "power") return power(to_double(parse_rational_number(rest)));
        if (head == "exp") {
            auto colon2 = rest.find(':');
            if (colon2 == std::string_view::npos) return exponential(parse_rational_number(rest));
            return exponential(parse_rational_number(rest.substr(0, colon2)),
                               to_double(parse_rational_number(rest.substr(colon2 + 1))));
        }
        throw std::invalid_argument("unknown kind '" + std::string(head) + "'");
    } catch (const std::exception& e) {
        throw std::invalid_argument("GrowthFunction::parse: bad spec '" + std::string(spec) +
                                    "': " + e.what());
    }
}

double GrowthFunction::operator()(long n) const {
    double v;
    switch (kind_) {
        case Kind::Linear: v = p1_ * static_cast<double>(n); break;
        case Kind::Power: v = std::pow(static_cast<double>(n), p1_); break;
        case Kind::Exponential: v = std::pow(p1_, std::pow(static_cast<double>(n), p2_)); break;
        case Kind::LogScale: v = std::log(static_cast<double>(n) + 2.0); break;
        case Kind::Table: {
            auto it = std::lower_bound(points_.begin(), points_.end(), std::make_pair(n, 0.0));
            if (it == points_.end() || it->first != n)
                throw std::invalid_argument("GrowthFunction: table has no value at n = " + std::to_string(n));
            v = it->second;
            break;
        }
        default: throw std::logic_error("GrowthFunction: bad kind");
    }
    return std::max(v, static_cast<double>(clamp_));
}

long GrowthFunction::ceil_at(long n) const {
    if (kind_ == Kind::Linear && exact_param_) {
        Rational v = *exact_param_ * n;
        BigInt c;
        mpz_cdiv_q(c.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
        long r = c.fits_slong_p() ? c.get_si() : throw std::overflow_error("ceil_at: out of range");
        return std::max(r, static_cast<long>(clamp_));
    }
    double v = (*this)(n);
    if (v > 9e15) throw std::overflow_error("ceil_at: out of range");
    return static_cast<long>(std::ceil(v));
}

std::string GrowthFunction::description() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Linear: os << "linear:" << to_string(*exact_param_); break;
        case Kind::Power: os << "power:" << p1_; break;
        case Kind::Exponential:
            os << "exp:" << to_string(*exact_param_);
            if (p2_ != 1.0) os << ":" << p2_;
            break;
        case Kind::LogScale: os << "log"; break;
        case Kind::Table: os << "table[" << points_.size() << " points]"; break;
    }
    return os.str();
}

GrowthInvariants growth_invariants(const GrowthFunction& phi) {
    GrowthInvariants inv;
    switch (phi.kind()) {
        case GrowthFunction::Kind::Linear:
            inv.B = phi.param1();
            inv.b = inv.a = 1;
            break;
        case GrowthFunction::Kind::Power:
            inv.B = phi.param1() < 1 ? 0.0 : (phi.param1() == 1 ? 1.0 : kInf);
            inv.b = inv.a = 1;
            break;
        case GrowthFunction::Kind::Exponential:
            inv.B = kInf;
            if (phi.param2() == 1.0)
                inv.b = inv.a = phi.param1();
            else if (phi.param2() > 1.0)
                inv.b = inv.a = kInf;
            else
                inv.b = inv.a = 1;
            break;
        case GrowthFunction::Kind::LogScale:
            inv.B = 0;
            inv.b = inv.a = 1;
            break;
        case GrowthFunction::Kind::Table: {
            inv.estimate = true;
            const auto& pts = phi.points();
            std::size_t start = pts.size() / 2;  // liminf/limsup proxies over the tail half
            double bmin = kInf, lmin = kInf, lmax = -kInf;
            for (std::size_t i = start; i < pts.size(); ++i) {
                double n = static_cast<double>(pts[i].first), v = pts[i].second;
                bmin = std::min(bmin, v / n);
                lmin = std::min(lmin, std::log(v) / n);
                lmax = std::max(lmax, std::log(v) / n);
            }
            inv.B = bmin;
            inv.b = std::exp(lmin);
            inv.a = std::exp(lmax);
            break;
        }
    }
    return inv;
}

namespace {

// 1/(x+1) with an exact value when x is available as a rational.
std::optional<Rational> exact_inv_plus_one(const std::optional<Rational>& x) {
    if (!x) return std::nullopt;
    Rational r = Rational(1) / (*x + 1);
    r.canonicalize();
    return r;
}

}  // namespace

DimensionResult dim_F(FieldSpec f, int k, const GrowthFunction& phi) {
    if (k < 1) throw std::invalid_argument("dim_F: k must be >= 1");
    GrowthInvariants inv = growth_invariants(phi);
    DimensionResult res;
    res.invariants = inv;

    if (phi.kind() == GrowthFunction::Kind::Table && phi.points().size() < 4) {
        res.tag = DimCase::Inconclusive;
        res.value = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    if (inv.B == 0) {
        res.tag = DimCase::BZero;
        res.value = 1;
        res.exact = Rational(1);
        return res;
    }
    if (std::isinf(inv.B)) {
        if (inv.b == 1) {
            res.tag = DimCase::BInfBOne;
            res.value = 0.5;
            res.exact = Rational(1, 2);
        } else if (std::isinf(inv.b)) {
            res.tag = DimCase::BInfBInf;
            res.value = 0;
            res.exact = Rational(0);
        } else {
            res.tag = DimCase::BInfBFinite;
            res.value = 1.0 / (inv.b + 1.0);
            if (phi.kind() == GrowthFunction::Kind::Exponential && phi.param2() == 1.0)
                res.exact = exact_inv_plus_one(phi.exact_param());
        }
        return res;
    }
    DimensionResult solved = solve_s_k(f, k, inv.B);
    solved.invariants = inv;
    return solved;
}

DimensionResult dim_G(FieldSpec f, int k, const GrowthFunction& phi) {
    if (k < 1) throw std::invalid_argument("dim_G: k must be >= 1");
    (void)f;
    GrowthInvariants inv = growth_invariants(phi);
    DimensionResult res;
    res.invariants = inv;
    res.tag = DimCase::GCase;

    if (phi.kind() == GrowthFunction::Kind::Table && phi.points().size() < 4) {
        res.tag = DimCase::Inconclusive;
        res.value = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    if (std::isinf(inv.a)) {
        res.value = 0;
        res.exact = Rational(0);
        return res;
    }
    res.value = 1.0 / (inv.a + 1.0);
    if (inv.a == 1) {
        res.exact = Rational(1, 2);
    } else if (phi.kind() == GrowthFunction::Kind::Exponential && phi.param2() == 1.0) {
        res.exact = exact_inv_plus_one(phi.exact_param());
    }
    return res;
}

}  // namespace lcf
