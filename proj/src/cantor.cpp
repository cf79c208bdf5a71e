#include "lcf/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lcf {

namespace {

Rational exact_from_double(double x) {
    Rational r(x);  // doubles are binary rationals, conversion is exact
    r.canonicalize();
    return r;
}

BigInt rational_ceil(const Rational& r) {
    BigInt c;
    mpz_cdiv_q(c.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return c;
}

BigInt rational_floor(const Rational& r) {
    BigInt c;
    mpz_fdiv_q(c.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return c;
}

long to_long_checked(const BigInt& v, const char* what) {
    if (!v.fits_slong_p()) throw std::overflow_error(std::string(what) + ": value out of range");
    return v.get_si();
}

}  // namespace

// ---------------------------------------------------------------------------
// IndexSequence

IndexSequence IndexSequence::strict(int k, double s, double eps, const std::vector<double>& alphas) {
    if (!(eps > 0) || eps >= s)
        throw std::invalid_argument("IndexSequence::strict: need 0 < eps < s");
    IndexSequence seq;
    seq.strict_ = true;
    seq.k_ = k;
    seq.s_ = exact_from_double(s);
    seq.eps_ = exact_from_double(eps);
    for (double a : alphas) seq.alphas_.push_back(exact_from_double(a));

    Rational amin = seq.alphas_.front();
    for (const Rational& a : seq.alphas_) amin = std::min(amin, a);
    if (amin <= 0) throw std::invalid_argument("IndexSequence::strict: alphas must be positive");
    Rational n1 = Rational(2) * (seq.s_ - seq.eps_) / (seq.eps_ * amin);
    BigInt first = rational_ceil(n1);
    if (first < 1) first = 1;
    seq.terms_.push_back(first);
    return seq;
}

IndexSequence IndexSequence::relaxed(std::vector<long> terms, int k, double s, double eps,
                                     const std::vector<double>& alphas) {
    if (terms.empty()) throw std::invalid_argument("IndexSequence::relaxed: need at least one term");
    IndexSequence seq;
    seq.strict_ = false;
    seq.k_ = k;
    seq.s_ = exact_from_double(s);
    seq.eps_ = exact_from_double(eps);
    for (double a : alphas) seq.alphas_.push_back(exact_from_double(a));
    long prev = 0;
    for (long t : terms) {
        if (t < 1) throw std::invalid_argument("IndexSequence::relaxed: terms must be >= 1");
        if (prev && t <= prev + k)
            throw std::invalid_argument(
                "IndexSequence::relaxed: windows overlap, need n_{j+1} > n_j + k");
        seq.terms_.emplace_back(t);
        prev = t;
    }
    return seq;
}

void IndexSequence::extend_to(int j) const {
    while (static_cast<int>(terms_.size()) < j) {
        // n_{j+1} = ceil(s (n_j + k) / eps)
        Rational next = s_ * Rational(terms_.back() + k_) / eps_;
        terms_.push_back(rational_ceil(next));
    }
}

const BigInt& IndexSequence::term(int j) const {
    if (j < 1) throw std::invalid_argument("IndexSequence::term: j is 1-based");
    if (strict_) {
        extend_to(j);
    } else if (j > static_cast<int>(terms_.size())) {
        throw std::out_of_range("IndexSequence::term: relaxed sequence has only " +
                                std::to_string(terms_.size()) + " terms");
    }
    return terms_[static_cast<std::size_t>(j) - 1];
}

long IndexSequence::term_long(int j) const { return to_long_checked(term(j), "IndexSequence::term"); }

IndexSequence::ConditionReport IndexSequence::check_conditions(int j_max) const {
    ConditionReport rep{true, {}};
    for (int j = 1; j <= j_max; ++j) {
        if (!strict_ && j > static_cast<int>(terms_.size())) break;
        Condition c{j, true, true};
        Rational nj(term(j));
        for (const Rational& a : alphas_) {
            // s n_j a >= (s - eps)(n_j a + 2)
            if (s_ * nj * a < (s_ - eps_) * (nj * a + 2)) c.degree_ok = false;
        }
        bool has_next = strict_ || j < static_cast<int>(terms_.size());
        if (has_next) {
            Rational njn(term(j + 1));
            // s (n_{j+1} - n_j - k) >= (s - eps) n_{j+1}
            if (s_ * (njn - nj - k_) < (s_ - eps_) * njn) c.gap_ok = false;
        }
        rep.all_ok = rep.all_ok && c.degree_ok && c.gap_ok;
        rep.rows.push_back(c);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// CantorParams

void CantorParams::validate(int k, int M, double eps, double s) {
    if (k < 1) throw std::invalid_argument("CantorParams: k must be >= 1");
    if (M < 2) throw std::invalid_argument("CantorParams: M must be >= 2");
    if (!(eps > 0)) throw std::invalid_argument("CantorParams: eps must be positive");
    if (!(eps < s - 0.5))
        throw std::invalid_argument("CantorParams: need eps < s - 1/2 so that s - eps stays above 1/2");
}

CantorParams CantorParams::strict_mode(FieldSpec f, int k, double B, int M, double eps, double budget) {
    double s = solve_s_kM(f, k, B, M);
    validate(k, M, eps, s);
    auto alphas = alpha_params(k, B, s);
    IndexSequence seq = IndexSequence::strict(k, s, eps, alphas);
    return CantorParams(f, k, B, M, eps, s, std::move(alphas), std::move(seq), budget);
}

CantorParams CantorParams::relaxed(FieldSpec f, int k, double B, int M, double eps,
                                   std::vector<long> n_js, double budget) {
    double s = solve_s_kM(f, k, B, M);
    validate(k, M, eps, s);
    auto alphas = alpha_params(k, B, s);
    IndexSequence seq = IndexSequence::relaxed(std::move(n_js), k, s, eps, alphas);
    return CantorParams(f, k, B, M, eps, s, std::move(alphas), std::move(seq), budget);
}

bool CantorParams::window_position(long m, int& j_out, int& i_out) const {
    for (int j = 1;; ++j) {
        if (!seq.strict_mode() && j > seq.supplied_terms()) return false;
        const BigInt& nj = seq.term(j);
        if (nj >= m) return false;  // windows start at n_j + 1 > m from here on
        if (BigInt(m) <= nj + k) {
            j_out = j;
            i_out = static_cast<int>(to_long_checked(BigInt(m) - nj, "window_position"));
            return true;
        }
    }
}

int CantorParams::forced_degree(int j, int i) const {
    if (i < 1 || i > k) throw std::invalid_argument("forced_degree: i out of range");
    Rational v = Rational(seq.term(j)) * exact_from_double(alphas[static_cast<std::size_t>(i) - 1]);
    BigInt d = rational_floor(v) + 1;
    long r = to_long_checked(d, "forced_degree");
    if (r > std::numeric_limits<int>::max()) throw std::overflow_error("forced_degree: too large");
    return static_cast<int>(r);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct StepInfo {
    bool window = false;
    int forced = 0;        // forced degree inside a window
    double log_factor_free_base = 0;  // -B f_k(s) ln q, free positions
};

// Per-position admissible degrees and mass factors for the walk.
struct WalkPlan {
    const CantorParams& p;
    double lnq;
    double bfk_lnq;          // B f_k(s) ln q
    double ln_qm1;           // ln(q-1)
    std::vector<StepInfo> steps;  // index m-1

    explicit WalkPlan(const CantorParams& params, int depth) : p(params) {
        lnq = std::log(static_cast<double>(p.field.q));
        bfk_lnq = p.B * f_k_recursive(p.s, p.k) * lnq;
        ln_qm1 = std::log(static_cast<double>(p.field.q) - 1.0);
        steps.resize(static_cast<std::size_t>(depth));
        for (int m = 1; m <= depth; ++m) {
            int j, i;
            if (p.window_position(m, j, i)) {
                steps[static_cast<std::size_t>(m) - 1].window = true;
                steps[static_cast<std::size_t>(m) - 1].forced = p.forced_degree(j, i);
            }
        }
    }

    // log of the mass factor contributed by position m taking degree d
    double log_mass_factor(int m, int d) const {
        const StepInfo& st = steps[static_cast<std::size_t>(m) - 1];
        if (st.window) return -(ln_qm1 + st.forced * lnq);
        return -(2.0 * p.s * d * lnq + bfk_lnq);
    }
    double log_count_factor(int d) const { return ln_qm1 + d * lnq; }

    // diameter exponent bump at order n: floor(n_j alpha_i) when n+1
    // opens a window position, else 0 (plus the common 2*sum + 1)
    long diam_extra(int order, int depth) const {
        if (order + 1 <= depth) {
            const StepInfo& next = steps[static_cast<std::size_t>(order)];
            if (next.window) return next.forced - 1;
            return 0;
        }
        // beyond the planned window: classify directly
        int j, i;
        if (p.window_position(order + 1, j, i)) return p.forced_degree(j, i) - 1;
        return 0;
    }

    double node_estimate(int depth) const {
        double total = 0, level = 1;
        for (int m = 1; m <= depth; ++m) {
            level *= steps[static_cast<std::size_t>(m) - 1].window ? 1.0 : static_cast<double>(p.M);
            total += level;
        }
        return total;
    }

    double tuple_estimate(int depth) const {
        double total = 0, level = 1;
        double free_choices = 0;
        for (int d = 1; d <= p.M; ++d)
            free_choices += (p.field.q - 1.0) * std::pow(static_cast<double>(p.field.q), d);
        for (int m = 1; m <= depth; ++m) {
            const StepInfo& st = steps[static_cast<std::size_t>(m) - 1];
            level *= st.window
                         ? (p.field.q - 1.0) * std::pow(static_cast<double>(p.field.q), st.forced)
                         : free_choices;
            total += level;
        }
        return total;
    }
};

void walk_rec(const WalkPlan& plan, int depth, BasicSet& node, long degree_sum,
              const std::function<void(const BasicSet&)>& fn) {
    if (node.order == depth) return;
    const int m = node.order + 1;
    const StepInfo& st = plan.steps[static_cast<std::size_t>(m) - 1];
    const int d_lo = st.window ? st.forced : 1;
    const int d_hi = st.window ? st.forced : plan.p.M;
    for (int d = d_lo; d <= d_hi; ++d) {
        const long new_sum = degree_sum + d;
        node.degrees.push_back(d);
        ++node.order;
        double saved_mass = node.log_mass, saved_mult = node.log_multiplicity;
        long saved_diam = node.diam_exponent;
        node.log_mass += plan.log_mass_factor(m, d);
        node.log_multiplicity += plan.log_count_factor(d);
        node.diam_exponent = 2 * new_sum + 1 + plan.diam_extra(node.order, depth);
        fn(node);
        walk_rec(plan, depth, node, new_sum, fn);
        node.degrees.pop_back();
        --node.order;
        node.log_mass = saved_mass;
        node.log_multiplicity = saved_mult;
        node.diam_exponent = saved_diam;
    }
}

}  // namespace

double BasicSet::holder_ratio(FieldSpec f) const {
    double log_diam = -static_cast<double>(diam_exponent) * std::log(static_cast<double>(f.q));
    return log_mass / log_diam;
}

void walk_basic_sets(const CantorParams& params, int depth,
                     const std::function<void(const BasicSet&)>& fn) {
    if (depth < 1) throw std::invalid_argument("walk_basic_sets: depth must be >= 1");
    WalkPlan plan(params, depth);
    double est = plan.node_estimate(depth);
    if (est > params.budget) {
        std::ostringstream os;
        os << "walk_basic_sets: estimated " << est << " degree patterns exceeds budget "
           << params.budget;
        throw BudgetError(os.str(), est);
    }
    BasicSet node;
    node.degrees.reserve(static_cast<std::size_t>(depth));
    walk_rec(plan, depth, node, 0, fn);
}

std::vector<BasicSet> enumerate_basic_sets(const CantorParams& params, int depth) {
    std::vector<BasicSet> out;
    walk_basic_sets(params, depth, [&](const BasicSet& b) {
        if (b.order == depth) out.push_back(b);
    });
    return out;
}

void enumerate_basic_sets_explicit(
    const CantorParams& params, int depth,
    const std::function<void(std::span<const Poly>, const BasicSet&)>& fn) {
    if (depth < 1) throw std::invalid_argument("enumerate_basic_sets_explicit: depth must be >= 1");
    WalkPlan plan(params, depth);
    double est = plan.tuple_estimate(depth);
    if (est > params.budget) {
        std::ostringstream os;
        os << "enumerate_basic_sets_explicit: estimated " << est
           << " quotient tuples exceeds budget " << params.budget;
        throw BudgetError(os.str(), est);
    }
    std::vector<Poly> prefix;
    BasicSet node;
    std::function<void()> rec = [&]() {
        if (node.order == depth) return;
        const int m = node.order + 1;
        const StepInfo& st = plan.steps[static_cast<std::size_t>(m) - 1];
        const int d_lo = st.window ? st.forced : 1;
        const int d_hi = st.window ? st.forced : params.M;
        for (int d = d_lo; d <= d_hi; ++d) {
            long sum2 = 2L * d;
            for (int x : node.degrees) sum2 += 2L * x;
            enumerate_polys(params.field, d, [&](const Poly& a) {
                prefix.push_back(a);
                node.degrees.push_back(d);
                ++node.order;
                double sm = node.log_mass, sc = node.log_multiplicity;
                long sd = node.diam_exponent;
                node.log_mass += plan.log_mass_factor(m, d);
                node.log_multiplicity += plan.log_count_factor(d);
                node.diam_exponent = sum2 + 1 + plan.diam_extra(node.order, depth);
                fn(std::span<const Poly>(prefix.data(), prefix.size()), node);
                rec();
                prefix.pop_back();
                node.degrees.pop_back();
                --node.order;
                node.log_mass = sm;
                node.log_multiplicity = sc;
                node.diam_exponent = sd;
            });
        }
    };
    rec();
}

double basic_set_mass(const CantorParams& params, const std::vector<int>& degrees) {
    WalkPlan plan(params, static_cast<int>(degrees.size()));
    double log_mass = 0;
    for (int m = 1; m <= static_cast<int>(degrees.size()); ++m) {
        int d = degrees[static_cast<std::size_t>(m) - 1];
        const bool window = plan.steps[static_cast<std::size_t>(m) - 1].window;
        const int forced = plan.steps[static_cast<std::size_t>(m) - 1].forced;
        if (window ? (d != forced) : (d < 1 || d > params.M)) {
            std::ostringstream os;
            os << "basic_set_mass: prefix not in D_n at position " << m << " (degree " << d
               << (window ? ", window requires " + std::to_string(forced)
                          : ", free positions require 1..M")
               << ")";
            throw std::invalid_argument(os.str());
        }
        log_mass += plan.log_mass_factor(m, d);
    }
    return log_mass;
}

MassConservationReport check_mass_conservation(const CantorParams& params, int depth) {
    WalkPlan plan(params, depth);
    MassConservationReport rep;
    auto check_node = [&](int order) {
        // children of a node of this order
        const StepInfo& st = plan.steps[static_cast<std::size_t>(order)];
        double sum = 0;
        if (st.window) {
            sum = std::exp(plan.log_count_factor(st.forced) + plan.log_mass_factor(order + 1, st.forced));
        } else {
            for (int d = 1; d <= params.M; ++d)
                sum += std::exp(plan.log_count_factor(d) + plan.log_mass_factor(order + 1, d));
        }
        ++rep.nodes_checked;
        rep.max_abs_error = std::max(rep.max_abs_error, std::abs(sum - 1.0));
    };
    check_node(0);  // the full space
    walk_basic_sets(params, depth, [&](const BasicSet& b) {
        if (b.order < depth) check_node(b.order);
    });
    return rep;
}

namespace {

HolderReport holder_scan_impl(const CantorParams& params, int depth, long min_order) {
    HolderReport rep;
    rep.strict_mode = params.seq.strict_mode();
    rep.threshold = params.s - params.eps;
    rep.worst_ratio = std::numeric_limits<double>::infinity();
    const double lnq = std::log(static_cast<double>(params.field.q));
    walk_basic_sets(params, depth, [&](const BasicSet& b) {
        if (b.order < min_order) return;
        ++rep.checked;
        double log_diam = -static_cast<double>(b.diam_exponent) * lnq;
        double ratio = b.log_mass / log_diam;
        // mu <= |J|^(s-eps) with a whisker of float slack
        bool ok = b.log_mass <= rep.threshold * log_diam + 1e-9 * std::abs(log_diam);
        if (!ok) {
            ++rep.violations;
            rep.all_pass = false;
        }
        if (ratio < rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_order = b.order;
            rep.worst_degrees = b.degrees;
        }
    });
    return rep;
}

}  // namespace

HolderReport check_holder(const CantorParams& params, int depth) {
    if (!params.seq.strict_mode())
        throw std::invalid_argument("check_holder: requires a strict-mode index sequence; use holder_scan for relaxed data");
    long n1 = params.seq.term_long(1);
    if (depth < n1)
        throw std::invalid_argument("check_holder: depth " + std::to_string(depth) +
                                    " is below n_1 = " + std::to_string(n1));
    return holder_scan_impl(params, depth, n1);
}

HolderReport holder_scan(const CantorParams& params, int depth) {
    long n1 = params.seq.term_long(1);
    return holder_scan_impl(params, depth, std::min<long>(n1, depth + 1));
}

std::vector<OrderStats> local_dimension_profile(const CantorParams& params, int depth) {
    struct Acc {
        double nodes = 0, sum = 0;
        double mn = std::numeric_limits<double>::infinity();
        double mx = -std::numeric_limits<double>::infinity();
    };
    std::vector<Acc> accs(static_cast<std::size_t>(depth) + 1);
    walk_basic_sets(params, depth, [&](const BasicSet& b) {
        Acc& a = accs[static_cast<std::size_t>(b.order)];
        double r = b.holder_ratio(params.field);
        a.nodes += 1;
        a.sum += r;
        a.mn = std::min(a.mn, r);
        a.mx = std::max(a.mx, r);
    });
    std::vector<OrderStats> out;
    for (int n = 1; n <= depth; ++n) {
        const Acc& a = accs[static_cast<std::size_t>(n)];
        if (a.nodes == 0) continue;
        out.push_back({n, a.nodes, a.mn, a.sum / a.nodes, a.mx});
    }
    return out;
}

std::vector<WindowCover> window_cover_check(const CantorParams& params, int j_max) {
    std::vector<WindowCover> out;
    Rational Br = exact_from_double(params.B);
    for (int j = 1; j <= j_max; ++j) {
        if (!params.seq.strict_mode() && j > params.seq.supplied_terms()) break;
        BigInt sum = 0;
        for (int i = 1; i <= params.k; ++i) {
            Rational v = Rational(params.seq.term(j)) *
                         exact_from_double(params.alphas[static_cast<std::size_t>(i) - 1]);
            sum += rational_floor(v) + 1;
        }
        bool covers = Rational(sum) >= Rational(params.seq.term(j)) * Br;
        out.push_back({j, sum, covers});
    }
    return out;
}

}  // namespace lcf
