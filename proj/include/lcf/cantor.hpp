#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lcf/dimension.hpp"
#include "lcf/field.hpp"
#include "lcf/poly.hpp"
#include "lcf/rational.hpp"

namespace lcf {

struct BudgetError : std::runtime_error {
    double estimated;
    BudgetError(const std::string& what, double est) : std::runtime_error(what), estimated(est) {}
};

/// The construction indices n_1 < n_2 < ... . In strict mode the terms
/// come from the closed-form rearrangement of the two admissibility
/// inequalities
///   min_i n_j a_i/(n_j a_i + 2) >= (s-eps)/s,
///   (n_{j+1} - n_j - k)/n_{j+1} >= (s-eps)/s:
/// n_1 = ceil(2(s-eps)/(eps min_i a_i)) makes the first hold for every j
/// (it is monotone in n_j), and n_{j+1} = ceil(s(n_j+k)/eps) is exactly
/// the second solved for n_{j+1}. Relaxed mode takes caller-supplied
/// terms for desk-scale enumeration and is flagged non-certifying.
class IndexSequence {
public:
    static IndexSequence strict(int k, double s, double eps, const std::vector<double>& alphas);
    static IndexSequence relaxed(std::vector<long> terms, int k, double s, double eps,
                                 const std::vector<double>& alphas);

    bool strict_mode() const noexcept { return strict_; }
    /// 1-based; strict sequences extend on demand.
    const BigInt& term(int j) const;
    long term_long(int j) const;
    /// Number of supplied terms for relaxed sequences; -1 when unbounded.
    int supplied_terms() const noexcept { return strict_ ? -1 : static_cast<int>(terms_.size()); }

    struct Condition {
        int j;
        bool degree_ok;  // first inequality of the pair above
        bool gap_ok;     // second; vacuously true for the last relaxed term
    };
    struct ConditionReport {
        bool all_ok;
        std::vector<Condition> rows;
    };
    /// Exact rational check of both inequalities for j <= j_max.
    ConditionReport check_conditions(int j_max) const;

private:
    bool strict_ = false;
    int k_ = 1;
    Rational s_, eps_;
    std::vector<Rational> alphas_;
    mutable std::vector<BigInt> terms_;

    void extend_to(int j) const;
};

/// Construction data for the lower-bound Cantor set E(B, M, eps, {n_j}).
class CantorParams {
public:
    static CantorParams strict_mode(FieldSpec f, int k, double B, int M, double eps,
                                    double budget = 1e7);
    static CantorParams relaxed(FieldSpec f, int k, double B, int M, double eps,
                                std::vector<long> n_js, double budget = 1e7);

    FieldSpec field;
    int k;
    double B;
    int M;
    double eps;
    double s;                    // s_{k,M}(B)
    std::vector<double> alphas;  // alpha_1..alpha_k
    IndexSequence seq;
    double budget;

    /// Window position m = n_j + i (1 <= i <= k): fills (j, i) and
    /// returns true; free positions return false.
    bool window_position(long m, int& j_out, int& i_out) const;
    /// deg A_{n_j + i} forced inside a window: floor(n_j alpha_i) + 1,
    /// exact integer arithmetic.
    int forced_degree(int j, int i) const;

private:
    CantorParams(FieldSpec f_, int k_, double B_, int M_, double eps_, double s_,
                 std::vector<double> a, IndexSequence sq, double bud)
        : field(f_), k(k_), B(B_), M(M_), eps(eps_), s(s_), alphas(std::move(a)),
          seq(std::move(sq)), budget(bud) {}
    static void validate(int k, int M, double eps, double s);
};

/// A basic set J(A_1,...,A_n), recorded through its degree pattern: mass
/// and diameter depend on the quotients only through their degrees, so
/// one pattern stands for `exp(log_multiplicity)` concrete prefixes of
/// identical mass and diameter.
struct BasicSet {
    std::vector<int> degrees;
    int order = 0;
    long diam_exponent = 0;      // diameter = q^(-diam_exponent)
    double log_mass = 0;         // natural log of mu
    double log_multiplicity = 0; // natural log of the number of prefixes

    Rational diameter(FieldSpec f) const { return q_pow(f.q, -diam_exponent); }
    double holder_ratio(FieldSpec f) const;  // log mu / log diameter
};

/// Visits every admissible degree pattern of order 1..depth once
/// (depth-first). The BasicSet reference is reused between calls; copy
/// it to keep it. Raises BudgetError up front when the a-priori node
/// count estimate exceeds params.budget.
void walk_basic_sets(const CantorParams& params, int depth,
                     const std::function<void(const BasicSet&)>& fn);

/// The degree patterns of order exactly `depth`.
std::vector<BasicSet> enumerate_basic_sets(const CantorParams& params, int depth);

/// Explicit-quotient enumeration for tiny depths: visits every concrete
/// prefix (A_1,...,A_n) in D_n once, with its pattern record.
void enumerate_basic_sets_explicit(const CantorParams& params, int depth,
                                   const std::function<void(std::span<const Poly>, const BasicSet&)>& fn);

/// log mu of the prefix with the given degrees; validates D_n
/// membership and throws std::invalid_argument for a prefix outside it.
double basic_set_mass(const CantorParams& params, const std::vector<int>& degrees);

struct MassConservationReport {
    long nodes_checked = 0;
    double max_abs_error = 0;
};

/// For every pattern of order < depth, checks that the masses of its
/// admissible children sum to its own mass (ratio 1 within fp error).
MassConservationReport check_mass_conservation(const CantorParams& params, int depth);

struct HolderReport {
    bool strict_mode = false;
    long checked = 0;
    long violations = 0;
    bool all_pass = true;
    double threshold = 0;     // s - eps
    double worst_ratio = 0;   // min of log mu / log diam over checked sets
    int worst_order = 0;
    std::vector<int> worst_degrees;
};

/// Verifies mu(J) <= |J|^(s-eps) for every enumerated basic set of
/// order >= n_1 (the mass-distribution inequality driving the lower
/// bound). Requires a strict-mode sequence and depth >= n_1.
HolderReport check_holder(const CantorParams& params, int depth);

/// Same scan without the strict-mode requirement; results from relaxed
/// sequences are labeled non-certifying via strict_mode = false.
HolderReport holder_scan(const CantorParams& params, int depth);

struct OrderStats {
    int order;
    double nodes;  // pattern count at this order
    double min_ratio, mean_ratio, max_ratio;
};

/// Per-order summary of log mu / log diameter over enumerated patterns;
/// order 0 (the full space) has no ratio and is excluded.
std::vector<OrderStats> local_dimension_profile(const CantorParams& params, int depth);

struct WindowCover {
    int j;
    BigInt forced_sum;  // sum_i (floor(n_j alpha_i) + 1)
    bool covers;        // forced_sum >= n_j B, exactly
};

/// The containment E subset of F_k(B): each window's forced degree sum
/// reaches n_j B. Exact rational comparison per j.
std::vector<WindowCover> window_cover_check(const CantorParams& params, int j_max);

}  // namespace lcf
