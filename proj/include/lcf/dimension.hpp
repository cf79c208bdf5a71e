#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcf/field.hpp"
#include "lcf/rational.hpp"

namespace lcf {

/// The exponent function of the dimension equation:
///   f_1(s) = s,  f_{i+1}(s) = s f_i(s) / (1 - s + f_i(s)).
/// Defined for 0 < s <= 1; the recursive form is cancellation-free and
/// is the one used inside the solvers.
double f_k_recursive(double s, int k);

/// Closed form s^k (2s-1) / (s^k - (1-s)^k), with value 1/(2k) on the
/// removable singularity at s = 1/2.
double f_k_closed(double s, int k);

/// Left side of the dimension equation,
///   sum_{j>=1} (q-1) q^j / q^(2js + B f_k(s)),
/// evaluated through the geometric closed form
///   (q-1) r/(1-r) * q^(-B f_k(s)),  r = q^(1-2s).
/// Requires s > 1/2 (the series diverges otherwise).
double pressure(double s, FieldSpec f, int k, double B);

/// Truncated variant sum_{j=1}^{M}, evaluated by literal summation.
double pressure_finite(double s, FieldSpec f, int k, double B, int M);

struct SolverStats {
    int iterations = 0;
    double lo = 0, hi = 0;
    double residual = 0;
    bool clamped = false;  // root collapsed below the bracket floor (huge B)
};

enum class DimCase {
    BZero,        // dim = 1
    BFinite,      // dim = s_k(B)
    BInfBOne,     // B = inf, b = 1: dim = 1/2
    BInfBFinite,  // B = inf, 1 < b < inf: dim = 1/(b+1)
    BInfBInf,     // B = inf, b = inf: dim = 0
    GCase,        // dim = 1/(a+1)
    Inconclusive  // table with too little range to classify
};

/// Invariants of a growth function:
///   B = liminf Phi(n)/n, log b = liminf log Phi(n)/n,
///   log a = limsup log Phi(n)/n.
/// Exact for preset kinds; numeric proxies flagged `estimate` for tables.
struct GrowthInvariants {
    double B = 0;
    double b = 1;
    double a = 1;
    bool estimate = false;
};

struct DimensionResult {
    double value;
    DimCase tag;
    std::optional<Rational> exact;  // set when the formula is closed-form
    SolverStats solver;
    GrowthInvariants invariants;
};

/// Unique root in (1/2, 1) of pressure(s) = 1. Bisection on the bracket
/// (1/2 + 1e-9, 1]; monotonicity of the pressure in s guarantees
/// uniqueness. Stops at residual <= 1e-13 or bracket width <= 1e-15,
/// which delivers |pressure - 1| <= 1e-12 whenever the root is not
/// within ~1e-9 of 1/2. For enormous B the root collapses below the
/// bracket floor; the result is then clamped and flagged.
/// B <= 0 or non-finite raises std::domain_error directing the caller
/// to the dim_F dispatch.
DimensionResult solve_s_k(FieldSpec f, int k, double B);

/// Root s_{k,M}(B) of the truncated equation; increases to s_k(B) as
/// M grows. Throws std::domain_error when M is too small for the
/// truncated pressure to reach 1 anywhere on (1/2, 1).
double solve_s_kM(FieldSpec f, int k, double B, int M, SolverStats* stats = nullptr);

/// Splitting parameters alpha_1..alpha_k:
///   alpha_i = s^(k-i) (2s-1) (1-s)^(i-1) B / (s^k - (1-s)^k),
/// with the limit alpha_i = B/k at s = 1/2. Verifies
/// s alpha_i = (1-s) alpha_{i-1}, sum alpha_i = B and B f_k(s) = s alpha_1
/// to 1e-12 (scaled by max(1, B)) before returning.
std::vector<double> alpha_params(int k, double B, double s);

/// gamma = B s~ / (1 - s~ + f_k(s~)) at s~ = s_{k+1}(B), together with
/// both sides of the identity B s~ - (1-s~) gamma = gamma f_k(s~)
/// = B f_{k+1}(s~), verified to 1e-10.
struct GammaSplit {
    double gamma;
    double s_tilde;
    double lhs;  // B s~ - (1-s~) gamma
    double mid;  // gamma f_k(s~)
    double rhs;  // B f_{k+1}(s~)
    bool ok;
};
GammaSplit gamma_split(FieldSpec f, int k, double B);

/// Growth function Phi. Presets are validated at construction so that
/// every preset tends to infinity with positive values; tables carry
/// their declared points only.
class GrowthFunction {
public:
    enum class Kind { Linear, Power, Exponential, LogScale, Table };

    static GrowthFunction linear(Rational slope);
    static GrowthFunction power(double exponent);
    static GrowthFunction exponential(Rational base, double exponent_power = 1.0);
    static GrowthFunction log_scale();
    static GrowthFunction table(std::vector<std::pair<long, double>> points);

    /// "linear:B", "power:c", "exp:b", "exp:b:p" (Phi = b^(n^p)), "log".
    /// Numbers may be integers, decimals or fractions like 3/2.
    static GrowthFunction parse(std::string_view spec);

    Kind kind() const noexcept { return kind_; }
    double operator()(long n) const;
    /// ceil(Phi(n)); exact integer arithmetic for linear rational slopes.
    long ceil_at(long n) const;

    /// Record the normalization Phi(n) >= k used throughout: evaluation
    /// clamps below at k.
    void clamp_at(int k) { clamp_ = k; }

    const std::optional<Rational>& exact_param() const noexcept { return exact_param_; }
    double param1() const noexcept { return p1_; }
    double param2() const noexcept { return p2_; }
    const std::vector<std::pair<long, double>>& points() const noexcept { return points_; }
    std::string description() const;

private:
    GrowthFunction() = default;
    Kind kind_ = Kind::Linear;
    double p1_ = 1, p2_ = 1;
    std::optional<Rational> exact_param_;
    std::vector<std::pair<long, double>> points_;
    int clamp_ = 0;
};

GrowthInvariants growth_invariants(const GrowthFunction& phi);

/// Hausdorff dimension of F_k(Phi) = {x : deg A_{n+1} + ... + deg A_{n+k}
/// >= Phi(n) infinitely often}: 1 if B = 0, s_k(B) if 0 < B < inf, and
/// for B = inf: 1/2 if b = 1, 1/(b+1) if 1 < b < inf, 0 if b = inf.
DimensionResult dim_F(FieldSpec f, int k, const GrowthFunction& phi);

/// Hausdorff dimension of G_k(Phi) (the "for all n" set): 1/(a+1).
/// Requires Phi(n) -> infinity; presets satisfy this by construction,
/// tables produce estimate-flagged results.
DimensionResult dim_G(FieldSpec f, int k, const GrowthFunction& phi);

}  // namespace lcf
