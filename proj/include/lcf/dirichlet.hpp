#pragma once

#include <map>
#include <optional>

#include "lcf/contfrac.hpp"
#include "lcf/laurent.hpp"
#include "lcf/rational.hpp"

namespace lcf {

/// The approximating function phi of the Dirichlet-improvability
/// criterion. The criterion only ever evaluates phi at powers of q, so a
/// table stores exact rationals at those points and the preset kinds
/// compare exponents exactly.
class ApproxFunction {
public:
    enum class Kind { Reciprocal, Scaled, PowerLaw, Table };

    static ApproxFunction reciprocal();            // phi(t) = 1/t
    static ApproxFunction scaled(Rational c);      // phi(t) = c/t, c > 0
    static ApproxFunction power_law(Rational tau); // phi(t) = t^-tau, tau >= 0
    /// phi(q^n) for the declared n only; must be non-increasing in n.
    static ApproxFunction table(std::map<long, Rational> values);

    Kind kind() const noexcept { return kind_; }
    bool tends_to_zero() const noexcept;
    bool defined_at(long m) const noexcept;

    /// phi(q^m) as an exact rational; throws when undefined at m or not
    /// representable (power law with non-integer tau*m).
    Rational value_at(FieldSpec f, long m) const;

    /// The improvability inequality phi(q^m) >= q^-m, decided exactly.
    /// Throws std::invalid_argument naming m when phi is undefined there.
    bool criterion_at(FieldSpec f, long m) const;

    std::string description() const;

private:
    Kind kind_ = Kind::Reciprocal;
    Rational param_;  // c or tau
    std::map<long, Rational> table_;
};

/// Distance to the polynomial lattice ||x|| = min_P |x - P|, attained by
/// the integer part: equals |{x}|.
Rational dist_to_lattice(const LaurentSeries& x);
Rational dist_to_lattice(const RationalFn& x);

struct DirichletWitness {
    Poly P, Q;
    int index;  // convergent index, or -1 for the trivial (A, B) witness
};

/// A nonzero pair with |Qx - P| <= 1/t and |Q| < t, for t = q^e > 1
/// (e rational, so non-lattice thresholds like q^(1/2) are covered).
/// Irrational-path choice: the convergent with |Q_n| < t <= |Q_{n+1}|;
/// a rational x = A/B with t > |B| returns (A, B) itself.
DirichletWitness dirichlet_witness(const RationalFn& x, const Rational& e);

/// Same selection over the certified prefix of a truncated series;
/// throws PrecisionError when certification does not reach the needed
/// convergent.
DirichletWitness dirichlet_witness(const LaurentSeries& x, const Rational& e);

struct WitnessCheck {
    bool approx_ok;  // |Qx - P| <= q^-e
    bool size_ok;    // |Q| < q^e
    bool ok() const { return approx_ok && size_ok; }
};

/// Exact verification of both witness inequalities for rational x.
WitnessCheck verify_witness(const RationalFn& x, const Poly& P, const Poly& Q, const Rational& e);

struct ImprovabilityVerdict {
    bool holds_all = true;
    std::optional<long> first_fail_n;
    long n_lo = 1, n_hi = 1;
    long n_hi_checked = 0;  // clipped to the expansion length for terminated input
    bool clipped = false;   // the verdict is finite-range by construction; this
                            // flags an additional cut below the requested range
};

/// Checks phi(q^(sum_{i<=n} deg A_i)) >= q^(-sum deg A_i) for each n in
/// [n_lo, n_hi]. Membership in Dir(phi) quantifies over all
/// sufficiently large n; this verdict is explicitly finite-range.
/// Terminated expansions clip the range at their length; truncated ones
/// must be certified through n_hi (PrecisionError otherwise).
ImprovabilityVerdict is_improvable(const CFExpansion& cf, const ApproxFunction& phi, long n_lo,
                                   long n_hi, FieldSpec f);

/// Integer parts never enter the criterion, so x is reduced to its
/// fractional part first.
ImprovabilityVerdict is_improvable(const RationalFn& x, const ApproxFunction& phi, long n_lo, long n_hi);
ImprovabilityVerdict is_improvable(const LaurentSeries& x, const ApproxFunction& phi, long n_lo, long n_hi);

/// A truncated series whose certified partial quotients all equal z
/// (degree 1): the witness for the corollary that phi(q^n) q^n < 1
/// infinitely often rules out improvability.
LaurentSeries counterexample_series(FieldSpec f, int N);

}  // namespace lcf
