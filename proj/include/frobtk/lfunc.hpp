#ifndef FROBTK_LFUNC_HPP
#define FROBTK_LFUNC_HPP

#include "frobtk/characters.hpp"
#include "frobtk/exactvalue.hpp"
#include "frobtk/qseries.hpp"

#include <vector>
#include <string>

namespace frobtk {
namespace lfunc {

// Hurwitz zeta by Euler-Maclaurin with automatic shift/depth escalation.
// a > 0 real; s != 1. Negative real s terminates exactly at integer s.
APComplex hurwitz_zeta(const APComplex& s, const APReal& a, mpfr_prec_t prec);
APReal hurwitz_zeta(const APReal& s, const APReal& a, mpfr_prec_t prec);

APReal riemann_zeta(const APReal& s, mpfr_prec_t prec);

// L(chi, s) = N^{-s} sum_k chi(k) zeta_H(s, k/N); the pole cancellation at
// s = 1 for non-trivial chi is handled through the digamma formula.
APComplex dirichlet_l(const DirichletCharacter& chi, const APComplex& s, mpfr_prec_t prec);

// Exact L(chi, -n) for n >= 0 via generalized Bernoulli numbers (n=0 rejected).
GaussRat l_negative_int(const DirichletCharacter& chi, long n);

// sum_{m > m0} omega^m m^{-s} for |omega| = 1. omega != 1 uses the Euler
// transform of the oscillating tail; omega = 1 uses Euler-Maclaurin.
// err_out receives the truncation-floor estimate.
APComplex periodic_power_tail(const APComplex& omega, bool omega_is_one, const APComplex& s,
                              long m0, mpfr_prec_t prec, APReal* err_out = nullptr);

// sum_{d > X, d = r (mod P)} d^{-s} by Euler-Maclaurin on the progression.
APComplex progression_power_tail(long r, long P, long X, const APComplex& s, mpfr_prec_t prec);

// Coefficient stream of the twisted Dirichlet series. The coefficients carry
// the divisor-sum structure a_n = sum_{d|n} psi(d) d^2 with psi periodic.
struct TwistedLData {
    qseries::CaseLabel label;
    long b;                    // twist denominator: a~_n = a_n e^{2 pi i n / b}
    long period;               // period of psi (lcm with b already folded in)
    std::vector<long> psi;     // psi[d % period]
    std::vector<long> coeffs;  // a_1..a_n window for partial sums (a_0 = 1 excluded)
    double growth_c;           // calibrated max |a_n| / n^2 over the window, x2 safety
    bool closed_form;          // a printed closed form exists (cases A, D)
};

TwistedLData make_twisted_data(qseries::CaseLabel label, long terms = 40000);

struct TailValue {
    APComplex value;
    APReal error;
    TailValue(APComplex v, APReal e) : value(std::move(v)), error(std::move(e)) {}
};

// Direct evaluation of L(g~, s) for Re(s) > 3.5: honest partial sum over
// n <= M plus accelerated corrections for the remaining hyperbolic region.
// No L-function identities are used, so this is an independent check of the
// closed forms.
TailValue twisted_l_direct(const TwistedLData& data, const APComplex& s, mpfr_prec_t prec,
                           long cutoff_d = 0);

// Raw partial sum with the crude C n^{2-Re s} tail bound (kept as the
// spec-level baseline; usable for coarse checks at large Re(s)).
TailValue twisted_l_partial(const TwistedLData& data, const APComplex& s, mpfr_prec_t prec, long terms);

// Closed forms for the twisted series (products of zeta and Dirichlet L
// factors). s = 1 is handled as a removable point; s = 3 is the pole.
APComplex twisted_l_closed_A(const APComplex& s, mpfr_prec_t prec);
APComplex twisted_l_closed_D(const APComplex& s, mpfr_prec_t prec);

struct SpecialValues {
    qseries::CaseLabel label;
    PiValue l1_exact;        // L(g~, 1)
    PiValue res3_exact;      // Res_{s=3} L(g~, s)
    APComplex l1_numeric;    // recomputed from the closed form
    APComplex res3_numeric;  // recomputed from L-values at 3
};

SpecialValues twisted_l_special(qseries::CaseLabel label, mpfr_prec_t prec);

// F(it) = sum_{n>=1} (a~_n / n) e^{-2 pi n t}, t > 0.
APComplex antiderivative_F(qseries::CaseLabel label, const APReal& t, mpfr_prec_t prec,
                           long max_terms = 2'000'000);

enum class Provenance { ClosedFormLemma, CaseGSeries, Cocycle };

struct RegularizedValueReport {
    qseries::CaseLabel label;
    APComplex l1;
    APComplex res3;
    Rat reg_value_exact;     // the regularized integral value (rational in all cases)
    APReal reg_value;        // numeric recomputation
    APReal kappa2;           // -(4 pi^2 / b) * reg_value
    Rat kappa2_over_pi2;     // exact kappa2 / pi^2
    Provenance provenance;
    std::string json() const;
};

// Cases A, C, D from the closed-form special values; E and G from the
// case-G expansion (kappa2 = -pi^2/12, b = 8). Case F is the cocycle
// module's job and is rejected here.
RegularizedValueReport regularized_value(qseries::CaseLabel label, mpfr_prec_t prec);

const char* provenance_str(Provenance p);

}  // namespace lfunc
}  // namespace frobtk

#endif
