#ifndef FROBTK_QSERIES_HPP
#define FROBTK_QSERIES_HPP

#include "frobtk/characters.hpp"

#include <vector>
#include <optional>
#include <string>
#include <memory>

namespace frobtk {
namespace qseries {

// Truncated q-expansion with exact coefficients. Arithmetic never mixes
// coefficient rings implicitly; promote() is the only crossing point.
template <class T>
struct Series {
    std::vector<T> c;  // indices 0..order

    Series() = default;
    explicit Series(long order) : c(static_cast<size_t>(order) + 1) {}
    long order() const { return static_cast<long>(c.size()) - 1; }
    const T& operator[](long n) const { return c[static_cast<size_t>(n)]; }
    T& operator[](long n) { return c[static_cast<size_t>(n)]; }
    Series truncated(long order) const {
        Series r(std::min(order, this->order()));
        for (long n = 0; n <= r.order(); ++n) r[n] = c[static_cast<size_t>(n)];
        return r;
    }
};

using RatSeries = Series<Rat>;
using GaussSeries = Series<GaussRat>;

GaussSeries promote(const RatSeries& a);
// fails if any imaginary part is nonzero
RatSeries demote_exact(const GaussSeries& a);

template <class T> Series<T> add(const Series<T>& a, const Series<T>& b);
template <class T> Series<T> sub(const Series<T>& a, const Series<T>& b);
template <class T> Series<T> mul(const Series<T>& a, const Series<T>& b);
// requires invertible constant term
template <class T> Series<T> inverse(const Series<T>& a);
template <class T> Series<T> div(const Series<T>& a, const Series<T>& b);
template <class T> Series<T> pow_int(const Series<T>& a, long k);
// q d/dq
template <class T> Series<T> theta(const Series<T>& a);
// constant term must be 1; Newton iteration, branch with constant term +1
RatSeries sqrt_one(const RatSeries& a);
// constant term must be 1; returns sum c_k q^k with c_0 = 0
RatSeries log_one(const RatSeries& a);
// substitute q -> q^m
template <class T> Series<T> scale_q(const Series<T>& a, long m, long order);

// prod_{n>=1} (1 - q^n), unit normalization of the eta function
RatSeries eta_normalized(long order);

struct EtaFactor {
    long multiplier;  // a in eta(a z)
    long exponent;    // integer power (rational powers are realized via sqrt wrappers)
};

// Eta-quotient recipe. The q^{1/24}-prefactors are tracked as one exact
// rational exponent; construction fails unless the total is an integer.
// residue_rule_exponent r != 0 multiplies by [q prod (1-q^n)^{5 (n|5)}]^r
// where (n|5) is the quadratic-residue sign mod 5.
struct EtaQuotientSpec {
    std::vector<EtaFactor> factors;
    long residue_rule_exponent = 0;

    Rat leading_q_power() const;
};

struct EtaQuotientExpansion {
    long exponent;   // integer e with object = q^e h(q)
    RatSeries h;     // h(0) != 0
};

EtaQuotientExpansion eta_quotient(const EtaQuotientSpec& spec, long order);

// One term of a weight-3 Eisenstein combination: coeff * G_{3,chi}(m z).
struct EisensteinTerm {
    GaussRat coeff;
    DirichletCharacter chi;
    long scale;
};

// G_{3,chi}: constant term L(chi,-2)/2 from the exact Bernoulli route,
// coefficient of q^n is sum_{d|n} chi(d) d^2; then q -> q^scale.
GaussSeries eisenstein_g3(const DirichletCharacter& chi, long scale, long order);

enum class CaseLabel { A, C, D, E, F, G };
char case_char(CaseLabel c);
CaseLabel case_from_char(char c);
const std::vector<CaseLabel>& all_cases();

// Quadratic-irrational descriptor a + b sqrt(d) for reporting t(0).
struct QuadValue {
    Rat a, b;
    long d = 1;
    std::string str() const;
};

struct FamilyCase {
    CaseLabel label;
    long A, B, lambda;
    long b;        // smallest positive integer with lower-triangular parabolic [[1,0],[b,1]]
    long level;    // level of the modular group
    DirichletCharacter chi;
    EtaQuotientSpec t_spec;
    EtaQuotientSpec f_spec;
    bool f_needs_sqrt;  // case D: f is the square root of the f_spec expansion
    std::vector<EisensteinTerm> g_recipe;  // empty for the half-shift case F
    bool g_half_shift;                     // case F: g(z) = g_A(z + 1/2)
    QuadValue c0;  // t(0)
};

const FamilyCase& family(CaseLabel label);

enum class GRoute { Eta, Eisenstein, HalfShift };

// t(z) = q^e h(q) for the given case
EtaQuotientExpansion t_expansion(CaseLabel label, long order);
// weight-1 form, constant term 1
RatSeries f_expansion(CaseLabel label, long order);
// weight-3 form, integer coefficients, constant term 1
RatSeries g_expansion(CaseLabel label, long order, GRoute route);

// power-series solution coefficients u_0..u_n of the three-term recurrence
// m^2 u_m = (A(m-1)m + lambda) u_{m-1} - B (m-1)^2 u_{m-2}
std::vector<Rat> phi0_coefficients(CaseLabel label, long n);

struct CompositionResult {
    bool ok;
    long first_mismatch;  // -1 when ok
};
// checks sum_m u_m (q^e h)^m == f exactly to the given order
CompositionResult composition_check(CaseLabel label, long order);

// ---------------------------------------------------------------------------
// Numeric point evaluation

enum class PointObject { T, F, G, LogT };

struct PointValue {
    APComplex value;
    APReal certified_error;  // truncation-tail bound only
    PointValue(APComplex v, APReal e) : value(std::move(v)), certified_error(std::move(e)) {}
};

// Evaluates the q-expansions at q = exp(2 pi i z), Im z > 0, with adaptive
// truncation. log-t uses the branch 2 pi i e z + log-series(h), which is the
// branch all integrands in this project assume (not a principal-branch log).
PointValue point_eval(CaseLabel label, PointObject which, const APComplex& z,
                      const APReal& tol, long max_terms = 2'000'000);

// Shared per-case numeric coefficient tables. Thread-safe; memoization is
// observationally transparent.
class CaseEvaluator {
public:
    CaseEvaluator(CaseLabel label, mpfr_prec_t prec);

    CaseLabel label() const { return label_; }
    mpfr_prec_t prec() const { return prec_; }
    long exponent() const { return exponent_; }
    const FamilyCase& data() const;

    // value arrays are extended on demand; index by series
    enum Which { H = 0, GG = 1, FF = 2, LOGH = 3, FANT = 4 };  // FANT: sum a_n/n q^n
    const std::vector<APReal>& coeffs(Which w, long order);
    // number of terms needed so the tail beyond is below tol for |q| = qa
    long needed_terms(Which w, const APReal& qa, const APReal& tol);

    // fast real-axis evaluation at z = iy (t, g, log t); returns tail bound
    struct AxisValues {
        APReal t, g, logt, tail;
        AxisValues(mpfr_prec_t p) : t(p), g(p), logt(p), tail(p) {}
    };
    AxisValues eval_axis(const APReal& y, const APReal& tol, long max_terms);

    // generic complex evaluation of one series at q
    APComplex eval_series(Which w, const APComplex& q, const APReal& tol, long max_terms,
                          APReal* tail_out = nullptr);

    // log t and t and g at a general point
    struct PathValues {
        APComplex t, g, logt;
        PathValues(mpfr_prec_t p) : t(p), g(p), logt(p) {}
    };
    PathValues eval_path(const APComplex& z, const APReal& tol, long max_terms);

private:
    void extend_exact(long order);
    double envelope_c(Which w) const;

    CaseLabel label_;
    mpfr_prec_t prec_;
    long exponent_;
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

std::shared_ptr<CaseEvaluator> shared_evaluator(CaseLabel label, mpfr_prec_t prec);

// JSON dump of exact or numeric series: array of {n, numerator, denominator}
// or {n, re, im}, with metadata {case, object, order}.
std::string dump_series_json(CaseLabel label, const std::string& object, const RatSeries& s);
std::string dump_series_json(CaseLabel label, const std::string& object, const GaussSeries& s);

}  // namespace qseries
}  // namespace frobtk

#endif
